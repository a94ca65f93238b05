/** Contour extraction on a regular grid (marching squares, linear
 * interpolation along cell edges).  Returns line segments in grid index
 * coordinates: x along columns, y along rows. */

export type Segment = [[number, number], [number, number]];

export function contourSegments(grid: number[][], level: number): Segment[] {
  const segments: Segment[] = [];
  const nRows = grid.length;
  const nCols = nRows > 0 ? grid[0].length : 0;

  const interp = (a: number, b: number): number => {
    if (a === b) return 0.5;
    return (level - a) / (b - a);
  };

  for (let r = 0; r < nRows - 1; r++) {
    for (let c = 0; c < nCols - 1; c++) {
      const tl = grid[r][c];
      const tr = grid[r][c + 1];
      const br = grid[r + 1][c + 1];
      const bl = grid[r + 1][c];
      let code = 0;
      if (tl > level) code |= 8;
      if (tr > level) code |= 4;
      if (br > level) code |= 2;
      if (bl > level) code |= 1;
      if (code === 0 || code === 15) continue;

      // edge crossing points (x, y) in grid coordinates
      const top: [number, number] = [c + interp(tl, tr), r];
      const bottom: [number, number] = [c + interp(bl, br), r + 1];
      const left: [number, number] = [c, r + interp(tl, bl)];
      const right: [number, number] = [c + 1, r + interp(tr, br)];

      switch (code) {
        case 1: case 14:
          segments.push([left, bottom]);
          break;
        case 2: case 13:
          segments.push([bottom, right]);
          break;
        case 3: case 12:
          segments.push([left, right]);
          break;
        case 4: case 11:
          segments.push([top, right]);
          break;
        case 5:
          segments.push([left, top]);
          segments.push([bottom, right]);
          break;
        case 6: case 9:
          segments.push([top, bottom]);
          break;
        case 7: case 8:
          segments.push([left, top]);
          break;
        case 10:
          segments.push([top, right]);
          segments.push([left, bottom]);
          break;
      }
    }
  }
  return segments;
}
