"""Instance file formats.

Text format, one instance per file::

    ising <n>            or    hubo <n>
    # offset <v>
    # reference_energy <v>
    c i j w              coupling / 2-body term
    f i w                field (ising only)
    t i j k w            3-body term (hubo only)

Lines starting with ``#`` are comments unless they carry one of the
directives above.  Indices are 0-based, whitespace-delimited.

A JSON mirror with keys {kind, n, couplings, fields, terms, offset,
reference_energy} is accepted interchangeably (by file extension ``.json``
or by sniffing a leading ``{``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .models import HuboModel, IsingModel

__all__ = ["LoadedInstance", "ParseError", "load_instance", "save_instance", "dumps_instance"]


class ParseError(ValueError):
    """Malformed instance file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class LoadedInstance:
    model: IsingModel | HuboModel
    reference_energy: float | None = None


def _parse_text(text: str) -> LoadedInstance:
    kind: str | None = None
    n = 0
    couplings: list[tuple[int, int, float]] = []
    fields: list[tuple[int, float]] = []
    terms: list[tuple[tuple[int, ...], float]] = []
    offset = 0.0
    reference: float | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "offset":
                try:
                    offset = float(parts[1])
                except ValueError:
                    raise ParseError(f"bad offset value {parts[1]!r}", lineno)
            elif len(parts) == 2 and parts[0] == "reference_energy":
                try:
                    reference = float(parts[1])
                except ValueError:
                    raise ParseError(f"bad reference_energy value {parts[1]!r}", lineno)
            continue
        tok = line.split()
        try:
            if tok[0] in ("ising", "hubo"):
                if kind is not None:
                    raise ParseError("duplicate header", lineno)
                if len(tok) != 2:
                    raise ParseError("header must be '<kind> <n>'", lineno)
                kind = tok[0]
                n = int(tok[1])
            elif tok[0] == "c":
                if len(tok) != 4:
                    raise ParseError("coupling line must be 'c i j w'", lineno)
                couplings.append((int(tok[1]), int(tok[2]), float(tok[3])))
            elif tok[0] == "f":
                if len(tok) != 3:
                    raise ParseError("field line must be 'f i w'", lineno)
                fields.append((int(tok[1]), float(tok[2])))
            elif tok[0] == "t":
                if len(tok) != 5:
                    raise ParseError("3-body line must be 't i j k w'", lineno)
                terms.append(((int(tok[1]), int(tok[2]), int(tok[3])), float(tok[4])))
            else:
                raise ParseError(f"unknown record {tok[0]!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), lineno)

    if kind is None:
        raise ParseError("missing 'ising <n>' or 'hubo <n>' header")
    try:
        if kind == "ising":
            if terms:
                raise ValueError("3-body terms are not valid in an ising instance")
            h = [0.0] * n
            for i, w in fields:
                h[i] = w
            model: IsingModel | HuboModel = IsingModel.from_couplings(
                n, couplings, fields=h, offset=offset
            )
        else:
            if fields:
                raise ValueError("field lines are not valid in a hubo instance")
            all_terms = [(tuple(sorted((i, j))), w) for i, j, w in couplings]
            all_terms += [(tuple(sorted(t)), w) for t, w in terms]
            model = HuboModel.from_terms(n, all_terms)
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc
    return LoadedInstance(model=model, reference_energy=reference)


def _parse_json(text: str) -> LoadedInstance:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ParseError("JSON instance must be an object")
    # best-effort adapter: tolerate common key aliases
    kind = data.get("kind")
    couplings = data.get("couplings", data.get("J", []))
    fields = data.get("fields", data.get("h"))
    terms = data.get("terms", [])
    offset = float(data.get("offset", 0.0))
    reference = data.get("reference_energy", data.get("best_known_energy"))
    if kind is None:
        kind = "hubo" if terms else "ising"
    n = data.get("n")
    if n is None:
        indices = [int(v) for c in couplings for v in c[:-1]]
        indices += [int(t) for term in terms for t in term[0]]
        if fields:
            indices.append(len(fields) - 1)
        n = max(indices, default=-1) + 1
    n = int(n)
    if kind == "ising":
        h = fields if fields is not None else [0.0] * n
        model: IsingModel | HuboModel = IsingModel.from_couplings(
            n,
            [(int(i), int(j), float(w)) for i, j, w in couplings],
            fields=h,
            offset=offset,
        )
    elif kind == "hubo":
        all_terms = [(tuple(sorted((int(i), int(j)))), float(w)) for i, j, w in couplings]
        all_terms += [
            (tuple(sorted(int(v) for v in idx)), float(w)) for idx, w in terms
        ]
        model = HuboModel.from_terms(n, all_terms)
    else:
        raise ParseError(f"unknown kind {kind!r}")
    return LoadedInstance(
        model=model,
        reference_energy=None if reference is None else float(reference),
    )


def load_instance(path: str | Path) -> LoadedInstance:
    """Read an instance from the text or JSON format."""
    p = Path(path)
    text = p.read_text()
    stripped = text.lstrip()
    if p.suffix == ".json" or stripped.startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def dumps_instance(
    model: IsingModel | HuboModel,
    reference_energy: float | None = None,
    comments: list[str] | None = None,
) -> str:
    """Render an instance in the text format."""
    lines: list[str] = []
    for c in comments or []:
        lines.append(f"# {c}")
    if isinstance(model, IsingModel):
        lines.append(f"ising {model.n}")
        if model.offset != 0.0:
            lines.append(f"# offset {model.offset!r}")
        if reference_energy is not None:
            lines.append(f"# reference_energy {reference_energy!r}")
        for i, j, w in model.couplings():
            lines.append(f"c {i} {j} {w!r}")
        for i, w in enumerate(model.fields):
            if w != 0.0:
                lines.append(f"f {i} {float(w)!r}")
    else:
        lines.append(f"hubo {model.n}")
        if reference_energy is not None:
            lines.append(f"# reference_energy {reference_energy!r}")
        for t, w in model.terms:
            if len(t) == 2:
                lines.append(f"c {t[0]} {t[1]} {w!r}")
            else:
                lines.append(f"t {t[0]} {t[1]} {t[2]} {w!r}")
    return "\n".join(lines) + "\n"


def save_instance(
    model: IsingModel | HuboModel,
    path: str | Path,
    reference_energy: float | None = None,
    comments: list[str] | None = None,
) -> None:
    """Write an instance file; floats use repr so a round trip is lossless."""
    Path(path).write_text(dumps_instance(model, reference_energy, comments))
