import numpy as np
import pytest

from sbqa.instances import instance_rng
from sbqa.instances.topology import gen_zephyr
from sbqa.models import IsingModel


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if "test_acceptance" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {name}")


def zephyr_z1_subgraph_instance(n: int, seed: int) -> IsingModel:
    """Connected n-node induced subgraph of Z(1,4) with uniform couplings."""
    topo = gen_zephyr(1)
    adj = topo.adjacency()
    rng = instance_rng(seed)
    start = int(rng.integers(0, topo.n))
    chosen = [start]
    chosen_set = {start}
    frontier = list(adj[start])
    while len(chosen) < n and frontier:
        v = int(frontier.pop(0))
        if v in chosen_set:
            continue
        chosen.append(v)
        chosen_set.add(v)
        frontier.extend(u for u in adj[v] if u not in chosen_set)
    relabel = {v: i for i, v in enumerate(sorted(chosen))}
    couplings = []
    for a, b in topo.iter_edges():
        if a in chosen_set and b in chosen_set:
            couplings.append((relabel[a], relabel[b], float(rng.uniform(-1, 1))))
    return IsingModel.from_couplings(len(chosen), couplings)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
