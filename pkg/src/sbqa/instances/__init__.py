"""Instance generators, topologies and coupling distributions."""

from .distributions import (
    SIDON28_VALUES,
    Cauchy,
    DiscreteSet,
    Normal,
    Sidon28,
    SymPareto,
    Uniform,
    parse_distribution,
)
from .generators import (
    EmbeddedInstance,
    embed_cubic_into_pegasus,
    gen_complete_instance,
    gen_cubic_instance,
    gen_ring_instance,
    gen_zephyr_instance,
    instance_rng,
    pegasus_capacity,
)
from .heavyhex import (
    gen_heavyhex_hubo,
    independent_pair_sets,
    independent_triple_sets,
    load_heavyhex,
)
from .topology import TopologyGraph, gen_cubic_lattice, gen_zephyr

__all__ = [
    "SIDON28_VALUES",
    "Cauchy",
    "DiscreteSet",
    "EmbeddedInstance",
    "Normal",
    "Sidon28",
    "SymPareto",
    "TopologyGraph",
    "Uniform",
    "embed_cubic_into_pegasus",
    "gen_complete_instance",
    "gen_cubic_instance",
    "gen_cubic_lattice",
    "gen_heavyhex_hubo",
    "gen_ring_instance",
    "gen_zephyr",
    "gen_zephyr_instance",
    "independent_pair_sets",
    "independent_triple_sets",
    "instance_rng",
    "load_heavyhex",
    "parse_distribution",
    "pegasus_capacity",
]
