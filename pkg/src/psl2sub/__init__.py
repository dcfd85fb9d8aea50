"""Counting and uniform sampling of finitely generated subgroups of PSL2(Z) via Stallings graphs."""
from __future__ import annotations

from .core import (
    CombinatorialType,
    Draft,
    Graph,
    GraphError,
    IsomorphismType,
    combinatorial_type,
    delta1,
    delta2,
    delta3,
    delta4,
    from_dict,
    from_json,
    graphs_equal,
    is_connected,
    is_cyclically_reduced,
    is_normalized,
    is_reduced,
    isomorphism_type,
    normalize,
    to_dict,
    to_dot,
    to_json,
)
from .counting import CountTable, ExactDivisionError, count_iso, count_silhouette, precompute, t2, t3
from .sampler import (
    Bernoulli,
    EmptyTypeError,
    RandomSource,
    bernoulli,
    random_cyclically_reduced_graph,
    random_reduced_graph,
    random_relabel,
    random_silhouette_graph,
    random_subgroup_iso,
)
from .silhouette import is_silhouette_graph, silhouette
from .words import is_normal, member, normalize_word, read_word

__version__ = "0.1.0"
