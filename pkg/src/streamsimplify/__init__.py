"""Streaming polyline simplification with Fréchet-distance guarantees.

Two streaming modes: fixed error budget (``StreamSimplifier``; output stays
within (1+eps)*delta of the consumed prefix using storage independent of the
stream length) and fixed size budget (``RunPool``; at most 2k-2 output
vertices with a near-optimal error estimate).  ``frechet`` holds the
verification oracles, ``geom`` the planar primitives they are built from.

A compiled kernel accelerates the per-vertex work when present; the pure
Python path computes bit-identical results (see ``available_backends``).
"""

from . import cover, frechet, geom, ksimplify, simplify, stabber
from .frechet import (
    frechet_distance,
    free_space_decide,
    min_vertex_restricted_size,
    segment_curve_decide,
)
from .ksimplify import (
    CollinearFilter,
    ReduceState,
    RunPool,
    compress,
    delta_min,
    pool_best,
    pool_flush,
    pool_new,
    pool_push,
    reduce_new,
    reduce_push,
)
from .simplify import (
    BufferUpdated,
    SegmentFinalized,
    Started,
    StreamSimplifier,
    simplifier_curve,
    simplifier_finish,
    simplifier_new,
    simplifier_push,
    simplify_static,
)
from .stabber import (
    Frontier,
    available_backends,
    default_backend,
    frontier_advance,
    frontier_init,
    frontier_witness,
)

__version__ = "0.1.0"

__all__ = [
    "cover",
    "frechet",
    "geom",
    "ksimplify",
    "simplify",
    "stabber",
    "frechet_distance",
    "free_space_decide",
    "min_vertex_restricted_size",
    "segment_curve_decide",
    "CollinearFilter",
    "ReduceState",
    "RunPool",
    "compress",
    "delta_min",
    "pool_best",
    "pool_flush",
    "pool_new",
    "pool_push",
    "reduce_new",
    "reduce_push",
    "BufferUpdated",
    "SegmentFinalized",
    "Started",
    "StreamSimplifier",
    "simplifier_curve",
    "simplifier_finish",
    "simplifier_new",
    "simplifier_push",
    "simplify_static",
    "Frontier",
    "available_backends",
    "default_backend",
    "frontier_advance",
    "frontier_init",
    "frontier_witness",
    "__version__",
]
