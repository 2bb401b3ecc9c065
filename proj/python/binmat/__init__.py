"""Binary matroids over GF(2): minors, duality, connectivity and the
internal 4-connectivity checks."""

import json

from ._core import (
    BinmatError,
    CapacityError,
    InputError,
    Matroid,
    PreconditionError,
    SearchExhausted,
    UnsupportedCase,
    catalog,
    catalog_names,
    graphic_from_edges,
    is_isomorphic,
    is_n_connected,
    parse,
    render,
)
from . import _core

__all__ = [
    "BinmatError",
    "CapacityError",
    "InputError",
    "Matroid",
    "PreconditionError",
    "SearchExhausted",
    "UnsupportedCase",
    "audit",
    "catalog",
    "catalog_names",
    "find_separation",
    "graphic_from_edges",
    "is_internally_4_connected",
    "is_isomorphic",
    "is_n_connected",
    "parse",
    "render",
    "theorem",
    "triangle_census",
]


def is_internally_4_connected(matroid, node_limit=10**9):
    """Returns (value, witness dict or None)."""
    out = json.loads(_core.is_internally_4_connected(matroid, node_limit))
    return out["value"], out["witness"]


def find_separation(matroid, lambda_bound, min_x, min_y, strategy="bnb", node_limit=10**9):
    """Returns a dict with keys status ("found", "none", "indeterminate"), nodes and witness."""
    return json.loads(_core.find_separation(matroid, lambda_bound, min_x, min_y, strategy, node_limit))


def triangle_census(matroid):
    return json.loads(_core.triangle_census(matroid))


def audit(name, matroid, threads=1):
    return json.loads(_core.audit(name, matroid, threads))


def theorem(matroid, threads=1):
    return json.loads(_core.theorem(matroid, threads))
