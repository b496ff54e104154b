"""JSON readers and writers for networks, vectors and run configs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import RunConfig
from .egraph import EGraph, as_rational, new_egraph
from .errors import DimensionMismatch


def network_from_dict(data: dict) -> EGraph:
    G = new_egraph(data["vertices"], data["edges"])
    if "dimension" in data and int(data["dimension"]) != G.dimension:
        raise DimensionMismatch(f"declared dimension {data['dimension']} but vertices have {G.dimension}")
    return G


def load_network(path) -> EGraph:
    return network_from_dict(json.loads(Path(path).read_text()))


def vector_from_json(data) -> np.ndarray:
    """Edge- or species-ordered array; entries may be numbers or "p/q" strings."""
    if not isinstance(data, list):
        raise ValueError("expected a JSON array")
    return np.array([float(as_rational(v)) if isinstance(v, str) else float(v) for v in data])


def load_vector(path) -> np.ndarray:
    return vector_from_json(json.loads(Path(path).read_text()))


def load_config(path) -> RunConfig:
    return RunConfig.from_dict(json.loads(Path(path).read_text()))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
