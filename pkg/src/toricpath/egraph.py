"""Euclidean embedded graphs (E-graphs) and their structural queries.

An E-graph is a directed graph whose vertices are distinct points of
rational n-space.  Vertex coordinates are kept as exact ``Fraction``
tuples; float arrays are derived lazily for numerical work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .config import DEFAULT_BUDGET
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DuplicateEdge,
    DuplicateVertex,
    IsolatedVertex,
    SelfLoop,
)

Coords = tuple[Fraction, ...]
EdgeKey = tuple[Coords, Coords]


def as_rational(value) -> Fraction:
    """Parse an int, ``"p/q"`` string, Fraction or float into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal reading of the float, so 0.5 -> 1/2 and 0.1 -> 1/10
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


class Vertex(NamedTuple):
    index: int
    coords: Coords


@dataclass(frozen=True, eq=False)
class EGraph:
    """Validated E-graph.  Build with :func:`new_egraph`."""

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]
    dimension: int

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def coords(self, i: int) -> Coords:
        return self.vertices[i].coords

    @cached_property
    def Y(self) -> np.ndarray:
        """Vertex coordinates as a float array of shape (|V|, n)."""
        return np.array([[float(c) for c in v.coords] for v in self.vertices], dtype=float).reshape(
            self.n_vertices, self.dimension
        )

    @cached_property
    def source(self) -> np.ndarray:
        return np.array([s for s, _ in self.edges], dtype=int)

    @cached_property
    def target(self) -> np.ndarray:
        return np.array([t for _, t in self.edges], dtype=int)

    @cached_property
    def source_coords(self) -> np.ndarray:
        """Source vertex of each edge, shape (|E|, n)."""
        return self.Y[self.source] if self.edges else np.zeros((0, self.dimension))

    @cached_property
    def reaction_vectors(self) -> np.ndarray:
        """Rows y' - y, differenced exactly before conversion."""
        rows = [
            [float(b - a) for a, b in zip(self.coords(s), self.coords(t))] for s, t in self.edges
        ]
        return np.array(rows, dtype=float).reshape(self.n_edges, self.dimension)

    @cached_property
    def vertex_index(self) -> dict[Coords, int]:
        return {v.coords: v.index for v in self.vertices}

    @cached_property
    def edge_keys(self) -> tuple[EdgeKey, ...]:
        return tuple((self.coords(s), self.coords(t)) for s, t in self.edges)

    @cached_property
    def edge_index(self) -> dict[EdgeKey, int]:
        return {key: i for i, key in enumerate(self.edge_keys)}

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for e, (s, _) in enumerate(self.edges):
            out[s].append(e)
        return tuple(tuple(x) for x in out)

    def has_edge(self, key: EdgeKey) -> bool:
        return key in self.edge_index

    def is_subgraph_of(self, other: "EGraph") -> bool:
        return self.dimension == other.dimension and all(
            other.has_edge(key) for key in self.edge_keys
        )

    def same_as(self, other: "EGraph") -> bool:
        """Equality of vertex and edge sets, ignoring index order."""
        return (
            self.dimension == other.dimension
            and set(self.vertex_index) == set(other.vertex_index)
            and set(self.edge_keys) == set(other.edge_keys)
        )

    def subgraph(self, edge_ids: Iterable[int]) -> "EGraph":
        """Graph spanned by the chosen edges; vertices keep their relative order."""
        chosen = sorted(set(edge_ids))
        used = sorted({i for e in chosen for i in self.edges[e]})
        remap = {old: new for new, old in enumerate(used)}
        return EGraph(
            vertices=tuple(Vertex(remap[i], self.coords(i)) for i in used),
            edges=tuple((remap[self.edges[e][0]], remap[self.edges[e][1]]) for e in chosen),
            dimension=self.dimension,
        )

    def to_dict(self) -> dict:
        def fmt(c: Fraction):
            return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        return {
            "dimension": self.dimension,
            "vertices": [[fmt(c) for c in v.coords] for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }

    def __repr__(self) -> str:
        return f"EGraph(n={self.dimension}, |V|={self.n_vertices}, |E|={self.n_edges})"


def new_egraph(vertices: Sequence[Sequence], edges: Iterable[Sequence[int]]) -> EGraph:
    """Validate and build an E-graph.

    ``vertices`` are coordinate sequences (ints, ``"p/q"`` strings, Fractions
    or floats); ``edges`` are 0-based ``(source, target)`` index pairs.
    """
    coords = [tuple(as_rational(c) for c in v) for v in vertices]
    if not coords:
        raise IsolatedVertex("an E-graph needs at least one edge")
    dim = len(coords[0])
    for c in coords:
        if len(c) != dim:
            raise DimensionMismatch(f"vertex {c} has dimension {len(c)}, expected {dim}")
    if len(set(coords)) != len(coords):
        raise DuplicateVertex("vertex coordinates must be pairwise distinct")

    edge_list: list[tuple[int, int]] = []
    seen = set()
    for e in edges:
        s, t = (int(i) for i in e)
        if not (0 <= s < len(coords) and 0 <= t < len(coords)):
            raise IndexError(f"edge {(s, t)} references a missing vertex")
        if s == t:
            raise SelfLoop(f"self-loop at vertex {s}")
        if (s, t) in seen:
            raise DuplicateEdge(f"edge {(s, t)} listed twice")
        seen.add((s, t))
        edge_list.append((s, t))

    touched = {i for e in edge_list for i in e}
    missing = sorted(set(range(len(coords))) - touched)
    if missing:
        raise IsolatedVertex(f"isolated vertices {missing}")

    return EGraph(
        vertices=tuple(Vertex(i, c) for i, c in enumerate(coords)),
        edges=tuple(edge_list),
        dimension=dim,
    )


def graph_from_edge_keys(keys: Iterable[EdgeKey]) -> EGraph:
    """Build an E-graph from coordinate pairs; vertices sorted lexicographically."""
    keys = list(dict.fromkeys(keys))
    verts = sorted({c for key in keys for c in key})
    index = {c: i for i, c in enumerate(verts)}
    return new_egraph(verts, [(index[a], index[b]) for a, b in keys])


def union_graph(a: EGraph, b: EGraph) -> EGraph:
    """(V1 u V2, E1 u E2); edge order is a's edges followed by b's new edges."""
    if a.dimension != b.dimension:
        raise DimensionMismatch("graphs live in different dimensions")
    keys = list(a.edge_keys) + [k for k in b.edge_keys if not a.has_edge(k)]
    verts = list(a.vertex_index) + [c for c in b.vertex_index if c not in a.vertex_index]
    index = {c: i for i, c in enumerate(verts)}
    return new_egraph(verts, [(index[s], index[t]) for s, t in keys])


# ---------------------------------------------------------------------------
# stoichiometric subspace


@dataclass(frozen=True, eq=False)
class StoichiometricSubspace:
    """Orthonormal basis (rows) of the span of the reaction vectors."""

    basis: np.ndarray
    ambient: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return self.basis.T @ (self.basis @ v)

    def residual(self, v: np.ndarray) -> float:
        """Infinity-norm distance of v from the subspace."""
        v = np.asarray(v, dtype=float)
        return float(np.max(np.abs(v - self.project(v)), initial=0.0))

    def contains(self, v: np.ndarray, tol: float = 1e-9) -> bool:
        return self.residual(v) <= tol * max(1.0, float(np.max(np.abs(v), initial=0.0)))


def exact_rank_rows(rows: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a maximal linearly independent subset of ``rows`` (exact)."""
    pivots: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen: list[int] = []
    for r, row in enumerate(rows):
        vec = [Fraction(x) for x in row]
        for col, prow in pivots:
            if vec[col]:
                f = vec[col] / prow[col]
                vec = [a - f * b for a, b in zip(vec, prow)]
        lead = next((j for j, x in enumerate(vec) if x), None)
        if lead is not None:
            pivots.append((lead, vec))
            chosen.append(r)
    return chosen


def stoichiometric_subspace(G: EGraph) -> StoichiometricSubspace:
    diffs = [
        [b - a for a, b in zip(G.coords(s), G.coords(t))] for s, t in G.edges
    ]
    independent = exact_rank_rows(diffs)
    if not independent:
        return StoichiometricSubspace(np.zeros((0, G.dimension)), G.dimension)
    A = G.reaction_vectors[independent]
    q, _ = np.linalg.qr(A.T)
    return StoichiometricSubspace(q.T.copy(), G.dimension)


# ---------------------------------------------------------------------------
# connectivity


def _adjacency(G: EGraph) -> csr_matrix:
    m = G.n_vertices
    data = np.ones(G.n_edges)
    return csr_matrix((data, (G.source, G.target)), shape=(m, m))


def linkage_classes(G: EGraph) -> list[list[int]]:
    """Connected components of the underlying undirected graph, ordered by smallest index."""
    _, labels = connected_components(_adjacency(G), directed=True, connection="weak")
    classes: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        classes.setdefault(lab, []).append(v)
    return sorted(classes.values(), key=lambda c: c[0])


def strong_components(G: EGraph) -> np.ndarray:
    _, labels = connected_components(_adjacency(G), directed=True, connection="strong")
    return labels


def is_weakly_reversible(G: EGraph) -> bool:
    labels = strong_components(G)
    return bool(np.all(labels[G.source] == labels[G.target]))


def complete_graph(G: EGraph) -> EGraph:
    m = G.n_vertices
    edges = [(i, j) for i in range(m) for j in range(m) if i != j]
    return EGraph(vertices=G.vertices, edges=tuple(edges), dimension=G.dimension)


# ---------------------------------------------------------------------------
# weakly reversible subgraph enumeration


def _wr_mask(chosen: Sequence[int], src: Sequence[int], tgt: Sequence[int], m: int) -> bool:
    out_mask = [0] * m
    in_deg = [0] * m
    for e in chosen:
        out_mask[src[e]] |= 1 << tgt[e]
        in_deg[tgt[e]] += 1
    # every edge of a weakly reversible graph sits on a cycle, so its
    # source needs an in-edge and its target an out-edge
    for e in chosen:
        if not in_deg[src[e]] or not out_mask[tgt[e]]:
            return False
    reach = out_mask[:]
    for k in range(m):
        bit = 1 << k
        rk = reach[k]
        for i in range(m):
            if reach[i] & bit:
                reach[i] |= rk
    return all(reach[tgt[e]] >> src[e] & 1 for e in chosen)


def weakly_reversible_subgraphs(
    G: EGraph, max_count: int | None = None, cap: int = DEFAULT_BUDGET.subset_cap
) -> Iterator[EGraph]:
    """Yield every weakly reversible edge-subset graph of ``G``.

    Subsets are visited in lexicographic order of their sorted edge lists
    (edges identified by ``(source, target)`` index pairs), so the output
    order is reproducible.  Raises :class:`BudgetExceeded` once more than
    ``cap`` subsets have been visited.
    """
    order = sorted(range(G.n_edges), key=lambda e: G.edges[e])
    src = [G.edges[e][0] for e in order]
    tgt = [G.edges[e][1] for e in order]
    m, n_edges = G.n_vertices, len(order)
    yielded = 0
    visited = 0
    # explicit-stack preorder over increasing index sequences == lexicographic order
    stack: list[int] = []
    nxt = 0
    while True:
        if nxt < n_edges:
            stack.append(nxt)
            visited += 1
            if visited > cap:
                raise BudgetExceeded(f"visited more than {cap} edge subsets")
            if _wr_mask(stack, src, tgt, m):
                yield G.subgraph(order[i] for i in stack)
                yielded += 1
                if max_count is not None and yielded >= max_count:
                    return
            nxt = stack[-1] + 1
            continue
        if not stack:
            return
        nxt = stack.pop() + 1
