"""The growing graph of units: weights, cumulative errors and aged edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = ["GngNetwork", "Unit", "Edge"]


@dataclass(frozen=True)
class Unit:
    id: int
    weight: np.ndarray
    error: float


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    age: int


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class GngNetwork:
    """Undirected graph of units with integer-aged edges.

    Units carry a stable integer id that is never reused. The ``weights``
    and ``errors`` arrays are row-aligned with :attr:`ids`, which is kept in
    ascending order, so ``argmin`` over rows breaks ties by smallest id.
    """

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = int(dimension)
        self.weights = np.empty((0, self.dimension))
        self.errors = np.empty(0)
        self._ids: list[int] = []
        self._row: dict[int, int] = {}
        self._edges: dict[tuple[int, int], int] = {}
        self._nbrs: dict[int, set[int]] = {}
        self._next_id = 0

    @classmethod
    def from_points(cls, p1, p2) -> GngNetwork:
        """Two units at ``p1`` and ``p2`` joined by an edge of age 0."""
        p1 = np.asarray(p1, dtype=np.float64)
        p2 = np.asarray(p2, dtype=np.float64)
        if p1.ndim != 1 or p1.shape != p2.shape:
            raise ValueError(f"dimension mismatch: {p1.shape} vs {p2.shape}")
        net = cls(p1.size)
        a = net.add_unit(p1)
        b = net.add_unit(p2)
        net.connect_or_refresh(a, b)
        return net

    # -- queries ---------------------------------------------------------

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(self._ids)

    @property
    def n_units(self) -> int:
        return len(self._ids)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, uid) -> bool:
        return uid in self._row

    def row(self, uid: int) -> int:
        try:
            return self._row[uid]
        except KeyError:
            raise KeyError(f"unknown unit id {uid}") from None

    def weight(self, uid: int) -> np.ndarray:
        return self.weights[self.row(uid)]

    def error(self, uid: int) -> float:
        return float(self.errors[self.row(uid)])

    def neighbors(self, uid: int) -> list[int]:
        self.row(uid)
        return sorted(self._nbrs[uid])

    def degree(self, uid: int) -> int:
        self.row(uid)
        return len(self._nbrs[uid])

    def has_edge(self, a: int, b: int) -> bool:
        return _key(a, b) in self._edges

    def edge_age(self, a: int, b: int) -> int:
        return self._edges[_key(a, b)]

    def units(self) -> Iterator[Unit]:
        for uid in self._ids:
            r = self._row[uid]
            yield Unit(uid, self.weights[r].copy(), float(self.errors[r]))

    def edges(self) -> list[Edge]:
        return [Edge(u, v, age) for (u, v), age in sorted(self._edges.items())]

    def adjacency(self) -> dict[int, set[int]]:
        """Copy of the neighbour sets, keyed by unit id."""
        return {uid: set(self._nbrs[uid]) for uid in self._ids}

    def copy(self) -> GngNetwork:
        other = GngNetwork(self.dimension)
        other.weights = self.weights.copy()
        other.errors = self.errors.copy()
        other._ids = list(self._ids)
        other._row = dict(self._row)
        other._edges = dict(self._edges)
        other._nbrs = {k: set(v) for k, v in self._nbrs.items()}
        other._next_id = self._next_id
        return other

    # -- mutation --------------------------------------------------------

    def add_unit(self, weight, error: float = 0.0) -> int:
        weight = np.asarray(weight, dtype=np.float64)
        if weight.shape != (self.dimension,):
            raise ValueError(f"weight has shape {weight.shape}, expected ({self.dimension},)")
        if error < 0:
            raise ValueError("error must be >= 0")
        uid = self._next_id
        self._next_id += 1
        self._row[uid] = len(self._ids)
        self._ids.append(uid)
        self._nbrs[uid] = set()
        self.weights = np.vstack([self.weights, weight])
        self.errors = np.append(self.errors, float(error))
        return uid

    def remove_unit(self, uid: int) -> None:
        """Delete a unit together with its incident edges."""
        r = self.row(uid)
        for v in list(self._nbrs[uid]):
            self._drop_edge(uid, v)
        del self._nbrs[uid]
        del self._ids[r]
        self.weights = np.delete(self.weights, r, axis=0)
        self.errors = np.delete(self.errors, r)
        self._row = {u: i for i, u in enumerate(self._ids)}

    def connect_or_refresh(self, a: int, b: int) -> None:
        """Create edge a-b with age 0, or reset its age to 0 if present."""
        if a == b:
            raise ValueError(f"self-loop on unit {a} is not allowed")
        self.row(a)
        self.row(b)
        self._edges[_key(a, b)] = 0
        self._nbrs[a].add(b)
        self._nbrs[b].add(a)

    def remove_edge(self, a: int, b: int) -> None:
        if _key(a, b) not in self._edges:
            raise KeyError(f"no edge between {a} and {b}")
        self._drop_edge(a, b)

    def _drop_edge(self, a: int, b: int) -> None:
        del self._edges[_key(a, b)]
        self._nbrs[a].discard(b)
        self._nbrs[b].discard(a)

    def age_incident_edges(self, uid: int) -> None:
        self.row(uid)
        edges = self._edges
        for v in self._nbrs[uid]:
            k = _key(uid, v)
            edges[k] += 1

    def prune(self, a_max: int, around: int | None = None) -> tuple[int, int]:
        """Drop edges older than ``a_max`` and any unit this isolates.

        With ``around`` given, only edges incident to that unit are
        inspected; this is exact whenever it is the only unit whose edges
        were aged since the last prune.

        Returns ``(removed_edges, removed_units)``.
        """
        if around is None:
            stale = [k for k, age in self._edges.items() if age > a_max]
        else:
            self.row(around)
            stale = [_key(around, v) for v in self._nbrs[around]
                     if self._edges[_key(around, v)] > a_max]
        touched = set()
        for a, b in stale:
            self._drop_edge(a, b)
            touched.add(a)
            touched.add(b)
        isolated = sorted(u for u in touched if not self._nbrs[u])
        for u in isolated:
            self.remove_unit(u)
        return len(stale), len(isolated)

    def insert_between_worst(self, alpha: float) -> int | None:
        """Split the edge between the max-error unit and its worst neighbour.

        Returns the new unit id, or ``None`` when the max-error unit has no
        neighbours. Error ties go to the smallest id.
        """
        if self.n_units == 0:
            return None
        rq = int(np.argmax(self.errors))
        q = self._ids[rq]
        nbrs = sorted(self._nbrs[q])
        if not nbrs:
            return None
        f = max(nbrs, key=lambda u: (self.errors[self._row[u]], -u))
        rf = self._row[f]
        self.errors[rq] *= alpha
        self.errors[rf] *= alpha
        w_new = 0.5 * (self.weights[rq] + self.weights[rf])
        r = self.add_unit(w_new, self.errors[rq])
        self._drop_edge(q, f)
        self.connect_or_refresh(r, q)
        self.connect_or_refresh(r, f)
        return r

    def decay_errors(self, beta: float) -> None:
        self.errors *= beta

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "units": [
                {"id": u.id, "weight": u.weight.tolist(), "error": u.error}
                for u in self.units()
            ],
            "edges": [{"u": e.u, "v": e.v, "age": e.age} for e in self.edges()],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> GngNetwork:
        units = sorted(doc["units"], key=lambda u: u["id"])
        if not units:
            raise ValueError("network document has no units")
        dim = len(units[0]["weight"])
        net = cls(dim)
        for u in units:
            uid = int(u["id"])
            if uid < net._next_id:
                raise ValueError(f"duplicate unit id {uid}")
            net._next_id = uid
            net.add_unit(u["weight"], float(u["error"]))
        for e in doc["edges"]:
            u, v = int(e["u"]), int(e["v"])
            if net.has_edge(u, v):
                raise ValueError(f"duplicate edge {u}-{v}")
            net.connect_or_refresh(u, v)
            net._edges[_key(u, v)] = int(e["age"])
        return net

    def to_edge_list(self) -> str:
        return "".join(f"{e.u} {e.v} {e.age}\n" for e in self.edges())

    def __repr__(self) -> str:
        return f"GngNetwork(dimension={self.dimension}, units={self.n_units}, edges={self.n_edges})"
