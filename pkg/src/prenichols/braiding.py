"""Diagonal braiding matrices, Dynkin diagrams, Cartan data and obstructions.

A braiding matrix of diagonal type is stored as a conductor N and an integer
exponent matrix e, with q_ij = zeta_N^(e_ij).  All diagram questions reduce to
integer arithmetic on exponents modulo N.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .scalar import Cyclotomic, RootOfUnity, lcm

__all__ = [
    "BraidingMatrix",
    "CartanData",
    "NoFiniteEntry",
    "ValidationError",
    "Obstruction",
    "OneLabeledEdge",
    "LongCycle",
    "Rank3Triangle",
    "degree_of",
    "simple",
]

MultiDegree = tuple


class NoFiniteEntry(ArithmeticError):
    """No n up to the cap solves the Cartan-entry equation."""


class ValidationError(ValueError):
    pass


def simple(rank: int, i: int) -> MultiDegree:
    """The simple root alpha_i (0-based index) as a degree vector."""
    return tuple(1 if k == i else 0 for k in range(rank))


def degree_of(rank: int, letters: Iterable[int]) -> MultiDegree:
    deg = [0] * rank
    for i in letters:
        deg[i] += 1
    return tuple(deg)


class BraidingMatrix:
    """Braiding matrix q_ij = zeta_N^(e_ij) of diagonal type.

    Indices are 0-based in the API; textual output uses 1-based vertex names.
    """

    __slots__ = ("conductor", "exps", "_hash")

    def __init__(self, conductor: int, exps: Sequence[Sequence[int]]):
        if conductor < 1:
            raise ValidationError("conductor must be positive")
        rows = tuple(tuple(int(e) % conductor for e in row) for row in exps)
        if any(len(r) != len(rows) for r in rows):
            raise ValidationError("braiding matrix must be square")
        self.conductor = conductor
        self.exps = rows
        self._hash = None

    # -- construction and serialization -------------------------------------
    @classmethod
    def from_roots(cls, entries: Sequence[Sequence[RootOfUnity]]) -> "BraidingMatrix":
        n = lcm(*(r.order for row in entries for r in row))
        return cls(n, [[r.exponent_in(n) for r in row] for row in entries])

    @classmethod
    def from_dict(cls, data: dict) -> "BraidingMatrix":
        try:
            conductor = int(data["conductor"])
            q = data["q"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed braiding data: {exc}") from exc
        rank = data.get("rank", len(q))
        if rank != len(q):
            raise ValidationError(f"rank {rank} does not match a {len(q)}x{len(q)} matrix")
        return cls(conductor, q)

    def to_dict(self) -> dict:
        return {"conductor": self.conductor, "rank": self.rank, "q": [list(r) for r in self.exps]}

    @classmethod
    def load(cls, path: str) -> "BraidingMatrix":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: {exc}") from exc
        if "braiding" in data:
            data = data["braiding"]
        return cls.from_dict(data)

    def with_conductor(self, m: int) -> "BraidingMatrix":
        if m % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {m}")
        f = m // self.conductor
        return BraidingMatrix(m, [[e * f for e in row] for row in self.exps])

    # -- basic accessors ---------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.exps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BraidingMatrix):
            return NotImplemented
        m = lcm(self.conductor, other.conductor)
        return self.with_conductor(m).exps == other.with_conductor(m).exps

    def __hash__(self) -> int:
        if self._hash is None:
            roots = tuple(RootOfUnity(self.conductor, e) for row in self.exps for e in row)
            self._hash = hash(tuple((r.order, r.exponent) for r in roots))
        return self._hash

    def __repr__(self) -> str:
        return f"BraidingMatrix({self.conductor}, {[list(r) for r in self.exps]})"

    def root(self, i: int, j: int) -> RootOfUnity:
        return RootOfUnity(self.conductor, self.exps[i][j])

    def entry(self, i: int, j: int) -> Cyclotomic:
        return Cyclotomic.root(self.conductor, self.exps[i][j])

    def _check(self, *degs: Sequence[int]) -> None:
        for d in degs:
            if len(d) != self.rank:
                raise ValueError(f"degree {tuple(d)} has length {len(d)}, expected rank {self.rank}")

    # -- bilinear form -----------------------------------------------------
    def bilinear_exp(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Exponent k with q(a, b) = zeta_N^k; integer vectors may be negative."""
        self._check(a, b)
        total = 0
        for j, aj in enumerate(a):
            if aj:
                row = self.exps[j]
                total += aj * sum(bk * row[k] for k, bk in enumerate(b) if bk)
        return total % self.conductor

    def bilinear(self, a: Sequence[int], b: Sequence[int]) -> Cyclotomic:
        return Cyclotomic.root(self.conductor, self.bilinear_exp(a, b))

    def q_self(self, b: Sequence[int]) -> Cyclotomic:
        return self.bilinear(b, b)

    def q_self_exp(self, b: Sequence[int]) -> int:
        return self.bilinear_exp(b, b)

    def sym_exp(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Exponent of the symmetrization q(a,b)q(b,a)."""
        return (self.bilinear_exp(a, b) + self.bilinear_exp(b, a)) % self.conductor

    def qt_exp(self, i: int, j: int) -> int:
        return (self.exps[i][j] + self.exps[j][i]) % self.conductor

    def qt(self, i: int, j: int) -> Cyclotomic:
        return Cyclotomic.root(self.conductor, self.qt_exp(i, j))

    # -- diagram -----------------------------------------------------------
    def label_exp(self, i: int) -> int:
        return self.exps[i][i]

    def connected(self, i: int, j: int) -> bool:
        return i != j and self.qt_exp(i, j) != 0

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in combinations(range(self.rank), 2) if self.connected(i, j)]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.rank) if self.connected(i, j)]

    def components(self, vertices: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        todo = set(range(self.rank) if vertices is None else vertices)
        out = []
        while todo:
            start = min(todo)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w in todo and w not in seen:
                        seen.add(w)
                        stack.append(w)
            todo -= seen
            out.append(tuple(sorted(seen)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def restrict(self, vertices: Sequence[int]) -> "BraidingMatrix":
        return BraidingMatrix(self.conductor, [[self.exps[i][j] for j in vertices] for i in vertices])

    def validate(self, strict: bool = False) -> None:
        """Flag vertices labeled 1 that carry an edge.

        Such braidings never have finite root systems, so catalog loading
        refuses them (strict) while ad-hoc input only gets a warning.
        """
        bad = [i for i in range(self.rank) if self.exps[i][i] == 0 and self.neighbors(i)]
        if bad:
            msg = "vertex label 1 on a connected vertex: " + ", ".join(str(i + 1) for i in bad)
            if strict:
                raise ValidationError(msg)
            warnings.warn(msg, stacklevel=2)

    def diagram_text(self) -> str:
        labels = " ".join(f"{i + 1}:{self.root(i, i)}" for i in range(self.rank))
        edges = " ".join(
            f"{i + 1}-{j + 1}:{RootOfUnity(self.conductor, self.qt_exp(i, j))}" for i, j in self.edges()
        )
        return f"labels {labels}; edges {edges or 'none'}"

    # -- Cartan data -------------------------------------------------------
    def label_order(self, i: int) -> int:
        return self.root(i, i).order

    def cartan_entry(self, i: int, j: int, cap: int = 8) -> int:
        """-min{n >= 0 : (n+1)_{q_ii} (1 - q_ii^n qt_ij) = 0}, searched up to cap."""
        if i == j:
            raise ValueError("cartan_entry needs i != j")
        if cap < 1:
            raise ValueError("cap must be at least 1")
        n_order = self.label_order(i)
        e_ii = self.exps[i][i]
        t = self.qt_exp(i, j)
        for n in range(cap + 1):
            # (n+1)_q vanishes exactly when ord(q) > 1 divides n+1
            if n_order > 1 and (n + 1) % n_order == 0:
                return -n
            if (n * e_ii + t) % self.conductor == 0:
                return -n
        raise NoFiniteEntry(f"no Cartan entry c_{i + 1}{j + 1} within cap {cap}")

    def cartan(self, cap: int = 8) -> "CartanData":
        r = self.rank
        c = [[2 if i == j else self.cartan_entry(i, j, cap) for j in range(r)] for i in range(r)]
        verts = []
        for i in range(r):
            e_ii = self.exps[i][i]
            if all((c[i][j] * e_ii - self.qt_exp(i, j)) % self.conductor == 0 for j in range(r) if j != i):
                verts.append(i)
        return CartanData(tuple(tuple(row) for row in c), tuple(verts))

    # -- extension by a primitive element -------------------------------------
    def adjoin_primitive(self, beta: Sequence[int]) -> "BraidingMatrix":
        """Braiding of V + k x_beta for a primitive homogeneous x_beta of degree beta."""
        self._check(beta)
        if not any(beta):
            raise ValueError("cannot adjoin an element of degree zero")
        r = self.rank
        rows = [list(row) + [self.bilinear_exp(simple(r, i), beta)] for i, row in enumerate(self.exps)]
        rows.append([self.bilinear_exp(beta, simple(r, i)) for i in range(r)] + [self.bilinear_exp(beta, beta)])
        return BraidingMatrix(self.conductor, rows)

    # -- obstructions ------------------------------------------------------
    def obstruction_scan(self) -> list["Obstruction"]:
        """All firing shape obstructions to a finite root system.

        An empty list certifies nothing; it only means none of the shape
        tests applies.
        """
        found: list[Obstruction] = []
        for i in range(self.rank):
            if self.exps[i][i] == 0:
                for j in self.neighbors(i):
                    found.append(OneLabeledEdge((i, j), f"vertex {i + 1} has label 1 and an edge to {j + 1}"))
        for cycle in self.long_cycles():
            names = "-".join(str(v + 1) for v in cycle)
            found.append(LongCycle(cycle, f"cycle {names} of length {len(cycle)}"))
        for tri in combinations(range(self.rank), 3):
            reason = self._triangle_failure(tri)
            if reason:
                found.append(Rank3Triangle(tri, reason))
        return found

    def long_cycles(self, min_length: int = 4) -> list[tuple[int, ...]]:
        """Simple cycles of length >= min_length, one representative each.

        A cycle is reported as a subgraph; chords are allowed.
        """
        adj = {v: self.neighbors(v) for v in range(self.rank)}
        out = []

        def extend(path: list[int], on_path: set[int]) -> None:
            v = path[-1]
            for w in adj[v]:
                if w == path[0] and len(path) >= min_length and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > path[0] and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(path, on_path)
                    on_path.discard(w)
                    path.pop()

        for start in range(self.rank):
            extend([start], {start})
        return out

    def _triangle_failure(self, tri: tuple[int, int, int]) -> str:
        a, b, c = tri
        N = self.conductor
        pairs = [(a, b), (a, c), (b, c)]
        if not all(self.connected(i, j) for i, j in pairs):
            return ""
        if sum(self.qt_exp(i, j) for i, j in pairs) % N:
            return "product of the three edge labels is not 1"
        half = N // 2 if N % 2 == 0 else None
        minus = [v for v in tri if half is not None and self.exps[v][v] == half]
        if not minus:
            return "no vertex of the triangle is labeled -1"
        for v in tri:
            u, w = (x for x in tri if x != v)
            if self.exps[u][u] != half and self.exps[w][w] != half:
                if (self.exps[u][u] + self.qt_exp(u, v)) % N or (self.exps[w][w] + self.qt_exp(w, v)) % N:
                    return f"labels at {u + 1},{w + 1} are not inverse to their edges towards {v + 1}"
        return ""


@dataclass(frozen=True)
class CartanData:
    matrix: tuple[tuple[int, ...], ...]
    cartan_vertices: tuple[int, ...]


@dataclass(frozen=True)
class Obstruction:
    vertices: tuple[int, ...]
    detail: str = field(default="", compare=False)

    @property
    def kind(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})"


class OneLabeledEdge(Obstruction):
    """A vertex with label 1 joined to another vertex."""


class LongCycle(Obstruction):
    """A cycle of length at least 4 in the diagram."""


class Rank3Triangle(Obstruction):
    """A triangle whose labels violate the rank-3 triangle constraints."""
