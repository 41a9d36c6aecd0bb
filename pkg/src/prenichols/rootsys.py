"""Weyl groupoid reflections and bounded enumeration of positive roots.

The enumeration walks the groupoid starting at a base object.  A state is an
integer matrix T whose columns are the images T(alpha_j) of the simple roots;
the braiding at that state is q_T(x, y) = q(Tx, Ty), so T alone determines
the object.  Reflecting at vertex i replaces column j by
T(alpha_j) - c_ij T(alpha_i), with c computed from q_T.  Every column of every
reachable T is a real root of the base object, and the positive ones are the
positive roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .braiding import BraidingMatrix, NoFiniteEntry, simple

__all__ = [
    "Finite",
    "NotFiniteWithinCap",
    "reflect",
    "enumerate_roots",
    "roots_contain",
]


@dataclass(frozen=True)
class Finite:
    roots: tuple[tuple[int, ...], ...]
    objects: int = 0

    @property
    def finite(self) -> bool:
        return True

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class NotFiniteWithinCap:
    reason: str
    objects: int = 0

    @property
    def finite(self) -> bool:
        return False


def _cartan_row(q: BraidingMatrix, i: int) -> list[int]:
    cap = max(1, q.conductor)
    return [2 if j == i else q.cartan_entry(i, j, cap) for j in range(q.rank)]


def reflect(q: BraidingMatrix, i: int) -> BraidingMatrix:
    """The braiding at the object reached by the reflection s_i."""
    r = q.rank
    c = _cartan_row(q, i)
    images = []
    for j in range(r):
        v = list(simple(r, j))
        v[i] -= c[j]
        images.append(v)
    return BraidingMatrix(q.conductor, [[q.bilinear_exp(a, b) for b in images] for a in images])


def _object_key(q: BraidingMatrix, cols: Sequence[Sequence[int]]):
    # objects are compared by labels and symmetrized labels
    r = len(cols)
    labels = tuple(q.bilinear_exp(c, c) for c in cols)
    sym = tuple(q.sym_exp(cols[j], cols[k]) for j in range(r) for k in range(j + 1, r))
    return labels, sym


def enumerate_roots(
    q: BraidingMatrix,
    max_objects: int = 1000,
    max_height: int = 60,
    max_states: int = 200000,
) -> Finite | NotFiniteWithinCap:
    """Positive roots at q, or NotFiniteWithinCap once a cap is exceeded."""
    r = q.rank
    start = tuple(simple(r, j) for j in range(r))
    seen = {start}
    queue = deque([start])
    objects = {_object_key(q, start)}
    roots = set(start)
    N = q.conductor
    while queue:
        cols = queue.popleft()
        for i in range(r):
            ti = cols[i]
            row = []
            for j in range(r):
                if j == i:
                    row.append(2)
                    continue
                # Cartan entry of q_T computed directly from exponents
                e_ii = q.bilinear_exp(ti, ti)
                t = q.sym_exp(ti, cols[j])
                order = N // _gcd(N, e_ii)
                n = 0
                while True:
                    if order > 1 and (n + 1) % order == 0:
                        break
                    if (n * e_ii + t) % N == 0:
                        break
                    n += 1
                    if n > N:
                        return NotFiniteWithinCap(
                            f"vertex label 1 joined by an edge at a reachable object (vertex {i + 1})",
                            len(objects),
                        )
                row.append(-n)
            new = tuple(
                ti if j == i else tuple(a - row[j] * b for a, b in zip(cols[j], ti)) for j in range(r)
            )
            new = tuple(tuple(-x for x in ti) if j == i else new[j] for j in range(r))
            if new in seen:
                continue
            seen.add(new)
            for col in new:
                if all(x >= 0 for x in col):
                    if sum(col) > max_height:
                        return NotFiniteWithinCap(f"root height exceeded {max_height}", len(objects))
                    roots.add(col)
            objects.add(_object_key(q, new))
            if len(objects) > max_objects:
                return NotFiniteWithinCap(f"more than {max_objects} objects", len(objects))
            if len(seen) > max_states:
                return NotFiniteWithinCap(f"more than {max_states} groupoid states", len(objects))
            queue.append(new)
    return Finite(tuple(sorted(roots, key=lambda v: (sum(v), v))), len(objects))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def roots_contain(q: BraidingMatrix, beta: Sequence[int], **caps) -> bool:
    """Whether beta is a positive root; raises if enumeration is capped."""
    res = enumerate_roots(q, **caps)
    if not isinstance(res, Finite):
        raise NoFiniteEntry(f"root set undecided: {res.reason}")
    return tuple(beta) in res.roots
