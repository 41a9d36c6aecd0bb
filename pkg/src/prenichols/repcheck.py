"""Finite-dimensional representations of presented algebras.

A representation assigns a square matrix to each generator; elements of T(V)
are evaluated word by word.  A nonzero image certifies that an element is
nonzero in every quotient the representation factors through.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braiding import BraidingMatrix
from .freealg import FreeAlgebra, FreeElement
from .quotient import Presentation
from .scalar import Cyclotomic

__all__ = ["MatrixRep", "evaluate", "is_nonzero", "verify_representation", "rep_from_data", "matmul", "is_zero_matrix", "truncated_regular_rep"]

Matrix = tuple  # tuple of row tuples of Cyclotomic


def _zero(n: int) -> Matrix:
    z = Cyclotomic.zero()
    return tuple(tuple(z for _ in range(n)) for _ in range(n))


def _identity(n: int) -> Matrix:
    z, o = Cyclotomic.zero(), Cyclotomic.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = Cyclotomic.zero()
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out) if n else ()


def is_zero_matrix(m: Matrix) -> bool:
    return all(x.is_zero() for row in m for x in row)


@dataclass(frozen=True)
class MatrixRep:
    """One n x n matrix per generator."""

    dimension: int
    matrices: tuple

    def __post_init__(self):
        for k, m in enumerate(self.matrices):
            if len(m) != self.dimension or any(len(row) != self.dimension for row in m):
                raise ValueError(f"matrix for x{k + 1} is not {self.dimension}x{self.dimension}")

    @property
    def rank(self) -> int:
        return len(self.matrices)

    @classmethod
    def zero(cls, rank: int, dimension: int = 1) -> "MatrixRep":
        return cls(dimension, tuple(_zero(dimension) for _ in range(rank)))


def rep_from_data(data: dict, braiding: BraidingMatrix) -> MatrixRep:
    """Build a representation from ``{"dimension", "matrices": {"x1": rows, ...}}``.

    Entries are scalar expressions such as ``"1"``, ``"z(3,1)"`` or ``"q(1,3)"``,
    evaluated against ``braiding``.
    """
    alg = FreeAlgebra(braiding)
    n = data["dimension"]
    mats = []
    for i in range(braiding.rank):
        rows = data["matrices"].get(f"x{i + 1}")
        if rows is None:
            mats.append(_zero(n))
            continue
        out = []
        for row in rows:
            vals = []
            for text in row:
                el = alg.parse(str(text))
                if any(w for w in el.terms):
                    raise ValueError(f"matrix entry {text!r} is not a scalar")
                vals.append(el.coefficient(()))
            out.append(tuple(vals))
        mats.append(tuple(out))
    return MatrixRep(n, tuple(mats))


def _sparse(m: Matrix) -> dict:
    return {i: {j: x for j, x in enumerate(row) if not x.is_zero()} for i, row in enumerate(m)}


def _sparse_mul(a: dict, b: dict) -> dict:
    out = {}
    for i, row in a.items():
        acc: dict = {}
        for k, x in row.items():
            for j, y in b.get(k, {}).items():
                acc[j] = acc[j] + x * y if j in acc else x * y
        acc = {j: v for j, v in acc.items() if not v.is_zero()}
        if acc:
            out[i] = acc
    return out


def evaluate(r: MatrixRep, u: FreeElement) -> Matrix:
    """Image of u under the algebra map x_i -> r_i."""
    if u.rank != r.rank:
        raise ValueError(f"element has rank {u.rank}, representation has {r.rank} generators")
    gens = [_sparse(m) for m in r.matrices]
    cache: dict = {(): {i: {i: Cyclotomic.one()} for i in range(r.dimension)}}

    def word(w: tuple) -> dict:
        got = cache.get(w)
        if got is None:
            got = _sparse_mul(word(w[:-1]), gens[w[-1]])
            cache[w] = got
        return got

    acc: dict = {}
    for w, c in u.terms.items():
        for i, row in word(tuple(w)).items():
            for j, x in row.items():
                acc[(i, j)] = acc[(i, j)] + c * x if (i, j) in acc else c * x
    z = Cyclotomic.zero()
    return tuple(tuple(acc.get((i, j), z) for j in range(r.dimension)) for i in range(r.dimension))


def is_nonzero(r: MatrixRep, u: FreeElement) -> bool:
    return not is_zero_matrix(evaluate(r, u))


def verify_representation(p: Presentation, r: MatrixRep) -> tuple:
    """(True, None) when every relation maps to zero, else (False, relation text)."""
    if p.rank != r.rank:
        raise ValueError(f"presentation has rank {p.rank}, representation has {r.rank} generators")
    for k, rel in enumerate(p.relations):
        if not is_zero_matrix(evaluate(r, rel)):
            label = p.relation_texts[k] if k < len(p.relation_texts) else rel.to_text()
            return False, label
    return True, None


def rows_text(m: Sequence[Sequence[Cyclotomic]]) -> list:
    return [[x.to_text() for x in row] for row in m]


def truncated_regular_rep(engine, beta: Sequence[int]) -> tuple:
    """Left multiplication on the quotient modulo all degrees not below beta.

    Degrees not componentwise <= beta span a two-sided ideal, so the action of
    the engine's algebra on the finitely many degrees <= beta is a
    representation.  Returns (rep, index) with index mapping (degree, word)
    to a row; the unit is row 0, so the first column of the image of u is the
    normal form of u.
    """
    beta = tuple(beta)
    rank = len(beta)
    degrees = list(_below(beta))
    index: dict = {}
    for d in degrees:
        for w in engine.degree_basis(d).standard_words:
            index[(d, tuple(w))] = len(index)
    n = len(index)
    mats = []
    for i in range(rank):
        rows = [[Cyclotomic.zero()] * n for _ in range(n)]
        gen = engine.algebra.gen(i)
        for (d, w), col in index.items():
            target = tuple(x + (1 if k == i else 0) for k, x in enumerate(d))
            if any(t > b for t, b in zip(target, beta)):
                continue
            image = engine.normal_form(gen * FreeElement.word(rank, w))
            for s, c in image.terms.items():
                rows[index[(target, tuple(s))]][col] = c
        mats.append(tuple(tuple(r) for r in rows))
    return MatrixRep(n, tuple(mats)), index


def _below(beta: tuple):
    if not beta:
        yield ()
        return
    for head in range(beta[0] + 1):
        for rest in _below(beta[1:]):
            yield (head,) + rest
