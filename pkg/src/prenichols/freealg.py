"""The free braided algebra T(V) of a diagonal braiding.

Words are tuples of 0-based generator indices; ``x1`` in text is index 0.
Elements are sparse maps from words to cyclotomic coefficients.  The braiding
only enters through brackets and the coproduct, so elements themselves carry
just their rank.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

from .braiding import BraidingMatrix, degree_of
from .scalar import Cyclotomic

__all__ = ["Word", "FreeElement", "TensorElement", "FreeAlgebra", "intern_word"]

Word = tuple

_INTERN: dict[tuple, tuple] = {}
_INTERN_LOCK = threading.Lock()


def intern_word(letters: Iterable[int]) -> Word:
    """Canonical shared tuple for a word."""
    w = tuple(letters)
    got = _INTERN.get(w)
    if got is not None:
        return got
    with _INTERN_LOCK:
        return _INTERN.setdefault(w, w)


def _coerce(c) -> Cyclotomic:
    return c if isinstance(c, Cyclotomic) else Cyclotomic.from_int(c)


class FreeElement:
    """Finite linear combination of words in x_1..x_rank."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Word, object] | None = None):
        self.rank = rank
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _coerce(c)
                if not c.is_zero():
                    clean[intern_word(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "FreeElement":
        out = cls.__new__(cls)
        out.rank = rank
        out.terms = terms
        return out

    @classmethod
    def scalar(cls, rank: int, c) -> "FreeElement":
        return cls(rank, {(): c})

    @classmethod
    def word(cls, rank: int, w: Sequence[int], c=1) -> "FreeElement":
        for i in w:
            if not 0 <= i < rank:
                raise ValueError(f"generator index {i + 1} out of range 1..{rank}")
        return cls(rank, {tuple(w): c})

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, Cyclotomic]]:
        return iter(self.terms.items())

    def coefficient(self, w: Sequence[int]) -> Cyclotomic:
        return self.terms.get(tuple(w), Cyclotomic.zero())

    def degrees(self) -> set[tuple[int, ...]]:
        return {degree_of(self.rank, w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple[int, ...]:
        """The common degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return next(iter(degs))

    def components(self) -> dict[tuple[int, ...], "FreeElement"]:
        parts: dict[tuple, dict] = defaultdict(dict)
        for w, c in self.terms.items():
            parts[degree_of(self.rank, w)][w] = c
        return {d: FreeElement._raw(self.rank, t) for d, t in parts.items()}

    def _check_rank(self, other: "FreeElement") -> None:
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other) -> "FreeElement":
        if not isinstance(other, FreeElement):
            other = FreeElement.scalar(self.rank, other)
        self._check_rank(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return FreeElement._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self) -> "FreeElement":
        return FreeElement._raw(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "FreeElement":
        return self + (-other)

    def __rsub__(self, other) -> "FreeElement":
        return (-self) + other

    def scale(self, c) -> "FreeElement":
        c = _coerce(c)
        if c.is_zero():
            return FreeElement(self.rank)
        return FreeElement._raw(self.rank, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "FreeElement":
        if not isinstance(other, FreeElement):
            return self.scale(other)
        self._check_rank(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = intern_word(w1 + w2)
                s = out.get(w)
                p = c1 * c2
                out[w] = p if s is None else s + p
        return FreeElement._raw(self.rank, {w: c for w, c in out.items() if not c.is_zero()})

    def __rmul__(self, other) -> "FreeElement":
        return self.scale(other)

    def __pow__(self, e: int) -> "FreeElement":
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = FreeElement.scalar(self.rank, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.rank == other.rank and (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - elements are mutable-looking values
        raise TypeError("FreeElement is unhashable")

    def __repr__(self) -> str:
        return f"FreeElement({self.to_text()})"

    def to_text(self) -> str:
        """Readable text accepted back by the expression parser."""
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "*".join(f"x{i + 1}" for i in w)
            if not mono:
                parts.append(c.to_text())
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"{c.to_text()}*{mono}")
        return " + ".join(parts)


class TensorElement:
    """Finite linear combination of pairs of words, an element of T(V) (x) T(V)."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[tuple[Word, Word], object] | None = None):
        self.rank = rank
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = _coerce(c)
                if not c.is_zero():
                    self.terms[(intern_word(k[0]), intern_word(k[1]))] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.rank, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover
        raise TypeError("TensorElement is unhashable")

    def bidegrees(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {(degree_of(self.rank, a), degree_of(self.rank, b)) for a, b in self.terms}

    def component(self, left: Sequence[int], right: Sequence[int]) -> "TensorElement":
        left, right = tuple(left), tuple(right)
        return TensorElement(
            self.rank,
            {
                k: c
                for k, c in self.terms.items()
                if degree_of(self.rank, k[0]) == left and degree_of(self.rank, k[1]) == right
            },
        )

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0]))
        body = " + ".join(
            f"{c.to_text()}*({_word_text(a)} # {_word_text(b)})" for (a, b), c in items
        )
        return f"TensorElement({body or '0'})"


def _word_text(w: Word) -> str:
    return "*".join(f"x{i + 1}" for i in w) or "1"


class FreeAlgebra:
    """T(V) for a fixed braiding: brackets, iterated adjoints, coproduct."""

    def __init__(self, braiding: BraidingMatrix):
        self.braiding = braiding
        self.rank = braiding.rank
        self._q_cache: dict[int, Cyclotomic] = {}
        self._delta_cache: dict[Word, dict] = {(): {((), ()): Cyclotomic.one()}}
        self._lock = threading.Lock()

    # -- scalars -------------------------------------------------------------
    def zeta(self, k: int) -> Cyclotomic:
        k %= self.braiding.conductor
        c = self._q_cache.get(k)
        if c is None:
            c = Cyclotomic.root(self.braiding.conductor, k)
            self._q_cache[k] = c
        return c

    def q(self, a: Sequence[int], b: Sequence[int]) -> Cyclotomic:
        return self.zeta(self.braiding.bilinear_exp(a, b))

    # -- elements --------------------------------------------------------------
    def gen(self, i: int) -> FreeElement:
        return FreeElement.word(self.rank, (i,))

    def one(self) -> FreeElement:
        return FreeElement.scalar(self.rank, 1)

    def zero(self) -> FreeElement:
        return FreeElement(self.rank)

    def word(self, w: Sequence[int], c=1) -> FreeElement:
        return FreeElement.word(self.rank, w, c)

    def bracket(self, u: FreeElement, v: FreeElement) -> FreeElement:
        """Braided commutator uv - q(deg u, deg v) vu, extended bilinearly."""
        out = self.zero()
        for du, cu in u.components().items():
            for dv, cv in v.components().items():
                out = out + cu * cv - (cv * cu).scale(self.q(du, dv))
        return out

    def iterated(self, indices: Sequence[int]) -> FreeElement:
        """x_{i1 i2 ... ik} = [x_i1, x_{i2...ik}]_c (0-based indices)."""
        if not indices:
            raise ValueError("iterated word needs at least one index")
        out = self.gen(indices[-1])
        for i in reversed(indices[:-1]):
            out = self.bracket(self.gen(i), out)
        return out

    def parse(self, text: str) -> FreeElement:
        from .expr import parse, evaluate_free

        return evaluate_free(parse(text), self)

    # -- coproduct -------------------------------------------------------------
    def word_coproduct(self, w: Word) -> dict:
        """Delta of a single word as a dict (left, right) -> coefficient."""
        got = self._delta_cache.get(w)
        if got is not None:
            return got
        prev = self.word_coproduct(w[:-1])
        i = w[-1]
        r = self.rank
        out: dict = {}
        e_i = [0] * r
        e_i[i] = 1
        for (a, b), c in prev.items():
            key = (intern_word(a + (i,)), b)
            v = c * self.q(degree_of(r, b), e_i)
            out[key] = out[key] + v if key in out else v
            key = (a, intern_word(b + (i,)))
            out[key] = out[key] + c if key in out else c
        out = {k: v for k, v in out.items() if not v.is_zero()}
        with self._lock:
            self._delta_cache[w] = out
        return out

    def coproduct(self, u: FreeElement) -> TensorElement:
        acc: dict = {}
        for w, c in u.terms.items():
            for k, d in self.word_coproduct(w).items():
                v = c * d
                acc[k] = acc[k] + v if k in acc else v
        return TensorElement(self.rank, acc)

    def tensor_multiply(self, x: TensorElement, y: TensorElement) -> TensorElement:
        """Product in the braided tensor square: (a#b)(c#d) = q(deg b, deg c) ac # bd."""
        r = self.rank
        acc: dict = {}
        for (a, b), c1 in x.terms.items():
            db = degree_of(r, b)
            for (cw, d), c2 in y.terms.items():
                k = (a + cw, b + d)
                v = c1 * c2 * self.q(db, degree_of(r, cw))
                acc[k] = acc[k] + v if k in acc else v
        return TensorElement(r, acc)

    def coproduct_left(self, t: TensorElement) -> dict:
        """(Delta (x) id) applied to t, as (w1, w2, w3) -> coefficient."""
        acc: dict = {}
        for (a, b), c in t.terms.items():
            for (a1, a2), d in self.word_coproduct(a).items():
                k = (a1, a2, b)
                acc[k] = acc[k] + c * d if k in acc else c * d
        return {k: v for k, v in acc.items() if not v.is_zero()}

    def coproduct_right(self, t: TensorElement) -> dict:
        """(id (x) Delta) applied to t, as (w1, w2, w3) -> coefficient."""
        acc: dict = {}
        for (a, b), c in t.terms.items():
            for (b1, b2), d in self.word_coproduct(b).items():
                k = (a, b1, b2)
                acc[k] = acc[k] + c * d if k in acc else c * d
        return {k: v for k, v in acc.items() if not v.is_zero()}

    # -- skew derivations --------------------------------------------------------
    def derivation(self, i: int, u: FreeElement) -> FreeElement:
        """The x_i-component of Delta(u) in T(V) (x) V, read off the left factor.

        On a word, removes one occurrence of x_i at position p with weight
        q(alpha_i, degree of the letters after p).
        """
        r = self.rank
        acc: dict = {}
        for w, c in u.terms.items():
            after = [0] * r
            for p in range(len(w) - 1, -1, -1):
                if w[p] == i:
                    k = intern_word(w[:p] + w[p + 1 :])
                    v = c * self.q(_unit(r, i), after)
                    acc[k] = acc[k] + v if k in acc else v
                after[w[p]] += 1
        return FreeElement(r, acc)


def _unit(r: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(r))
