"""Graded quotients of T(V) by homogeneous relations, computed degree by degree.

For a multidegree d the engine keeps a set of standard words spanning the
quotient in degree d and a reduced echelon form of the ideal restricted to the
remaining candidate words.  A word of degree d is rewritten by reducing its
prefix of length n-1 (or, failing that, its suffix) with the normal forms of
lower degrees; the words that survive both tests are the candidates.  The ideal
in degree d modulo this rewriting is spanned by the relations of degree d and
by the differences between the two rewritings of words whose prefix and suffix
are both reducible.  Only words of lower degree with standard middle part need
to be compared, which keeps the linear algebra small.

Optionally the engine computes the Nichols ideal itself in a range of degrees:
there an element belongs to the ideal iff all its skew derivations do.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braiding import BraidingMatrix, degree_of
from .freealg import FreeAlgebra, FreeElement, intern_word
from .expr import evaluate, parse
from .hilbert import HilbertData, degrees_up_to
from .scalar import Cyclotomic

__all__ = [
    "Presentation",
    "QuotientEngine",
    "DegreeBasis",
    "ResourceLimitError",
    "word_count",
    "brute_force_dimension",
]

DEFAULT_MAX_WORDS = 20000
DEFAULT_MAX_DEGREES = 20000


class ResourceLimitError(RuntimeError):
    """A degree would need more words than the configured bound."""


def word_count(degree: Sequence[int]) -> int:
    """Number of words of the given multidegree (a multinomial coefficient)."""
    out = math.factorial(sum(degree))
    for k in degree:
        out //= math.factorial(k)
    return out


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class Presentation:
    """A braiding with homogeneous relations.

    ``nichols`` selects degrees in which the Nichols ideal is added on top of
    the relations: ``None`` (never), ``"all"``, or a degree beta meaning all
    degrees strictly below beta in the componentwise order.
    """

    braiding: BraidingMatrix
    relations: list = field(default_factory=list)
    name: str = ""
    nichols: object = None
    relation_texts: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.braiding.rank

    @classmethod
    def from_texts(cls, braiding: BraidingMatrix, texts: Iterable[str], name: str = "", nichols=None):
        alg = FreeAlgebra(braiding)
        texts = list(texts)
        rels = [alg.parse(t) for t in texts]
        return cls(braiding, rels, name, nichols, texts)

    def validate(self) -> None:
        for k, r in enumerate(self.relations):
            label = self.relation_texts[k] if k < len(self.relation_texts) else f"#{k + 1}"
            if r.rank != self.rank:
                raise ValueError(f"relation {label} has rank {r.rank}, expected {self.rank}")
            if r.is_zero():
                raise ValueError(f"relation {label} is zero in the free algebra")
            if not r.is_homogeneous():
                raise ValueError(f"relation {label} is not homogeneous")

    def with_relations(self, extra: Iterable[FreeElement], name: str = "") -> "Presentation":
        return Presentation(self.braiding, list(self.relations) + list(extra), name or self.name, self.nichols)

    def uses_nichols(self, d: Sequence[int]) -> bool:
        if self.nichols is None:
            return False
        if self.nichols == "all":
            return True
        beta = tuple(self.nichols)
        return tuple(d) != beta and _leq(d, beta)


@dataclass
class DegreeBasis:
    degree: tuple
    standard_words: list
    pivots: dict

    @property
    def dim(self) -> int:
        return len(self.standard_words)


class QuotientEngine:
    """Normal forms in T(V)/<relations>, computed lazily per multidegree.

    All public methods are serialized by an internal lock, so one engine may be
    shared between threads.
    """

    def __init__(
        self,
        presentation: Presentation,
        max_words: int = DEFAULT_MAX_WORDS,
        max_degrees: int = DEFAULT_MAX_DEGREES,
    ):
        presentation.validate()
        self.presentation = presentation
        self.algebra = FreeAlgebra(presentation.braiding)
        self.rank = presentation.rank
        self.max_words = max_words
        self.max_degrees = max_degrees
        self._relations: dict = {}
        for r in presentation.relations:
            self._relations.setdefault(r.degree(), []).append(r)
        self._bases: dict = {}
        self._nf: dict = {(): {(): Cyclotomic.one()}}
        self._std_sets: dict = {}
        self._new_generators: dict = {}
        self._lock = threading.RLock()

    # -- public API ------------------------------------------------------------
    def degree_basis(self, d: Sequence[int]) -> DegreeBasis:
        d = tuple(d)
        with self._lock:
            return self._basis(d)

    def dim(self, d: Sequence[int]) -> int:
        return self.degree_basis(d).dim

    def prepare(self, D: int) -> None:
        for d in degrees_up_to(self.rank, D):
            self.degree_basis(d)

    def hilbert(self, D: int) -> HilbertData:
        table = {}
        for d in degrees_up_to(self.rank, D):
            v = self.dim(d)
            if v:
                table[d] = v
        return HilbertData(self.rank, D, table)

    def normal_form(self, u: FreeElement) -> FreeElement:
        with self._lock:
            acc: dict = {}
            for w, c in u.terms.items():
                for s, e in self._nf_word(w).items():
                    v = c * e
                    acc[s] = acc[s] + v if s in acc else v
        return FreeElement(self.rank, acc)

    def is_zero(self, u: FreeElement) -> bool:
        return self.normal_form(u).is_zero()

    def parse(self, text: str) -> FreeElement:
        """The element of T(V) denoted by text (not reduced)."""
        return self.algebra.parse(text)

    def evaluate(self, text_or_node) -> FreeElement:
        """Normal form of an expression, computed with quotient arithmetic.

        Products are formed on normal forms, so large elements such as squares
        of root vectors never get expanded in the free algebra.
        """
        node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
        with self._lock:
            return evaluate(node, _QuotientBackend(self))

    def multiply(self, a: FreeElement, b: FreeElement) -> FreeElement:
        """Product of two normal forms, returned in normal form."""
        with self._lock:
            return _QuotientBackend(self).mul(a, b)

    def new_nichols_generators(self, d: Sequence[int]) -> list:
        """Elements added in degree d by the Nichols condition.

        They span the degree-d part of the Nichols ideal modulo the ideal
        generated by everything of smaller degree, so over all degrees they
        form a minimal generating set.
        """
        d = tuple(d)
        with self._lock:
            self._basis(d)
            return [FreeElement(self.rank, row) for row in self._new_generators.get(d, [])]

    def is_primitive(self, u: FreeElement) -> bool:
        return not self.primitivity_defect(u)

    def primitivity_defect(self, u: FreeElement) -> dict:
        """Nonzero middle components of (pi (x) pi) Delta(u), keyed by bidegree.

        u is primitive in the quotient iff the result is empty.
        """
        with self._lock:
            out: dict = {}
            for d, part in u.components().items():
                if not any(d):
                    if not part.is_zero():
                        out[(d, d)] = {((), ()): part.terms[()]}
                    continue
                for key, comp in self._middle_coproduct(part, d).items():
                    merged = out.setdefault(key, {})
                    for k, c in comp.items():
                        merged[k] = merged[k] + c if k in merged else c
            return {k: {t: c for t, c in v.items() if not c.is_zero()} for k, v in out.items() if any(not c.is_zero() for c in v.values())}

    # -- coproduct in the quotient ---------------------------------------------
    def _middle_coproduct(self, u: FreeElement, d: tuple) -> dict:
        # group Delta(u) by left word, reduce the right factors, then the left
        r = self.rank
        by_left: dict = {}
        for w, c in u.terms.items():
            for (a, b), e in self.algebra.word_coproduct(w).items():
                if not a or not b:
                    continue
                slot = by_left.setdefault(a, {})
                v = c * e
                slot[b] = slot[b] + v if b in slot else v
        out: dict = {}
        for a, right in by_left.items():
            red: dict = {}
            for b, c in right.items():
                if c.is_zero():
                    continue
                for s, e in self._nf_word(b).items():
                    v = c * e
                    red[s] = red[s] + v if s in red else v
            red = {s: c for s, c in red.items() if not c.is_zero()}
            if not red:
                continue
            da = degree_of(r, a)
            db = tuple(x - y for x, y in zip(d, da))
            comp = out.setdefault((da, db), {})
            for sa, ea in self._nf_word(a).items():
                for sb, eb in red.items():
                    k = (sa, sb)
                    v = ea * eb
                    comp[k] = comp[k] + v if k in comp else v
        return out

    # -- normal forms of words --------------------------------------------------
    def _nf_word(self, w: tuple) -> dict:
        got = self._nf.get(w)
        if got is not None:
            return got
        d = degree_of(self.rank, w)
        basis = self._basis(d)
        got = self._nf.get(w)
        if got is None:
            got = self._reduce(self._rewrite(w, {}), basis.pivots)
            self._nf[w] = got
        return got

    def _is_standard(self, w: tuple) -> bool:
        d = degree_of(self.rank, w)
        self._basis(d)
        return w in self._std_sets[d]

    def _rewrite(self, w: tuple, memo: dict) -> dict:
        """Express w through candidate words using lower-degree normal forms."""
        got = memo.get(w)
        if got is not None:
            return got
        if len(w) <= 1:
            out = {w: Cyclotomic.one()}
        else:
            prefix, last = w[:-1], w[-1]
            if not self._is_standard(prefix):
                out = {}
                for s, c in self._nf_word(prefix).items():
                    _accumulate(out, self._rewrite(intern_word(s + (last,)), memo), c)
            else:
                first, suffix = w[0], w[1:]
                if not self._is_standard(suffix):
                    out = {}
                    for s, c in self._nf_word(suffix).items():
                        _accumulate(out, self._rewrite(intern_word((first,) + s), memo), c)
                else:
                    out = {w: Cyclotomic.one()}
        memo[w] = out
        return out

    def _rewrite_suffix_first(self, w: tuple, memo: dict) -> dict:
        first, suffix = w[0], w[1:]
        out: dict = {}
        for s, c in self._nf_word(suffix).items():
            _accumulate(out, self._rewrite(intern_word((first,) + s), memo), c)
        return out

    @staticmethod
    def _reduce(vec: dict, pivots: dict) -> dict:
        out: dict = {}
        for w, c in vec.items():
            if c.is_zero():
                continue
            row = pivots.get(w)
            if row is None:
                out[w] = out[w] + c if w in out else c
            else:
                for s, e in row.items():
                    v = c * e
                    out[s] = out[s] + v if s in out else v
        return {w: c for w, c in out.items() if not c.is_zero()}

    # -- per-degree linear algebra ---------------------------------------------
    def _basis(self, d: tuple) -> DegreeBasis:
        got = self._bases.get(d)
        if got is not None:
            return got
        total = sum(d)
        if total == 0:
            basis = DegreeBasis(d, [()], {})
            self._bases[d] = basis
            self._std_sets[d] = {()}
            return basis
        if len(self._bases) >= self.max_degrees:
            raise ResourceLimitError(f"more than {self.max_degrees} multidegrees requested")
        # lower degrees first, so recursion below never re-enters this degree
        for j in range(self.rank):
            if d[j]:
                self._basis(tuple(x - (k == j) for k, x in enumerate(d)))

        candidates = set()
        for j in range(self.rank):
            if not d[j]:
                continue
            dj = tuple(x - (k == j) for k, x in enumerate(d))
            for s in self._bases[dj].standard_words:
                w = intern_word(s + (j,))
                if len(w) == 1 or w[1:] in self._std_sets[degree_of(self.rank, w[1:])]:
                    candidates.add(w)
        if len(candidates) > self.max_words:
            raise ResourceLimitError(
                f"degree {d} needs {len(candidates)} candidate words, above the bound {self.max_words}"
            )

        memo: dict = {}
        pivots: dict = {}
        for r in self._relations.get(d, []):
            row: dict = {}
            for w, c in r.terms.items():
                _accumulate(row, self._rewrite(w, memo), c)
            _insert_row(pivots, row)
        # overlaps: x_i u x_j with u standard, both x_i u and u x_j reducible
        for i in range(self.rank):
            for j in range(self.rank):
                if not d[i] or not d[j] or (i == j and d[i] < 2):
                    continue
                mid = tuple(x - (k == i) - (k == j) for k, x in enumerate(d))
                for u in self._bases[mid].standard_words:
                    left = intern_word((i,) + u)
                    right = intern_word(u + (j,))
                    if self._is_standard(left) or self._is_standard(right):
                        continue
                    w = intern_word(left + (j,))
                    a = self._rewrite(w, memo)
                    b = self._rewrite_suffix_first(w, memo)
                    row = dict(a)
                    _accumulate(row, b, -Cyclotomic.one())
                    _insert_row(pivots, row)

        if self.presentation.uses_nichols(d):
            self._nichols_rows(d, candidates, pivots)

        standard = sorted(w for w in candidates if w not in pivots)
        basis = DegreeBasis(d, standard, pivots)
        self._bases[d] = basis
        self._std_sets[d] = set(standard)
        for w in standard:
            self._nf[w] = {w: Cyclotomic.one()}
        for w, row in pivots.items():
            self._nf[w] = row
        return basis

    def _nichols_rows(self, d: tuple, candidates: set, pivots: dict) -> None:
        # kernel of the skew derivations on the span of the free candidates
        free = sorted(w for w in candidates if w not in pivots)
        images = []
        for w in free:
            vec: dict = {}
            el = FreeElement._raw(self.rank, {w: Cyclotomic.one()})
            for i in range(self.rank):
                if not d[i]:
                    continue
                der = self.algebra.derivation(i, el)
                for s, c in self.normal_form_unlocked(der).items():
                    vec[(i, s)] = c
            images.append(vec)
        new = []
        for combo in _kernel(images):
            row = {free[k]: c for k, c in combo.items()}
            new.append(row)
            _insert_row(pivots, row)
        self._new_generators[d] = new

    def normal_form_element(self, u: FreeElement) -> FreeElement:
        return FreeElement(self.rank, self.normal_form_unlocked(u))

    def normal_form_unlocked(self, u: FreeElement) -> dict:
        acc: dict = {}
        for w, c in u.terms.items():
            _accumulate(acc, self._nf_word(w), c)
        return {w: c for w, c in acc.items() if not c.is_zero()}


class _QuotientBackend:
    """Expression backend whose elements are normal forms."""

    def __init__(self, engine: QuotientEngine):
        self.engine = engine
        self.rank = engine.rank
        self.braiding = engine.presentation.braiding
        self.algebra = engine.algebra

    def scalar(self, c) -> FreeElement:
        return FreeElement.scalar(self.rank, c)

    def gen(self, indices) -> FreeElement:
        out = self.engine.normal_form_element(FreeElement.word(self.rank, (indices[-1],)))
        for i in reversed(indices[:-1]):
            out = self.bracket(FreeElement.word(self.rank, (i,)), out)
        return out

    def _right_letter(self, vec: dict, j: int) -> dict:
        out: dict = {}
        for s, c in vec.items():
            _accumulate(out, self.engine._nf_word(intern_word(s + (j,))), c)
        return {w: c for w, c in out.items() if not c.is_zero()}

    def mul(self, a: FreeElement, b: FreeElement) -> FreeElement:
        acc: dict = {}
        for t, ct in b.terms.items():
            vec = {s: c * ct for s, c in a.terms.items()}
            for j in t:
                vec = self._right_letter(vec, j)
                if not vec:
                    break
            _accumulate(acc, vec, Cyclotomic.one())
        return FreeElement(self.rank, acc)

    def bracket(self, a: FreeElement, b: FreeElement) -> FreeElement:
        out = FreeElement(self.rank)
        for da, pa in a.components().items():
            for db, pb in b.components().items():
                out = out + self.mul(pa, pb) - self.mul(pb, pa).scale(self.algebra.q(da, db))
        return out


def _accumulate(acc: dict, vec: dict, c) -> None:
    for w, e in vec.items():
        v = e * c
        acc[w] = acc[w] + v if w in acc else v


def _insert_row(pivots: dict, row: dict) -> None:
    """Add a row to a fully reduced echelon form keyed by pivot word (largest word)."""
    out: dict = {}
    for w, c in row.items():
        if c.is_zero():
            continue
        prow = pivots.get(w)
        if prow is None:
            out[w] = out[w] + c if w in out else c
        else:
            for s, e in prow.items():
                v = c * e
                out[s] = out[s] + v if s in out else v
    out = {w: c for w, c in out.items() if not c.is_zero()}
    if not out:
        return
    p = max(out)
    inv = out.pop(p).inverse()
    # the pivot word p equals the negated remainder divided by its coefficient
    new = {w: -c * inv for w, c in out.items()}
    for q_word, qrow in pivots.items():
        c = qrow.pop(p, None)
        if c is not None:
            for s, e in new.items():
                v = c * e
                qrow[s] = qrow[s] + v if s in qrow else v
            for s in [s for s, v in qrow.items() if v.is_zero()]:
                del qrow[s]
    pivots[p] = new


def _kernel(vectors: list) -> list:
    """Basis of linear relations among sparse vectors, as dicts index -> coefficient."""
    rows: dict = {}  # pivot key -> (vector, combination)
    out = []
    for k, vec in enumerate(vectors):
        v = {key: c for key, c in vec.items() if not c.is_zero()}
        combo = {k: Cyclotomic.one()}
        while v:
            key = max(v)
            if key not in rows:
                break
            pv, pc = rows[key]
            f = v[key]
            for kk, c in pv.items():
                nv = v.get(kk, Cyclotomic.zero()) - f * c
                if nv.is_zero():
                    v.pop(kk, None)
                else:
                    v[kk] = nv
            for kk, c in pc.items():
                nc = combo.get(kk, Cyclotomic.zero()) - f * c
                if nc.is_zero():
                    combo.pop(kk, None)
                else:
                    combo[kk] = nc
        if v:
            key = max(v)
            inv = v[key].inverse()
            rows[key] = ({kk: c * inv for kk, c in v.items()}, {kk: c * inv for kk, c in combo.items()})
        else:
            out.append(combo)
    return out


def brute_force_dimension(presentation: Presentation, d: Sequence[int], lower_ideal=None) -> int:
    """Quotient dimension in degree d from all products w r w' (independent check)."""
    from itertools import permutations

    d = tuple(d)
    rank = presentation.rank
    letters = [i for i in range(rank) for _ in range(d[i])]
    words = sorted(set(permutations(letters)))
    index = {w: k for k, w in enumerate(words)}
    rows = []
    for r in presentation.relations:
        dr = r.degree()
        if not _leq(dr, d):
            continue
        rest = tuple(x - y for x, y in zip(d, dr))
        rest_letters = [i for i in range(rank) for _ in range(rest[i])]
        rest_words = set(permutations(rest_letters))
        for full in rest_words:
            for cut in range(len(full) + 1):
                a, b = full[:cut], full[cut:]
                rows.append({index[a + w + b]: c for w, c in r.terms.items()})
    return len(words) - _rank(rows)


def _rank(rows: list) -> int:
    pivots: dict = {}
    for row in rows:
        v = {k: c for k, c in row.items() if not c.is_zero()}
        while v:
            key = max(v)
            if key not in pivots:
                inv = v[key].inverse()
                pivots[key] = {kk: c * inv for kk, c in v.items()}
                break
            f = v[key]
            for kk, c in pivots[key].items():
                nv = v.get(kk, Cyclotomic.zero()) - f * c
                if nv.is_zero():
                    v.pop(kk, None)
                else:
                    v[kk] = nv
    return len(pivots)
