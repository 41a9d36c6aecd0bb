"""Forced-relation verdicts and the end-to-end verification suite.

A relation x of degree beta is *forced* to vanish in every pre-Nichols
algebra of finite GK-dimension when assuming x != 0 leads to a contradiction:
x is primitive there, so V + k x is a braided subspace of primitives whose
Nichols algebra would need a finite root system.  check_forced_relation runs
that argument on one concrete braiding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .braiding import BraidingMatrix, NoFiniteEntry
from .freealg import FreeAlgebra, FreeElement
from .quotient import Presentation, QuotientEngine, ResourceLimitError
from .rootsys import Finite, enumerate_roots

__all__ = [
    "Verdict",
    "check_forced_relation",
    "ReportItem",
    "Report",
    "run_paper_suite",
    "EXIT_OK",
    "EXIT_FAIL",
    "EXIT_USAGE",
    "EXIT_INPUT",
    "EXIT_CAP",
    "EXIT_INCONCLUSIVE",
]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4
EXIT_INCONCLUSIVE = 5

FORCED = "ForcedZero"
NOT_FORCED = "NotForced"
INCONCLUSIVE = "Inconclusive"

# primitivity outcomes
PRIMITIVE = "primitive"
ZERO_MOD_LOWER = "zero modulo lower relations"
ASSUMED = "assumed"
NOT_PRIMITIVE = "not primitive"

# caps below these only bound the search; hitting them proves nothing
SOUND_OBJECT_CAP = 1000
SOUND_HEIGHT_CAP = 60


@dataclass(frozen=True)
class Verdict:
    relation: str
    degree: tuple
    status: str
    reason: str | None = None
    detail: str = ""
    adjoined: BraidingMatrix | None = None
    subdiagram: tuple = ()
    conditional: bool = False
    primitivity: str = ""
    witnesses: tuple = ()
    undecided: tuple = ()  # subdiagrams whose enumeration only hit a small cap

    @property
    def kinds(self) -> tuple:
        return tuple(dict.fromkeys(w.kind for w in self.witnesses))

    @property
    def forced(self) -> bool:
        return self.status == FORCED

    def summary(self) -> str:
        if self.status == FORCED:
            flag = " (conditional on the finite-GK classification conjecture)" if self.conditional else ""
            return f"ForcedZero({self.reason}){flag}: {self.detail}"
        if self.status == INCONCLUSIVE:
            return f"Inconclusive: {self.detail}"
        return f"NotForced: {self.detail}"


def _is_cartan_type(q: BraidingMatrix) -> bool:
    try:
        return len(q.cartan().cartan_vertices) == q.rank
    except NoFiniteEntry:
        return False


def _connected_subsets(q: BraidingMatrix, anchor: int):
    # vertex sets through anchor inducing a connected diagram, by size
    others = [v for v in range(q.rank) if v != anchor]
    for size in range(1, q.rank):
        for combo in combinations(others, size):
            verts = tuple(sorted((anchor,) + combo))
            if len(q.components(verts)) == 1:
                yield verts


def _primitivity(q, rel: FreeElement, lower, max_words: int) -> str:
    if lower is None:
        return ASSUMED
    beta = rel.degree()
    if lower == "nichols":
        pres = Presentation(q, [], name="nichols below", nichols=beta)
    else:
        pres = Presentation(q, list(lower), name="lower")
    engine = QuotientEngine(pres, max_words=max_words)
    if engine.is_zero(rel):
        return ZERO_MOD_LOWER
    return PRIMITIVE if engine.is_primitive(rel) else NOT_PRIMITIVE


def check_forced_relation(
    q: BraidingMatrix,
    rel,
    lower=None,
    *,
    max_words: int = 20000,
    max_objects: int = 1000,
    max_height: int = 60,
) -> Verdict:
    """Run the primitive-extension argument for one relation.

    ``lower`` is a list of relations (elements or expression strings), the
    string ``"nichols"`` for the Nichols ideal in degrees below deg(rel), or
    None to take primitivity as given.
    """
    alg = FreeAlgebra(q)
    if isinstance(rel, str):
        text, rel = rel, alg.parse(rel)
    else:
        text = rel.to_text()
    if rel.is_zero():
        raise ValueError("the relation is zero in the free algebra")
    if not rel.is_homogeneous():
        raise ValueError("the relation is not homogeneous")
    if isinstance(lower, (list, tuple)):
        lower = [alg.parse(x) if isinstance(x, str) else x for x in lower]
    beta = rel.degree()

    try:
        prim = _primitivity(q, rel, lower, max_words)
    except ResourceLimitError as exc:
        return Verdict(text, beta, INCONCLUSIVE, detail=f"primitivity check stopped: {exc}", primitivity="undecided")
    if prim == NOT_PRIMITIVE:
        return Verdict(text, beta, INCONCLUSIVE, detail="not primitive modulo the lower relations", primitivity=prim)

    big = q.adjoin_primitive(beta)
    witnesses, undecided = _witnesses(big, max_objects, max_height)
    if not witnesses and undecided:
        return Verdict(
            text,
            beta,
            INCONCLUSIVE,
            detail="root enumeration stopped by a cap below the sound bound on " + "; ".join(undecided),
            adjoined=big,
            primitivity=prim,
            undecided=tuple(undecided),
        )
    if not witnesses:
        return Verdict(
            text,
            beta,
            NOT_FORCED,
            detail="every connected subdiagram through the new vertex has a finite root system",
            adjoined=big,
            primitivity=prim,
        )
    first = witnesses[0]
    return Verdict(
        text,
        beta,
        FORCED,
        first.kind,
        first.detail,
        big,
        first.vertices,
        first.conditional,
        prim,
        tuple(witnesses),
        tuple(undecided),
    )


@dataclass(frozen=True)
class Witness:
    """One reason the extended diagram cannot have a finite root system."""

    kind: str
    vertices: tuple
    detail: str
    conditional: bool = False


def _definitive(res, max_objects: int, max_height: int) -> bool:
    # an undefined Cartan entry is a proof; a cap is one only when it is large enough
    if res.reason.startswith("vertex label 1"):
        return True
    return max_objects >= SOUND_OBJECT_CAP and max_height >= SOUND_HEIGHT_CAP


def _witnesses(big: BraidingMatrix, max_objects: int, max_height: int) -> tuple:
    # shape tests first, then root enumeration; smaller subdiagrams first in each
    new = big.rank - 1
    order = {"OneLabeledEdge": 0, "LongCycle": 1, "Rank3Triangle": 2}
    obstructions = sorted(
        (ob for ob in big.obstruction_scan() if new in ob.vertices),
        key=lambda ob: (len(ob.vertices), order[ob.kind], ob.vertices),
    )
    found = [Witness(ob.kind, tuple(sorted(ob.vertices)), ob.detail) for ob in obstructions]
    undecided = []
    for verts in _connected_subsets(big, new):
        sub = big.restrict(verts)
        res = enumerate_roots(sub, max_objects=max_objects, max_height=max_height)
        if isinstance(res, Finite):
            continue
        names = ",".join("beta" if v == new else str(v + 1) for v in verts)
        detail = f"subdiagram {{{names}}}: {res.reason}"
        if not _definitive(res, max_objects, max_height):
            undecided.append(detail)
            continue
        if len(verts) == 2:
            found.append(Witness("RankTwoNotInClassification", verts, detail))
        else:
            conditional = len(verts) >= 4 and not _is_cartan_type(sub)
            found.append(Witness("RootsNotFinite", verts, detail, conditional))
    return found, undecided


# -- the verification suite -------------------------------------------------------


@dataclass(frozen=True)
class ReportItem:
    item: str
    status: str  # pass, fail, inconclusive
    detail: str = ""
    seconds: float = 0.0


@dataclass
class Report:
    items: list = field(default_factory=list)

    def add(self, item: ReportItem) -> None:
        self.items.append(item)
        self.items.sort(key=lambda it: it.item)

    @property
    def passed(self) -> bool:
        return all(it.status == "pass" for it in self.items)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for it in self.items:
            out[it.status] = out.get(it.status, 0) + 1
        return out

    def exit_code(self) -> int:
        c = self.counts()
        if c["fail"]:
            return EXIT_FAIL
        if c["inconclusive"]:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def failures(self) -> list:
        return [it for it in self.items if it.status != "pass"]


def _timed(report: Report, item: str, fn) -> None:
    start = time.perf_counter()
    try:
        status, detail = fn()
    except ResourceLimitError as exc:
        status, detail = "inconclusive", f"resource cap: {exc}"
    report.add(ReportItem(item, status, detail, time.perf_counter() - start))


def run_paper_suite(
    entries: Sequence[str] = ("g23-a", "g23-b"),
    max_words: int = 20000,
    max_objects: int = 1000,
    hilbert_degree: int = 6,
    catalog=None,
) -> Report:
    """Run every cataloged check and collect pass/fail items sorted by id."""
    from . import catalog as default_catalog
    from .suite import suite_items

    cat = catalog or default_catalog
    report = Report()
    for item, fn in suite_items(cat, entries, max_words, max_objects, hilbert_degree):
        _timed(report, item, fn)
    return report
