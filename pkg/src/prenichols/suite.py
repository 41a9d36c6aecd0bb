"""Items of the verification suite.

Each item is ``(item_id, fn)`` where ``fn()`` returns ``(status, detail)`` with
status ``pass``, ``fail`` or ``inconclusive``.  Items are independent and are
generated lazily, so engines are shared through a small per-run cache.
"""

from __future__ import annotations

from .hilbert import (
    count_basis_monomials,
    expand_product_form,
    gk_of_product_form,
    multiply_series,
)
from .quotient import QuotientEngine
from .repcheck import is_nonzero, rep_from_data, truncated_regular_rep, verify_representation
from .rootsys import Finite, enumerate_roots
from .verifier import FORCED, INCONCLUSIVE, check_forced_relation

__all__ = ["suite_items", "EXPECTED_GK", "EXPECTED_ROOTS"]

EXPECTED_GK = {"hat": 6, "tilde": 4, "z": 2}
EXPECTED_ROOTS = 10


def _ok(flag: bool, detail: str = "") -> tuple:
    return ("pass" if flag else "fail", detail)


class _Engines:
    def __init__(self, max_words: int):
        self.max_words = max_words
        self._cache: dict = {}

    def get(self, entry, pname: str, braiding=None) -> QuotientEngine:
        key = (entry.name, pname, braiding)
        if key not in self._cache:
            self._cache[key] = QuotientEngine(entry.presentation(pname, braiding), max_words=self.max_words)
        return self._cache[key]


def _verdict_item(q, rel, lower, max_words, max_objects, want_status, want_reason, want_kind=None):
    def run():
        v = check_forced_relation(q, rel, lower, max_words=max_words, max_objects=max_objects)
        if v.status == INCONCLUSIVE:
            return "inconclusive", v.summary()
        if v.status != want_status:
            return "fail", f"expected {want_status}, got {v.summary()}"
        if want_reason is not None and v.reason != want_reason:
            return "fail", f"expected first reason {want_reason}, got {v.reason}"
        if want_kind is not None and want_kind not in v.kinds:
            if v.undecided:
                return "inconclusive", f"{want_kind} not found; capped on " + "; ".join(v.undecided)
            return "fail", f"{want_kind} not among witnesses {list(v.kinds)}"
        return "pass", v.summary()

    return run


def _lemma_items(cat, max_words, max_objects):
    for inst in cat.lemma_instances():
        exp = inst.expected
        yield (
            f"lemma:{inst.name}",
            _verdict_item(inst.braiding, inst.relation, inst.lower, max_words, max_objects, exp["status"], exp["reason"]),
        )
        kind = inst.expected_kind
        yield (
            f"lemma-kind:{inst.name}",
            _verdict_item(inst.braiding, inst.relation, inst.lower, max_words, max_objects, FORCED, None, kind),
        )


def _entry_items(entry, engines: _Engines, max_words, max_objects, D):
    name = entry.name
    q = entry.braiding

    for f in entry.forced:
        lower = entry.relation_texts[f.lower]
        yield (
            f"forced:{name}:{f.id}",
            _verdict_item(q, f.relation, lower, max_words, max_objects, f.status, None, f.kind),
        )

    for el, pname in entry.primitive:

        def prim(el=el, pname=pname):
            E = engines.get(entry, pname)
            u = E.parse(entry.element(el))
            if E.is_zero(u):
                return "fail", f"{el} vanishes in {pname}"
            return _ok(E.is_primitive(u), f"{el} in {pname}")

        yield f"primitive:{name}:{el}@{pname}", prim

    for el, pname in entry.nonzero:

        def nonzero(el=el, pname=pname):
            E = engines.get(entry, pname)
            return _ok(not E.is_zero(E.parse(entry.element(el))), f"{el} in {pname}")

        yield f"nonzero:{name}:{el}@{pname}", nonzero

    for ident in entry.identities:

        def check(ident=ident, pname=ident.presentation, text=ident.text):
            E = engines.get(entry, pname)
            nf = E.evaluate(text)
            return _ok(nf.is_zero(), "holds" if nf.is_zero() else f"remainder has {len(nf)} terms")

        yield f"identity:{name}:{ident.id}", check
        if ident.corrected is not None or ident.presentation in entry.completed:
            pname = entry.completed.get(ident.presentation, ident.presentation)
            text = ident.corrected_text or ident.text
            yield f"identity-corrected:{name}:{ident.id}", lambda t=text, p=pname: check(ident, p, t)

    yield from _representation_items(entry, engines)
    yield from _hilbert_items(entry, engines, D)
    yield from _static_items(entry, max_objects)


def _representation_items(entry, engines: _Engines):
    rep = entry.representation
    if not rep:
        return
    variants = [("q13-trivial", entry.braiding)] + [(k, entry.variant(k)) for k in sorted(entry.variants)]
    for label, b in variants:

        def verify(b=b):
            ok, bad = verify_representation(entry.presentation(rep["presentation"], b), rep_from_data(rep, b))
            return _ok(ok, "all relations vanish" if ok else f"relation {bad} does not vanish")

        yield f"representation:{entry.name}:{label}", verify
        for el, pname in entry.nonzero:

            def displayed(el=el, b=b):
                r = rep_from_data(rep, b)
                u = engines.get(entry, rep["presentation"], b).parse(entry.element(el))
                return _ok(is_nonzero(r, u), f"displayed matrices on {el}")

            def certificate(el=el, pname=pname, b=b):
                lower = engines.get(entry, rep["presentation"], b)
                r, _ = truncated_regular_rep(lower, entry.element_degrees[el])
                ok, bad = verify_representation(entry.presentation(pname, b), r)
                if not ok:
                    return "fail", f"truncated regular representation does not kill {bad}"
                return _ok(is_nonzero(r, lower.parse(entry.element(el))), f"{el} in dimension {r.dimension}")

            yield f"rep-nonzero:{entry.name}:{el}:{label}", displayed
            yield f"rep-certificate:{entry.name}:{el}@{pname}:{label}", certificate


def _hilbert_items(entry, engines: _Engines, D):
    name = entry.name
    forms = entry.product_forms

    def compare(pname, series_fn, what):
        def run():
            got = engines.get(entry, pname).hilbert(D)
            want = series_fn()
            if got == want:
                return "pass", f"{pname} equals {what} up to total degree {D}"
            diffs = got.differences(want)[:4]
            return "fail", f"{pname} differs from {what}: " + "; ".join(f"{d}: {a} vs {b}" for d, a, b in diffs)

        return run

    for pname in ("hat", "tilde"):
        targets = [pname] + ([entry.completed[pname]] if pname in entry.completed else [])
        readings = sorted(f for f in forms if f.startswith(pname + "-"))
        for target in targets:
            if len(readings) == 1:
                f = forms[readings[0]]
                yield f"hilbert:{name}:{target}:{readings[0]}", compare(target, lambda f=f: expand_product_form(f, D), readings[0])
            elif readings:
                yield f"hilbert:{name}:{target}:reading", _reading(engines, entry, target, {r: forms[r] for r in readings}, D)
    if entry.basis is not None:
        for target in ["hat"] + ([entry.completed["hat"]] if "hat" in entry.completed else []):
            yield f"hilbert:{name}:{target}:basis", compare(target, lambda: count_basis_monomials(entry.basis, D), "the basis count")
            for d in entry.spot_degrees:
                yield f"hilbert-spot:{name}:{target}:{','.join(map(str, d))}", _spot(engines, entry, target, d)
    if "z" in forms:

        def product():
            tilde = engines.get(entry, "tilde").hilbert(D)
            return multiply_series(expand_product_form(forms["z"], D), tilde)

        yield f"hilbert:{name}:hat:z-times-tilde", compare("hat", product, "Z x tilde")


def _reading(engines, entry, pname, readings: dict, D):
    # several candidate product forms: exactly one should match the computed series
    def run():
        got = engines.get(entry, pname).hilbert(D)
        matching = [r for r, f in readings.items() if expand_product_form(f, D) == got]
        if len(matching) == 1:
            return "pass", f"{matching[0]} matches {pname} up to total degree {D}; the other readings do not"
        return "fail", f"readings matching {pname}: {matching or 'none'}"

    return run


def _spot(engines, entry, pname, d):
    def run():
        got = engines.get(entry, pname).dim(d)
        want = count_basis_monomials(entry.basis, sum(d))[d]
        return _ok(got == want, f"dimension {got} in degree {d}, basis count {want}")

    return run


def _static_items(entry, max_objects):
    name = entry.name
    for fname, f in sorted(entry.product_forms.items()):
        want = EXPECTED_GK.get(fname.split("-")[0])
        if want is not None:
            got = gk_of_product_form(f)
            yield f"gk:{name}:{fname}", lambda got=got, want=want: _ok(got == want, f"GK {got}, expected {want}")
    if entry.basis is not None:

        def basis_form():
            D = 8
            a = count_basis_monomials(entry.basis, D)
            b = expand_product_form(entry.basis.product_form(), D)
            return _ok(a == b, "basis count equals the expansion of its product form")

        yield f"basis:{name}:product-form", basis_form

        def roots():
            res = enumerate_roots(entry.braiding, max_objects=max_objects)
            if not isinstance(res, Finite):
                return "fail", f"root system not finite: {res.reason}"
            got = sorted(tuple(r) for r in res.roots)
            skip = {entry.element_degrees[e] for e in ("x_u", "x_v")}
            pbw = sorted({g[1] for g in entry.basis.generators} - skip)
            if len(got) != EXPECTED_ROOTS:
                return "fail", f"{len(got)} positive roots"
            return _ok(got == pbw, f"{len(got)} positive roots, matching the PBW degrees")

        yield f"roots:{name}", roots


def suite_items(cat, entries, max_words: int, max_objects: int, hilbert_degree: int):
    engines = _Engines(max_words)
    yield from _lemma_items(cat, max_words, max_objects)
    for name in entries:
        yield from _entry_items(cat.load_entry(name), engines, max_words, max_objects, hilbert_degree)
