"""Shipped data: the two g(2,3) braidings with their presentations, and the
forced-relation instances.

Entries live as JSON files under ``data/``.  Expressions may refer to named
elements as ``{name}``; references are expanded textually before parsing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .braiding import BraidingMatrix
from .freealg import FreeAlgebra
from .hilbert import BasisSpec, ProductForm
from .quotient import Presentation

__all__ = [
    "CatalogError",
    "CatalogEntry",
    "Identity",
    "ForcedItem",
    "LemmaInstance",
    "entry_names",
    "load_entry",
    "lemma_instances",
    "resolve_presentation",
    "expand_references",
]

_REF = re.compile(r"\{([^{}]+)\}")

# short names for presentations, as "<entry>:<presentation>"
ALIASES = {
    "g23a-underline": "g23-a:aux",
    "g23a-tilde": "g23-a:tilde",
    "g23a-hat": "g23-a:hat",
    "g23b-prime": "g23-b:prime",
    "g23b-underline": "g23-b:aux",
    "g23b-tilde": "g23-b:tilde",
    "g23b-hat": "g23-b:hat",
}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Identity:
    id: str
    presentation: str
    lhs: str
    rhs: str
    corrected: str | None = None  # right-hand side that holds where the displayed one does not

    @property
    def text(self) -> str:
        return _difference(self.lhs, self.rhs)

    @property
    def corrected_text(self) -> str | None:
        return None if self.corrected is None else _difference(self.lhs, self.corrected)


def _difference(lhs: str, rhs: str) -> str:
    return lhs if rhs.strip() == "0" else f"{lhs} - ({rhs})"


@dataclass(frozen=True)
class ForcedItem:
    id: str
    relation: str
    lower: str
    status: str
    kind: str | None


@dataclass
class CatalogEntry:
    name: str
    description: str
    braiding: BraidingMatrix
    elements: dict  # name -> expanded expression
    element_degrees: dict
    relation_texts: dict  # presentation name -> expanded relation texts
    basis: BasisSpec | None = None
    product_forms: dict = field(default_factory=dict)
    identities: list = field(default_factory=list)
    primitive: list = field(default_factory=list)
    nonzero: list = field(default_factory=list)
    forced: list = field(default_factory=list)
    representation: dict | None = None
    variants: dict = field(default_factory=dict)
    completed: dict = field(default_factory=dict)  # presentation -> completed presentation
    spot_degrees: list = field(default_factory=list)  # extra single-degree basis checks
    raw: dict = field(default_factory=dict)

    def expand(self, text: str) -> str:
        return _expand(text, self.raw.get("elements", {}))

    def presentation(self, name: str, braiding: BraidingMatrix | None = None) -> Presentation:
        if name not in self.relation_texts:
            raise CatalogError(f"{self.name} has no presentation {name!r}")
        return Presentation.from_texts(braiding or self.braiding, self.relation_texts[name], f"{self.name}:{name}")

    def element(self, name: str) -> str:
        if name in self.elements:
            return self.elements[name]
        return self.expand(name)

    def variant(self, name: str) -> BraidingMatrix:
        return BraidingMatrix.from_dict(self.variants[name])


@dataclass(frozen=True)
class LemmaInstance:
    name: str
    braiding: BraidingMatrix
    relation: str
    lower: object  # "nichols", None, or a list of expression strings
    expected_kind: str | None
    displayed: str | None = None
    displayed_vanishes_in_nichols: bool | None = None
    note: str = ""
    expected: dict = field(default_factory=dict)


def _expand(text: str, elements: dict, depth: int = 0) -> str:
    if depth > 20:
        raise CatalogError(f"element references nest too deeply in {text!r}")

    def sub(m):
        key = m.group(1)
        if key not in elements:
            raise CatalogError(f"unknown element {{{key}}}")
        return _expand(elements[key]["expr"], elements, depth + 1)

    return _REF.sub(sub, text)


def expand_references(text: str, elements: dict) -> str:
    """Replace ``{name}`` by the expression of that element, recursively."""
    return _expand(text, elements)


def _read(name: str) -> dict:
    try:
        text = (resources.files(__package__) / "data" / f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise CatalogError(f"unknown catalog entry {name!r}") from exc
    return json.loads(text)


def entry_names() -> list:
    files = (resources.files(__package__) / "data").iterdir()
    names = sorted(f.name[:-5] for f in files if f.name.endswith(".json") and f.name != "lemma_instances.json")
    return names + [inst.name for inst in lemma_instances()]


def _form(rank: int, data: dict) -> ProductForm:
    return ProductForm(
        rank,
        tuple(tuple(d) for d in data.get("numerator", [])),
        tuple(tuple(d) for d in data.get("denominator", [])),
        tuple((tuple(d), n) for d, n in data.get("heights", [])),
    )


def _validate(entry: CatalogEntry) -> None:
    alg = FreeAlgebra(entry.braiding)
    for name, text in entry.elements.items():
        u = alg.parse(text)
        if u.is_zero() or not u.is_homogeneous():
            raise CatalogError(f"{entry.name}: element {name} is zero or not homogeneous")
        if u.degree() != entry.element_degrees[name]:
            raise CatalogError(f"{entry.name}: element {name} has degree {u.degree()}, cataloged {entry.element_degrees[name]}")
    for pname in entry.relation_texts:
        entry.presentation(pname).validate()
    for ident in entry.identities:
        for side in (ident.lhs, ident.rhs, ident.corrected):
            if side is not None:
                alg.parse(side)


@lru_cache(maxsize=None)
def _load_g23(name: str) -> CatalogEntry:
    data = _read(name)
    braiding = BraidingMatrix.from_dict(data["braiding"])
    els = data.get("elements", {})
    expand = lambda t: _expand(t, els)  # noqa: E731
    elements = {k: expand(v["expr"]) for k, v in els.items()}
    degrees = {k: tuple(v["degree"]) for k, v in els.items()}
    rel_texts = {k: [expand(t) for t in v] for k, v in data.get("presentations", {}).items()}
    basis = None
    if "basis" in data:
        basis = BasisSpec(braiding.rank, tuple((g["name"], tuple(g["degree"]), g["height"]) for g in data["basis"]))
    forms = {k: _form(braiding.rank, v) for k, v in data.get("product_forms", {}).items()}
    identities = [
        Identity(i["id"], i["presentation"], expand(i["lhs"]), expand(i["rhs"]), expand(i["corrected"]) if "corrected" in i else None)
        for i in data.get("identities", [])
    ]
    forced = [ForcedItem(f["id"], expand(f["relation"]), f["lower"], f["status"], f["kind"]) for f in data.get("forced", [])]
    entry = CatalogEntry(
        name=data["name"],
        description=data.get("description", ""),
        braiding=braiding,
        elements=elements,
        element_degrees=degrees,
        relation_texts=rel_texts,
        basis=basis,
        product_forms=forms,
        identities=identities,
        primitive=[(p["element"], p["presentation"]) for p in data.get("primitive", [])],
        nonzero=[(p["element"], p["presentation"]) for p in data.get("nonzero", [])],
        forced=forced,
        representation=data.get("representation"),
        variants=data.get("variants", {}),
        completed=data.get("completed_presentations", {}),
        spot_degrees=[tuple(d) for d in data.get("spot_degrees", [])],
        raw=data,
    )
    _validate(entry)
    return entry


@lru_cache(maxsize=None)
def _instances() -> tuple:
    data = _read("lemma_instances")
    out = []
    for e in data["instances"]:
        out.append(
            LemmaInstance(
                name=e["name"],
                braiding=BraidingMatrix.from_dict(e["braiding"]),
                relation=e["relation"],
                lower=e["lower"],
                expected_kind=e.get("expected_kind"),
                displayed=e.get("displayed"),
                displayed_vanishes_in_nichols=e.get("displayed_vanishes_in_nichols"),
                note=e.get("note", ""),
                expected=e.get("engine", {}),
            )
        )
    return tuple(out)


def lemma_instances() -> list:
    """All forced-relation instances: braiding, relation, lower relations and
    the contradiction kind stated for that case (None where none is stated)."""
    return list(_instances())


def load_entry(name: str):
    """A g(2,3) entry (``g23-a``, ``g23-b``) or a forced-relation instance by name."""
    name = ALIASES.get(name, name).split(":")[0]
    if name in ("g23-a", "g23-b"):
        return _load_g23(name)
    for inst in _instances():
        if inst.name == name:
            return inst
    raise CatalogError(f"unknown catalog entry {name!r}")


def resolve_presentation(spec: str) -> Presentation:
    """``entry:presentation``, an alias such as ``g23a-underline``, or a bare
    entry (its eminent presentation ``hat``; instances give the free algebra)."""
    spec = ALIASES.get(spec, spec)
    name, _, pname = spec.partition(":")
    entry = load_entry(name)
    if isinstance(entry, LemmaInstance):
        if pname not in ("", "free"):
            raise CatalogError(f"instance {name} has only the free presentation")
        return Presentation(entry.braiding, [], name=name)
    return entry.presentation(pname or "hat")
