"""Truncated multigraded Hilbert series and PBW-type product forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

__all__ = [
    "HilbertData",
    "ProductForm",
    "BasisSpec",
    "degrees_up_to",
    "expand_product_form",
    "gk_of_product_form",
    "count_basis_monomials",
    "multiply_series",
]

Degree = tuple


def degrees_up_to(rank: int, D: int) -> Iterator[Degree]:
    """All multidegrees of the given rank with total degree <= D, by total degree."""
    for total in range(D + 1):
        yield from _compositions(rank, total)


def _compositions(rank: int, total: int) -> Iterator[Degree]:
    if rank == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(rank - 1, total - first):
            yield (first,) + rest


@dataclass
class HilbertData:
    """Dimensions for every multidegree of total degree <= truncation."""

    rank: int
    truncation: int
    table: dict = field(default_factory=dict)

    def __getitem__(self, degree: Sequence[int]) -> int:
        degree = tuple(degree)
        if sum(degree) > self.truncation:
            raise KeyError(f"{degree} is beyond truncation {self.truncation}")
        return self.table.get(degree, 0)

    def items(self) -> Iterator[tuple[Degree, int]]:
        for d in degrees_up_to(self.rank, self.truncation):
            yield d, self.table.get(d, 0)

    def nonzero(self) -> dict:
        return {d: v for d, v in self.items() if v}

    def truncate(self, D: int) -> "HilbertData":
        D = min(D, self.truncation)
        return HilbertData(self.rank, D, {d: v for d, v in self.table.items() if sum(d) <= D and v})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HilbertData):
            return NotImplemented
        D = min(self.truncation, other.truncation)
        return self.rank == other.rank and self.truncate(D).nonzero() == other.truncate(D).nonzero()

    def differences(self, other: "HilbertData") -> list[tuple[Degree, int, int]]:
        D = min(self.truncation, other.truncation)
        return [(d, v, other.table.get(d, 0)) for d, v in self.truncate(D).items() if v != other.table.get(d, 0)]

    def by_total_degree(self) -> list[int]:
        out = [0] * (self.truncation + 1)
        for d, v in self.table.items():
            if sum(d) <= self.truncation:
                out[sum(d)] += v
        return out


def multiply_series(a: HilbertData, b: HilbertData) -> HilbertData:
    """Coefficientwise product of two truncated series."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    D = min(a.truncation, b.truncation)
    out: dict = {}
    for da, va in a.table.items():
        if not va or sum(da) > D:
            continue
        for db, vb in b.table.items():
            if vb and sum(da) + sum(db) <= D:
                k = tuple(x + y for x, y in zip(da, db))
                out[k] = out.get(k, 0) + va * vb
    return HilbertData(a.rank, D, out)


@dataclass(frozen=True)
class ProductForm:
    """prod (1 + t^b) over numerator degrees, times prod 1/(1 - t^b) over denominator
    degrees, times prod (1 - t^(N b))/(1 - t^b) over (b, N) in heights."""

    rank: int
    numerator_degrees: tuple = ()
    denominator_degrees: tuple = ()
    heights: tuple = ()

    def factors(self) -> list[tuple[Degree, int | None]]:
        out = [(tuple(d), 2) for d in self.numerator_degrees]
        out += [(tuple(d), None) for d in self.denominator_degrees]
        out += [(tuple(d), int(n)) for d, n in self.heights]
        return out


def _factor_series(rank: int, degree: Degree, height: int | None, D: int) -> HilbertData:
    # 1 + t^b + ... + t^((h-1) b), or the full geometric series when h is None
    table = {}
    k = 0
    while (height is None or k < height) and k * sum(degree) <= D:
        table[tuple(k * x for x in degree)] = 1
        k += 1
        if not any(degree):
            raise ValueError("a PBW generator cannot have degree zero")
    return HilbertData(rank, D, table)


def expand_product_form(f: ProductForm, D: int) -> HilbertData:
    out = HilbertData(f.rank, D, {(0,) * f.rank: 1})
    for degree, height in f.factors():
        out = multiply_series(out, _factor_series(f.rank, degree, height, D))
    return out


def gk_of_product_form(f: ProductForm) -> int:
    """Number of PBW generators of infinite height."""
    return len(f.denominator_degrees)


@dataclass(frozen=True)
class BasisSpec:
    """Ordered PBW generators: (name, degree, height); height None is unbounded."""

    rank: int
    generators: tuple

    def product_form(self) -> ProductForm:
        num = tuple(tuple(d) for _, d, h in self.generators if h == 2)
        den = tuple(tuple(d) for _, d, h in self.generators if h is None)
        other = tuple((tuple(d), h) for _, d, h in self.generators if h not in (2, None))
        return ProductForm(self.rank, num, den, other)


def count_basis_monomials(b: BasisSpec, D: int) -> HilbertData:
    """Count ordered monomials g_1^n_1 ... g_k^n_k by multidegree, total degree <= D."""
    table: dict = {}
    gens = [(tuple(d), h) for _, d, h in b.generators]

    def walk(idx: int, deg: list[int], total: int) -> None:
        if idx == len(gens):
            key = tuple(deg)
            table[key] = table.get(key, 0) + 1
            return
        d, h = gens[idx]
        step = sum(d)
        n = 0
        while (h is None or n < h) and total + n * step <= D:
            walk(idx + 1, [x + n * y for x, y in zip(deg, d)], total + n * step)
            n += 1

    walk(0, [0] * b.rank, 0)
    return HilbertData(b.rank, D, table)
