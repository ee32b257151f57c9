"""Exact covering-genus lower bounds for cyclic covers of projective space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SmallE


@dataclass(frozen=True)
class CoverParams:
    m: int  # cover degree
    d: int  # weight of the covering coordinate
    n: int  # ambient dimension

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("cover degree m must be at least 2")
        if self.d < 1:
            raise ValueError("weight d must be at least 1")
        if self.n < 2:
            raise ValueError("ambient dimension n must be at least 2")

    @property
    def e(self) -> int:
        return (self.m - 1) * self.d - self.n - 1


def covgen_lower_bound(m: int, d: int, n: int):
    """(e, e/2 + 1) for the cyclic m-cover branched in degree m*d over P^n."""
    params = CoverParams(m, d, n)
    if params.e < 1:
        raise SmallE(f"e = (m-1)d - n - 1 = {params.e} < 1")
    return params.e, Fraction(params.e, 2) + 1


def covgen_from_min_degree(a: int) -> Fraction:
    """a/2 + 1 when every covering curve meets the canonical class >= a."""
    if a < 0:
        raise ValueError("the degree bound a must be nonnegative")
    return Fraction(a, 2) + 1
