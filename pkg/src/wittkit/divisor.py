"""Divisors on W(F_p), recorded as order vectors over the integers prime to p.

Only divisors are represented; the elements of the total quotient ring
they come from never are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .arith import as_prime, prime_to_p, s_p
from .truncation import segment, u_p_of


@dataclass(frozen=True)
class Divisor:
    p: int
    orders: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        p = as_prime(self.p)
        clean = {}
        for j, k in sorted(self.orders.items()):
            if j < 1 or j % p == 0:
                raise ValueError(f"divisor index {j} is not a positive integer prime to {p}")
            if k:
                clean[int(j)] = int(k)
        object.__setattr__(self, "orders", clean)

    def ord(self, j: int) -> int:
        return self.orders.get(j, 0)

    @property
    def support(self) -> list[int]:
        return sorted(self.orders)

    def is_effective(self) -> bool:
        return all(k >= 0 for k in self.orders.values())

    def degree(self) -> int:
        return sum(self.orders.values())

    def _check(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        if self.p != other.p:
            raise ValueError("divisors for different primes")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        keys = set(self.orders) | set(other.orders)
        return Divisor(self.p, {j: self.ord(j) + other.ord(j) for j in keys})

    def __neg__(self) -> "Divisor":
        return Divisor(self.p, {j: -k for j, k in self.orders.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __ge__(self, other: "Divisor") -> bool:
        return geq(self, other)

    def __le__(self, other: "Divisor") -> bool:
        return geq(other, self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"p": self.p, "orders": {str(j): k for j, k in self.orders.items()}}

    @classmethod
    def from_json(cls, text: str) -> "Divisor":
        d = json.loads(text)
        return cls(d["p"], {int(j): k for j, k in d["orders"].items()})


def div_witt(r: int, p: int) -> Divisor:
    """Divisor of W_r(F_p): order u_p({1..r}, j) at each j prime to p."""
    if r < 1:
        raise ValueError("r must be positive")
    S = segment(r)
    return Divisor(p, {j: u_p_of(S, j, p) for j in prime_to_p(p, r)})


def alpha_order(p: int, m: int, n: int, i: int, j: int) -> int:
    """Sum over 0 <= h < i of s_p(m,h,j) - s_p(n,h,j)."""
    return sum(s_p(p, m, h, j) - s_p(p, n, h, j) for h in range(i))


def alpha_divisor(p: int, m: int, n: int, i: int) -> Divisor:
    """Sum over 0 <= h < i of div W_{m(h+1)}(F_p) - div W_{n(h+1)}(F_p)."""
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    if i < 0:
        raise ValueError("need i >= 0")
    total = Divisor(p)
    for h in range(i):
        total = total + div_witt(m * (h + 1), p) - div_witt(n * (h + 1), p)
    if not total.is_effective():
        raise AssertionError("alpha divisor came out non-effective")
    return total


def geq(D1: Divisor, D2: Divisor) -> bool:
    if D1.p != D2.p:
        raise ValueError("divisors for different primes")
    keys = set(D1.orders) | set(D2.orders)
    return all(D1.ord(j) >= D2.ord(j) for j in keys)


def kills_module(p: int, m: int, n: int, i: int) -> bool:
    """div(alpha_p(m,n,i)) >= div W_{n(i+1)}(F_p)."""
    return geq(alpha_divisor(p, m, n, i), div_witt(n * (i + 1), p))


def kills_factor(p: int, m: int, n: int, i: int, j: int) -> bool:
    """The j-th coordinate of the kills_module comparison."""
    return alpha_order(p, m, n, i, j) >= s_p(p, n, i, j)
