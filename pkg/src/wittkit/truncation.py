"""Truncation sets: finite sets of positive integers closed under divisors."""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable

from .arith import _check_coprime, as_prime


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class TruncationSet:
    """Immutable, sorted, division-stable set of positive integers.

    Construction rejects sets that are not closed under divisors; use
    :meth:`closure` to complete an arbitrary set.
    """

    __slots__ = ("_members", "_set")

    def __init__(self, members: Iterable[int] = ()):
        ms = sorted(set(int(s) for s in members))
        if ms and ms[0] < 1:
            raise ValueError("truncation sets contain positive integers only")
        present = set(ms)
        for s in ms:
            for d in divisors(s):
                if d not in present:
                    raise ValueError(f"{d} divides {s} but is missing; not division-stable")
        self._members = tuple(ms)
        self._set = frozenset(ms)

    @classmethod
    def closure(cls, members: Iterable[int]) -> "TruncationSet":
        out = set()
        for s in members:
            out.update(divisors(int(s)))
        return cls(out)

    @property
    def members(self) -> tuple[int, ...]:
        return self._members

    def __contains__(self, s) -> bool:
        k = bisect_left(self._members, s)
        return k < len(self._members) and self._members[k] == s

    def __iter__(self):
        return iter(self._members)

    def __len__(self):
        return len(self._members)

    def __eq__(self, other):
        if isinstance(other, TruncationSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __le__(self, other: "TruncationSet") -> bool:
        return self._set <= other._set

    def __or__(self, other: "TruncationSet") -> "TruncationSet":
        return TruncationSet(self._set | other._set)

    def __repr__(self):
        return f"TruncationSet({list(self._members)})"

    def __str__(self):
        return "{" + ",".join(map(str, self._members)) + "}"

    def is_p_typical(self, p: int) -> bool:
        """True when the set is {1, p, ..., p^(u-1)} for some u >= 0."""
        return self._members == tuple(p**k for k in range(len(self)))


def segment(r: int) -> TruncationSet:
    """{1, ..., r}; empty for r = 0."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return TruncationSet(range(1, r + 1))


def divisor_set(r: int) -> TruncationSet:
    if r < 1:
        raise ValueError("r must be positive")
    return TruncationSet(divisors(r))


def p_typical(p: int, u: int) -> TruncationSet:
    """{1, p, ..., p^(u-1)}."""
    return TruncationSet(p**k for k in range(u))


def quotient_set(S: TruncationSet, s: int) -> TruncationSet:
    """S/s = {t : st in S}."""
    if s < 1:
        raise ValueError("s must be positive")
    return TruncationSet(t // s for t in S if t % s == 0)


def u_p_of(S: TruncationSet, j: int, p: int) -> int:
    """card(S intersected with {j, pj, p^2 j, ...})."""
    p = as_prime(p)
    _check_coprime(j, p)
    u = 0
    t = j
    while t in S:
        u += 1
        t *= p
    return u
