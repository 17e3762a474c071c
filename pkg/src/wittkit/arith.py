"""Elementary integer functions: p-adic valuations and the counting
functions that govern lengths of Witt-vector factors.

All arguments are plain Python ints, so nothing overflows.
"""

from __future__ import annotations

from math import isqrt


class PrimeP(int):
    """A prime, checked by trial division on construction.

    Subclasses ``int`` so it can be used anywhere an integer is expected.
    """

    def __new__(cls, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not a prime")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"PrimeP({int(self)})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def as_prime(p) -> PrimeP:
    return p if isinstance(p, PrimeP) else PrimeP(p)


def vp(x: int, p: int) -> int:
    """Largest k with p**k dividing x."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    p = as_prime(p)
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def split_p(x: int, p: int) -> tuple[int, int]:
    """Write x = p**v * x' with p not dividing x'; return (v, x')."""
    v = vp(x, p)
    return v, x // p**v


def _check_coprime(j: int, p: int) -> None:
    if j < 1 or j % p == 0:
        raise ValueError(f"index j={j} must be a positive integer prime to p={p}")


def s_p(p: int, m: int, i: int, j: int) -> int:
    """Number of terms j, pj, p^2 j, ... that are at most m(i+1).

    Equivalently the unique s with p^(s-1) j <= m(i+1) < p^s j, or 0 when
    j > m(i+1).
    """
    p = as_prime(p)
    if m < 1 or i < 0:
        raise ValueError("need m >= 1 and i >= 0")
    _check_coprime(j, p)
    bound = m * (i + 1)
    s = 0
    t = j
    while t <= bound:
        s += 1
        t *= p
    return s


def d_p(p: int, m: int, u: int, j: int) -> int:
    """floor((p^(u-1) j - 1) / m)."""
    p = as_prime(p)
    if m < 1 or u < 1 or j < 1:
        raise ValueError("need m, u, j >= 1")
    return (p ** (u - 1) * j - 1) // m


def r_p(p: int, a: int, u: int, i: int) -> int:
    """Length of the cyclic Witt-vector module attached to (a, u, i).

    u when a <= i; u - s when floor(a/p^s) <= i < floor(a/p^(s-1)) for
    some 1 <= s < u; 0 when i < floor(a/p^(u-1)).
    """
    p = as_prime(p)
    if a < 1 or u < 1 or i < 0:
        raise ValueError("need a, u >= 1 and i >= 0")
    if a <= i:
        return u
    for s in range(1, u):
        if a // p**s <= i < a // p ** (s - 1):
            return u - s
    # remaining case: i < floor(a / p^(u-1))
    assert i < a // p ** (u - 1)
    return 0


def u_prime(p: int, m: int, i: int) -> int:
    """The unique u with p^(u-1) <= m(i+1) < p^u."""
    p = as_prime(p)
    if m < 1 or i < 0:
        raise ValueError("need m >= 1 and i >= 0")
    bound = m * (i + 1)
    u = 1
    while p**u <= bound:
        u += 1
    return u


def v_cap(u: int, a: int, p: int) -> int:
    """min(u, vp(a) + 1)."""
    if u < 1 or a < 1:
        raise ValueError("need u, a >= 1")
    return min(u, vp(a, p) + 1)


def prime_to_p(p: int, upto: int) -> list[int]:
    """Positive integers <= upto not divisible by p, ascending."""
    return [j for j in range(1, upto + 1) if j % p]
