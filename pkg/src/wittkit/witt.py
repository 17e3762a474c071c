"""Big Witt vectors over a truncation set.

Two models are kept side by side:

* the coordinate model ``WittVectorZ`` / ``WittVectorFp``, where ring
  operations go through ghost components and back;
* the decomposed model ``PTypicalDecomp``, a product of cyclic rings
  Z/p^u indexed by the integers prime to p that lie in S.

``eta_decompose`` / ``eta_recompose`` translate between them, and the
``decomposed_*`` functions act on the product side by the index rules
for restriction, Frobenius and Verschiebung.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .arith import as_prime, split_p
from .truncation import TruncationSet, divisors, p_typical, quotient_set, u_p_of


class NonIntegralGhost(ArithmeticError):
    """Ghost vector not in the image of the ghost map over Z."""


class TruncationMismatch(ValueError):
    pass


@lru_cache(maxsize=256)
def _divisor_table(S: TruncationSet) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    # for each n in S: (d, n // d, position of d) over the proper divisors d < n
    pos = {s: k for k, s in enumerate(S.members)}
    return tuple(
        tuple((d, n // d, pos[d]) for d in divisors(n)[:-1]) for n in S.members
    )


def _ghost(S: TruncationSet, a: tuple[int, ...]) -> tuple[int, ...]:
    table = _divisor_table(S)
    return tuple(
        n * a[k] + sum(d * a[kd] ** e for d, e, kd in table[k])
        for k, n in enumerate(S.members)
    )


def _unghost(S: TruncationSet, w: tuple[int, ...]) -> tuple[int, ...]:
    table = _divisor_table(S)
    a: list[int] = []
    for k, n in enumerate(S.members):
        rest = w[k] - sum(d * a[kd] ** e for d, e, kd in table[k])
        q, r = divmod(rest, n)
        if r:
            raise NonIntegralGhost(f"component {n}: {rest} is not divisible by {n}")
        a.append(q)
    return tuple(a)


@dataclass(frozen=True)
class GhostVector:
    S: TruncationSet
    values: tuple[int, ...]

    @property
    def ghost(self) -> dict[int, int]:
        return dict(zip(self.S.members, self.values))


@dataclass(frozen=True)
class WittVectorZ:
    """Element of W_S(Z) in Witt coordinates (a_s for s in S)."""

    S: TruncationSet
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.S):
            raise ValueError("need exactly one coordinate per element of S")

    @classmethod
    def from_coords(cls, S: TruncationSet, coords: Mapping[int, int]) -> "WittVectorZ":
        if set(coords) - set(S.members):
            raise ValueError("coordinates given outside S")
        return cls(S, tuple(int(coords.get(s, 0)) for s in S.members))

    @classmethod
    def zero(cls, S: TruncationSet) -> "WittVectorZ":
        return cls(S, (0,) * len(S))

    @classmethod
    def one(cls, S: TruncationSet) -> "WittVectorZ":
        return cls(S, tuple(1 if s == 1 else 0 for s in S.members))

    @classmethod
    def from_int(cls, S: TruncationSet, k: int) -> "WittVectorZ":
        """The image of the integer k (ghost components all equal to k)."""
        return unghost(GhostVector(S, (k,) * len(S)))

    @property
    def coords(self) -> dict[int, int]:
        return dict(zip(self.S.members, self.values))

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)


def ghost_of(x: WittVectorZ) -> GhostVector:
    return GhostVector(x.S, _ghost(x.S, x.values))


def unghost(w: GhostVector) -> WittVectorZ:
    return WittVectorZ(w.S, _unghost(w.S, w.values))


def _same_S(x, y):
    if x.S != y.S:
        raise TruncationMismatch(f"truncation sets differ: {x.S} vs {y.S}")


def add(x: WittVectorZ, y: WittVectorZ) -> WittVectorZ:
    _same_S(x, y)
    gx, gy = _ghost(x.S, x.values), _ghost(y.S, y.values)
    return WittVectorZ(x.S, _unghost(x.S, tuple(a + b for a, b in zip(gx, gy))))


def neg(x: WittVectorZ) -> WittVectorZ:
    gx = _ghost(x.S, x.values)
    return WittVectorZ(x.S, _unghost(x.S, tuple(-a for a in gx)))


def mul(x: WittVectorZ, y: WittVectorZ) -> WittVectorZ:
    _same_S(x, y)
    gx, gy = _ghost(x.S, x.values), _ghost(y.S, y.values)
    return WittVectorZ(x.S, _unghost(x.S, tuple(a * b for a, b in zip(gx, gy))))


def frobenius(x: WittVectorZ, s: int) -> WittVectorZ:
    """F_s : W_S -> W_{S/s}; on ghost components w'_t = w_{st}."""
    if s < 1:
        raise ValueError("s must be positive")
    T = quotient_set(x.S, s)
    g = x.S.members
    w = dict(zip(g, _ghost(x.S, x.values)))
    return WittVectorZ(T, _unghost(T, tuple(w[s * t] for t in T.members)))


def verschiebung(x: WittVectorZ, s: int, S: TruncationSet) -> WittVectorZ:
    """V_s : W_{S/s} -> W_S; on ghost components w'_t = s w_{t/s} if s | t else 0."""
    if s < 1:
        raise ValueError("s must be positive")
    if x.S != quotient_set(S, s):
        raise TruncationMismatch(f"V_{s} into {S} needs a vector over {quotient_set(S, s)}")
    w = dict(zip(x.S.members, _ghost(x.S, x.values)))
    g = tuple(s * w[t // s] if t % s == 0 else 0 for t in S.members)
    return WittVectorZ(S, _unghost(S, g))


def restrict(x: WittVectorZ, T: TruncationSet) -> WittVectorZ:
    if not T <= x.S:
        raise TruncationMismatch(f"{T} is not contained in {x.S}")
    c = x.coords
    return WittVectorZ(T, tuple(c[t] for t in T.members))


# --- W_S(F_p) -------------------------------------------------------------


@dataclass(frozen=True)
class WittVectorFp:
    """Element of W_S(F_p); coordinates are residues in {0, ..., p-1}."""

    p: int
    S: TruncationSet
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.S):
            raise ValueError("need exactly one coordinate per element of S")
        if any(not 0 <= a < self.p for a in self.values):
            object.__setattr__(self, "values", tuple(a % self.p for a in self.values))

    @classmethod
    def from_coords(cls, p: int, S: TruncationSet, coords: Mapping[int, int]) -> "WittVectorFp":
        if set(coords) - set(S.members):
            raise ValueError("coordinates given outside S")
        return cls(p, S, tuple(int(coords.get(s, 0)) % p for s in S.members))

    @classmethod
    def zero(cls, p, S):
        return cls(p, S, (0,) * len(S))

    @classmethod
    def one(cls, p, S):
        return cls(p, S, tuple(1 if s == 1 else 0 for s in S.members))

    @classmethod
    def from_int(cls, p, S, k):
        return reduce_mod_p(WittVectorZ.from_int(S, k), p)

    @property
    def coords(self) -> dict[int, int]:
        return dict(zip(self.S.members, self.values))

    def lift(self) -> WittVectorZ:
        return WittVectorZ(self.S, self.values)

    def __add__(self, other):
        return fp_add(self, other)

    def __mul__(self, other):
        return fp_mul(self, other)

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "S": list(self.S.members), "coords": {str(s): a for s, a in zip(self.S.members, self.values)}}
        )

    @classmethod
    def from_json(cls, text: str) -> "WittVectorFp":
        d = json.loads(text)
        S = TruncationSet(d["S"])
        return cls.from_coords(d["p"], S, {int(k): v for k, v in d["coords"].items()})


def reduce_mod_p(x: WittVectorZ, p: int) -> WittVectorFp:
    return WittVectorFp(p, x.S, tuple(a % p for a in x.values))


def _same_p(x, y):
    if x.p != y.p:
        raise ValueError("primes differ")


def fp_add(x: WittVectorFp, y: WittVectorFp) -> WittVectorFp:
    _same_p(x, y)
    return reduce_mod_p(add(x.lift(), y.lift()), x.p)


def fp_neg(x: WittVectorFp) -> WittVectorFp:
    return reduce_mod_p(neg(x.lift()), x.p)


def fp_mul(x: WittVectorFp, y: WittVectorFp) -> WittVectorFp:
    _same_p(x, y)
    return reduce_mod_p(mul(x.lift(), y.lift()), x.p)


def fp_frobenius(x: WittVectorFp, s: int) -> WittVectorFp:
    return reduce_mod_p(frobenius(x.lift(), s), x.p)


def fp_verschiebung(x: WittVectorFp, s: int, S: TruncationSet) -> WittVectorFp:
    return reduce_mod_p(verschiebung(x.lift(), s, S), x.p)


def fp_restrict(x: WittVectorFp, T: TruncationSet) -> WittVectorFp:
    return reduce_mod_p(restrict(x.lift(), T), x.p)


# --- W_u(F_p) = Z/p^u ------------------------------------------------------


@lru_cache(maxsize=None)
def _zmod_table(p: int, u: int) -> tuple[tuple[tuple[int, ...], ...], dict]:
    # k -> coordinates of k*1, and the inverse dictionary
    S = p_typical(p, u)
    forward = tuple(tuple(a % p for a in _unghost(S, (k,) * u)) for k in range(p**u))
    backward = {c: k for k, c in enumerate(forward)}
    if len(backward) != p**u:
        raise AssertionError("k*1 is not injective on Z/p^u")
    return forward, backward


def p_typical_as_zmod(x: WittVectorFp) -> int:
    """The residue k mod p^u with x = k * 1 in W_u(F_p).

    Only the normalisation 1 -> 1 is used; it is the unique ring
    isomorphism W_u(F_p) -> Z/p^u.
    """
    u = len(x.S)
    if not x.S.is_p_typical(x.p):
        raise ValueError(f"{x.S} is not of the form {{1, p, ..., p^(u-1)}}")
    return _zmod_table(x.p, u)[1][x.values]


def zmod_as_p_typical(value: int, p: int, u: int) -> WittVectorFp:
    if u == 0:
        return WittVectorFp(p, TruncationSet(), ())
    return WittVectorFp(p, p_typical(p, u), _zmod_table(p, u)[0][value % p**u])


# --- decomposed model --------------------------------------------------------


@dataclass(frozen=True)
class PTypicalDecomp:
    """Product of Z/p^u_j over j in S prime to p, u_j = u_p(S, j).

    ``components`` maps j to a residue in [0, p^u_j).
    """

    p: int
    S: TruncationSet
    components: Mapping[int, int]

    def __post_init__(self):
        mods = decomposition_moduli(self.p, self.S)
        if set(self.components) != set(mods):
            raise ValueError(f"components must be indexed by {sorted(mods)}")
        object.__setattr__(
            self, "components", {j: self.components[j] % self.p ** mods[j] for j in sorted(mods)}
        )

    @property
    def exponents(self) -> dict[int, int]:
        return decomposition_moduli(self.p, self.S)

    def to_json(self) -> str:
        ex = self.exponents
        return json.dumps(
            {
                "p": self.p,
                "components": [{"j": j, "u": ex[j], "value": v} for j, v in self.components.items()],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PTypicalDecomp":
        d = json.loads(text)
        p = d["p"]
        members = []
        comps = {}
        for c in d["components"]:
            members.extend(c["j"] * p**k for k in range(c["u"]))
            comps[c["j"]] = c["value"]
        S = TruncationSet(members)
        out = cls(p, S, comps)
        if out.exponents != {c["j"]: c["u"] for c in d["components"]}:
            raise ValueError("stated moduli are inconsistent with the index set")
        return out


@lru_cache(maxsize=512)
def _moduli(p: int, S: TruncationSet) -> tuple[tuple[int, int], ...]:
    return tuple((j, u_p_of(S, j, p)) for j in S.members if j % p)


def decomposition_moduli(p: int, S: TruncationSet) -> dict[int, int]:
    """j -> u_p(S, j) over the j in S prime to p."""
    return dict(_moduli(as_prime(p), S))


def eta_component(x: WittVectorFp, j: int) -> int:
    """Component at j: F_j, then restriction to {1, p, ..., p^(u-1)}."""
    u = u_p_of(x.S, j, x.p)
    if u == 0:
        return 0
    y = fp_restrict(fp_frobenius(x, j), p_typical(x.p, u))
    return p_typical_as_zmod(y)


def eta_decompose(x: WittVectorFp) -> PTypicalDecomp:
    mods = decomposition_moduli(x.p, x.S)
    return PTypicalDecomp(x.p, x.S, {j: eta_component(x, j) for j in mods})


def eta_recompose(d: PTypicalDecomp) -> WittVectorFp:
    """Inverse of eta_decompose.

    The p^k coordinate of F_j(x) equals j * a_{j p^k} plus a polynomial in
    coordinates indexed by proper divisors of j p^k, so the coordinates can
    be solved one at a time in increasing order.
    """
    p, S = d.p, d.S
    targets = {
        j: zmod_as_p_typical(v, p, d.exponents[j]).values for j, v in d.components.items()
    }
    coords = {s: 0 for s in S.members}
    for s in S.members:
        k, j = split_p(s, p)
        x = WittVectorFp.from_coords(p, S, coords)
        current = fp_restrict(fp_frobenius(x, j), p_typical(p, k + 1)).values[k]
        coords[s] = (targets[j][k] - current) * pow(j, -1, p) % p
    return WittVectorFp.from_coords(p, S, coords)


def _check_decomp_S(d: PTypicalDecomp, e: PTypicalDecomp):
    if d.p != e.p or d.S != e.S:
        raise TruncationMismatch("decompositions over different (p, S)")


def decomposed_add(d: PTypicalDecomp, e: PTypicalDecomp) -> PTypicalDecomp:
    _check_decomp_S(d, e)
    return PTypicalDecomp(d.p, d.S, {j: d.components[j] + e.components[j] for j in d.components})


def decomposed_mul(d: PTypicalDecomp, e: PTypicalDecomp) -> PTypicalDecomp:
    _check_decomp_S(d, e)
    return PTypicalDecomp(d.p, d.S, {j: d.components[j] * e.components[j] for j in d.components})


def decomposed_res(d: PTypicalDecomp, T: TruncationSet) -> PTypicalDecomp:
    """Factor j in T goes to factor j by R^(u - u'); the others are dropped."""
    if not T <= d.S:
        raise TruncationMismatch(f"{T} is not contained in {d.S}")
    mods = decomposition_moduli(d.p, T)
    return PTypicalDecomp(d.p, T, {j: d.components[j] % d.p ** mods[j] for j in mods})


def decomposed_F(d: PTypicalDecomp, s: int) -> PTypicalDecomp:
    """s = p^v s'. Factor j (with s' | j, p^v j in S) goes to j/s' by F^v."""
    v, s1 = split_p(s, d.p)
    T = quotient_set(d.S, s)
    mods = decomposition_moduli(d.p, T)
    return PTypicalDecomp(d.p, T, {j: d.components[j * s1] % d.p ** mods[j] for j in mods})


def decomposed_V(d: PTypicalDecomp, s: int, S: TruncationSet) -> PTypicalDecomp:
    """s = p^v s'. Factor j of S/s goes to factor s'j of S by s' V^v."""
    if d.S != quotient_set(S, s):
        raise TruncationMismatch(f"V_{s} into {S} needs a decomposition over {quotient_set(S, s)}")
    v, s1 = split_p(s, d.p)
    mods = decomposition_moduli(d.p, S)
    out = {j: 0 for j in mods}
    for j, val in d.components.items():
        out[s1 * j] = s1 * d.p**v * val
    return PTypicalDecomp(d.p, S, out)
