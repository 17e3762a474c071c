"""Finite abelian p-groups given as sums of cyclic factors Z/p^e, and
homomorphisms between them given by integer matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snf
from .arith import as_prime, vp


@dataclass(frozen=True)
class FinAbPGroup:
    """The group ⊕ Z/p^e over ``exponents``; ``labels`` optionally tag
    each factor (by the index j it came from)."""

    p: int
    exponents: tuple[int, ...] = ()
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        as_prime(self.p)
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 1 for e in self.exponents):
            raise ValueError("cyclic exponents must be >= 1")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.exponents):
                raise ValueError("one label per factor")

    @classmethod
    def trivial(cls, p):
        return cls(p, (), ())

    @classmethod
    def from_orders(cls, p, orders) -> "FinAbPGroup":
        """From cyclic orders (powers of p; 1s are dropped)."""
        exps = []
        for d in orders:
            d = abs(d)
            if d == 0:
                raise ValueError("infinite cyclic factor in a finite group")
            if d == 1:
                continue
            e = vp(d, p)
            if p**e != d:
                raise ValueError(f"{d} is not a power of {p}")
            exps.append(e)
        return cls(p, tuple(sorted(exps, reverse=True)))

    @property
    def length(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.p**self.length

    @property
    def moduli(self) -> list[int]:
        return [self.p**e for e in self.exponents]

    def is_trivial(self) -> bool:
        return not self.exponents

    def invariants(self) -> tuple[int, ...]:
        """Exponent multiset, largest first; the isomorphism type."""
        return tuple(sorted(self.exponents, reverse=True))

    def isomorphic(self, other: "FinAbPGroup") -> bool:
        return self.p == other.p and self.invariants() == other.invariants()

    def __len__(self):
        return len(self.exponents)

    def __str__(self):
        if not self.exponents:
            return "0"
        return " ⊕ ".join(f"Z/{int(self.p)}^{e}" if e > 1 else f"Z/{int(self.p)}" for e in self.invariants())

    def to_dict(self) -> dict:
        d = {"p": self.p, "exponents": list(self.invariants()), "length": self.length}
        if self.labels is not None:
            d["factors"] = [{"j": j, "e": e} for j, e in zip(self.labels, self.exponents)]
        return d


def _lattice_quotient(B: snf.Matrix, diag_moduli: list[int], p: int) -> FinAbPGroup:
    # L / (moduli) Z^k where L is spanned by the columns of B and contains the moduli lattice
    k = len(diag_moduli)
    if k == 0:
        return FinAbPGroup.trivial(p)
    basis = snf.column_basis(B, k)
    r = len(basis[0]) if basis and basis[0] else 0
    if r != k:
        raise ValueError("lattice does not have full rank")
    C = []
    for c, mod in enumerate(diag_moduli):
        e = [0] * k
        e[c] = mod
        x = snf.solve_integer(basis, e, k)
        if x is None:
            raise ValueError("lattice does not contain the relation lattice")
        C.append(x)
    C = snf.transpose(C)
    free, torsion = snf.cokernel_invariants(C, k, k)
    assert free == 0
    return FinAbPGroup.from_orders(p, torsion)


@dataclass(frozen=True)
class PGroupHom:
    """Homomorphism src -> tgt; ``matrix[r][c]`` is the image of the c-th
    source generator in the r-th target factor."""

    src: FinAbPGroup
    tgt: FinAbPGroup
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.src.p != self.tgt.p:
            raise ValueError("primes differ")
        rows = len(self.tgt)
        M = [list(r) for r in self.matrix] if self.matrix else [[0] * len(self.src) for _ in range(rows)]
        if len(M) != rows or any(len(r) != len(self.src) for r in M):
            raise ValueError("matrix shape does not match the groups")
        mods = self.tgt.moduli
        M = tuple(tuple(x % mods[r] for x in row) for r, row in enumerate(M))
        object.__setattr__(self, "matrix", M)
        for c, a in enumerate(self.src.moduli):
            for r, b in enumerate(mods):
                if (a * M[r][c]) % b:
                    raise ValueError(f"not well defined: generator {c} of order {a} hits factor {r} of order {b}")

    @property
    def p(self):
        return self.src.p

    def compose(self, inner: "PGroupHom") -> "PGroupHom":
        """self ∘ inner."""
        if not (inner.tgt.exponents == self.src.exponents and inner.tgt.labels == self.src.labels):
            raise ValueError("composition through different groups")
        M = snf.matmul(
            [list(r) for r in self.matrix],
            [list(r) for r in inner.matrix],
            inner=len(self.src),
            ncols=len(inner.src),
        )
        return PGroupHom(inner.src, self.tgt, tuple(map(tuple, M)))

    def __eq__(self, other):
        if not isinstance(other, PGroupHom):
            return NotImplemented
        return (
            self.src == other.src and self.tgt == other.tgt and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.src, self.tgt, self.matrix))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def _relations(self) -> snf.Matrix:
        b = len(self.tgt)
        D = snf.zeros(b, b)
        for r, mod in enumerate(self.tgt.moduli):
            D[r][r] = mod
        return D

    def image_lattice(self) -> snf.Matrix:
        """Columns spanning the preimage in Z^b of the image (contains the relations)."""
        b = len(self.tgt)
        return snf.hstack([list(r) for r in self.matrix], self._relations(), nrows=b)

    def image(self) -> FinAbPGroup:
        return _lattice_quotient(self.image_lattice(), self.tgt.moduli, self.p)

    def cokernel(self) -> FinAbPGroup:
        b = len(self.tgt)
        if b == 0:
            return FinAbPGroup.trivial(self.p)
        free, torsion = snf.cokernel_invariants(self.image_lattice(), b, len(self.src) + b)
        assert free == 0
        return FinAbPGroup.from_orders(self.p, torsion)

    def kernel(self) -> FinAbPGroup:
        a, b = len(self.src), len(self.tgt)
        if a == 0:
            return FinAbPGroup.trivial(self.p)
        if b == 0:
            return FinAbPGroup(self.p, self.src.invariants())
        # x with M x in the relation lattice of the target
        D = self._relations()
        big = snf.hstack([list(r) for r in self.matrix], [[-x for x in row] for row in D], nrows=b)
        K = snf.integer_kernel(big, a + b)
        gens = K[:a]
        return _lattice_quotient(gens, self.src.moduli, self.p)


def subgroup_from_lattice(G: FinAbPGroup, L: snf.Matrix) -> FinAbPGroup:
    return _lattice_quotient(L, G.moduli, G.p)


def intersect_lattices(L1: snf.Matrix, L2: snf.Matrix, k: int) -> snf.Matrix:
    return snf.lattice_intersection(snf.column_basis(L1, k), snf.column_basis(L2, k), k)
