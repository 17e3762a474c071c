"""The weight-i part of the cyclic bar construction of Π_m = {0, 1, x, …, x^{m-1}}.

A k-simplex is a tuple (i_0, …, i_k) of exponents with sum i.  Face d_t
for t < k multiplies entries t and t+1; d_k multiplies the last entry into
the first.  Products x^a x^b with a+b >= m hit the basepoint, which is zero
in reduced chains.  The normalized complex keeps tuples whose entries after
position 0 are all >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snf

BarTuple = tuple[int, ...]
BASIS_GUARD = 200_000


def _compositions(total: int, parts: int, lo: int, hi: int):
    # ordered tuples of `parts` entries in [lo, hi] summing to total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, min(hi, total) + 1):
        for rest in _compositions(total - first, parts - 1, lo, hi):
            yield (first,) + rest


def basis(m: int, i: int, k: int) -> list[BarTuple]:
    out = []
    for i0 in range(0, min(m - 1, i) + 1):
        for rest in _compositions(i - i0, k, 1, m - 1):
            out.append((i0,) + rest)
    return out


def face(t: int, x: BarTuple, m: int) -> BarTuple | None:
    """d_t x, or None for the basepoint."""
    k = len(x) - 1
    if t < k:
        s = x[t] + x[t + 1]
        if s >= m:
            return None
        return x[:t] + (s,) + x[t + 2 :]
    s = x[k] + x[0]
    if s >= m:
        return None
    return (s,) + x[1:k]


@dataclass
class ChainComplex:
    """bases[k] is the ordered basis of C_k; boundaries[k] is ∂_k : C_k -> C_{k-1}
    as a len(bases[k-1]) x len(bases[k]) matrix (boundaries[0] is empty)."""

    m: int
    i: int
    bases: list[list[BarTuple]]
    boundaries: list[snf.Matrix] = field(repr=False)

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k <= self.top else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(b) for k, b in enumerate(self.bases))

    def boundary(self, k: int) -> snf.Matrix:
        if 1 <= k <= self.top:
            return self.boundaries[k]
        return snf.zeros(self.rank(k - 1), self.rank(k))


def build_complex(m: int, i: int) -> ChainComplex:
    if m < 2 or i < 1:
        raise ValueError("need m >= 2 and i >= 1")
    bases = [basis(m, i, k) for k in range(i + 1)]
    while bases and not bases[-1]:
        bases.pop()
    if sum(map(len, bases)) > BASIS_GUARD:
        raise ValueError("complex too large")
    index = [{x: r for r, x in enumerate(b)} for b in bases]
    boundaries: list[snf.Matrix] = [[]]
    for k in range(1, len(bases)):
        D = snf.zeros(len(bases[k - 1]), len(bases[k]))
        for c, x in enumerate(bases[k]):
            for t in range(k + 1):
                y = face(t, x, m)
                if y is None:
                    continue
                # faces of normalized tuples stay normalized
                D[index[k - 1][y]][c] += (-1) ** t
        boundaries.append(D)
    cx = ChainComplex(m, i, bases, boundaries)
    for k in range(2, len(bases)):
        prod = snf.matmul(boundaries[k - 1], boundaries[k], inner=len(bases[k - 1]), ncols=len(bases[k]))
        if any(v for row in prod for v in row):
            raise AssertionError(f"boundary squares to nonzero in degree {k}")
    return cx


@dataclass(frozen=True)
class HomologyResult:
    """groups[k] = (free rank, torsion orders) of H_k; trailing zero degrees dropped."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def from_dict(cls, d: dict[int, tuple[int, tuple[int, ...]]]) -> "HomologyResult":
        top = max((k for k, (r, t) in d.items() if r or t), default=-1)
        return cls(tuple(d.get(k, (0, ())) for k in range(top + 1)))

    def rank(self, k: int) -> int:
        return self.groups[k][0] if k < len(self.groups) else 0

    def torsion(self, k: int) -> tuple[int, ...]:
        return self.groups[k][1] if k < len(self.groups) else ()

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, (r, _) in enumerate(self.groups))

    def to_list(self) -> list[dict]:
        return [
            {"deg": k, "rank": r, "torsion": list(t)} for k, (r, t) in enumerate(self.groups) if r or t
        ]

    def __str__(self):
        parts = []
        for d in self.to_list():
            terms = ["Z"] * d["rank"] + [f"Z/{t}" for t in d["torsion"]]
            parts.append(f"H{d['deg']}={' ⊕ '.join(terms)}")
        return ", ".join(parts) or "0"


@dataclass
class _DegreeData:
    """Cycles Z_k modulo boundaries B_k in a Smith-adapted basis.

    ``cycles`` is a basis of Z_k (columns, in C_k coordinates).  In the
    cycle coordinates B_k is spanned by diag * (first columns of Uinv);
    ``to_adapted`` maps cycle coordinates to coordinates along those
    columns, where entry r is read modulo ``diag[r]`` (0 = free).
    """

    cycles: snf.Matrix
    ncycles: int
    to_adapted: snf.Matrix
    moduli: list[int]
    from_adapted: snf.Matrix = field(default_factory=list)


def _degree_data(cx: ChainComplex, k: int) -> _DegreeData:
    nk = cx.rank(k)
    dk = cx.boundary(k)
    if nk == 0:
        return _DegreeData([], 0, [], [], [])
    Z = snf.integer_kernel(dk, nk) if cx.rank(k - 1) else snf.identity(nk)
    z = len(Z[0]) if Z and Z[0] else 0
    if z == 0:
        return _DegreeData(Z, 0, [], [], [])
    B = cx.boundary(k + 1)
    nb = cx.rank(k + 1)
    # express the boundary images in cycle coordinates
    coords = []
    for c in range(nb):
        col = [B[r][c] for r in range(nk)]
        sol = snf.solve_integer(Z, col, z)
        if sol is None:
            raise AssertionError("a boundary is not a cycle")
        coords.append(sol)
    Bz = snf.transpose(coords) if coords else snf.zeros(z, 0)
    sf = snf.smith_normal_form(Bz, z, nb)
    diag = sf.diagonal + [0] * (z - len(sf.diagonal))
    return _DegreeData(Z, z, sf.U, diag, sf.Uinv)


def homology(cx: ChainComplex) -> HomologyResult:
    out = {}
    for k in range(cx.top + 1):
        dd = _degree_data(cx, k)
        free = sum(1 for d in dd.moduli if d == 0)
        tors = tuple(d for d in dd.moduli if d > 1)
        out[k] = (free, tors)
    res = HomologyResult.from_dict(out)
    if res.euler_characteristic() != cx.euler_characteristic():
        raise AssertionError("Euler characteristics of chains and homology differ")
    return res


def predicted_homology(m: int, i: int) -> HomologyResult:
    """Z in degrees 2d and 2d+1 when m does not divide i, else Z/m in degree
    2d+1, where d = floor((i-1)/m)."""
    if m < 2 or i < 1:
        raise ValueError("need m >= 2 and i >= 1")
    d = (i - 1) // m
    if i % m:
        return HomologyResult.from_dict({2 * d: (1, ()), 2 * d + 1: (1, ())})
    return HomologyResult.from_dict({2 * d + 1: (0, (m,))})


# --- induced maps ---------------------------------------------------------------


@dataclass
class InducedMap:
    """Chain map C(m,i) -> C(n,i) and its effect on homology.

    ``homology_matrices[k]`` sends the adapted generators of H_k of the
    source (only those with modulus != 1) to those of the target; entries
    in a torsion row are reduced modulo that row's order.
    """

    m: int
    n: int
    i: int
    chain: list[snf.Matrix]
    homology_matrices: dict[int, snf.Matrix]
    source_moduli: dict[int, list[int]]
    target_moduli: dict[int, list[int]]


def _chain_map(src: ChainComplex, tgt: ChainComplex, n: int) -> list[snf.Matrix]:
    out = []
    for k in range(src.top + 1):
        F = snf.zeros(tgt.rank(k), src.rank(k))
        if tgt.rank(k):
            index = {x: r for r, x in enumerate(tgt.bases[k])}
            for c, x in enumerate(src.bases[k]):
                if max(x) < n:
                    F[index[x]][c] = 1
        out.append(F)
    return out


def _kept(dd: _DegreeData) -> list[int]:
    return [r for r, d in enumerate(dd.moduli) if d != 1]


def induced_map(m: int, n: int, i: int) -> InducedMap:
    if not m > n >= 2:
        raise ValueError("need m > n >= 2")
    src, tgt = build_complex(m, i), build_complex(n, i)
    chain = _chain_map(src, tgt, n)
    for k in range(1, src.top + 1):
        left = snf.matmul(tgt.boundary(k), chain[k], inner=tgt.rank(k), ncols=src.rank(k))
        right = snf.matmul(chain[k - 1], src.boundary(k), inner=src.rank(k - 1), ncols=src.rank(k))
        if left != right:
            raise AssertionError(f"not a chain map in degree {k}")
    mats, smod, tmod = {}, {}, {}
    for k in range(src.top + 1):
        sd, td = _degree_data(src, k), _degree_data(tgt, k)
        skeep, tkeep = _kept(sd), _kept(td)
        smod[k] = [sd.moduli[r] for r in skeep]
        tmod[k] = [td.moduli[r] for r in tkeep]
        M = snf.zeros(len(tkeep), len(skeep))
        if skeep and tkeep:
            # source generator r of H_k is the cycle Z * Uinv[:, r]
            for c, r in enumerate(skeep):
                zc = [sd.from_adapted[a][r] for a in range(sd.ncycles)]
                chain_vec = snf.matvec(sd.cycles, zc)
                image = snf.matvec(chain[k], chain_vec)
                tz = snf.solve_integer(td.cycles, image, td.ncycles)
                if tz is None:
                    raise AssertionError("image of a cycle is not a cycle")
                adapted = snf.matvec(td.to_adapted, tz)
                for rr, t in enumerate(tkeep):
                    mod = td.moduli[t]
                    M[rr][c] = adapted[t] % mod if mod else adapted[t]
        mats[k] = M
    return InducedMap(m, n, i, chain, mats, smod, tmod)


def compose_homology(outer: InducedMap, inner: InducedMap, k: int) -> snf.Matrix:
    """outer ∘ inner on H_k, reduced modulo the target orders."""
    A, B = outer.homology_matrices.get(k, []), inner.homology_matrices.get(k, [])
    rows = len(outer.target_moduli.get(k, []))
    cols = len(inner.source_moduli.get(k, []))
    mid = len(inner.target_moduli.get(k, []))
    if not rows:
        return []
    M = snf.matmul(A, B, inner=mid, ncols=cols)
    return [[x % mod if mod else x for x in row] for row, mod in zip(M, outer.target_moduli[k])]


def bar_record(m: int, i: int) -> dict:
    h = homology(build_complex(m, i))
    pred = predicted_homology(m, i)
    return {"m": m, "i": i, "homology": h.to_list(), "predicted": pred.to_list(), "match": h == pred}
