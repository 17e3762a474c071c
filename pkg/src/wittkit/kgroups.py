"""Relative K-groups of F_p[x]/(x^m) and the maps between truncations.

K_{2i+1}(F_p[x]/(x^m), (x)) is the cokernel of

    m'V^v : ⊕_j Z/p^{t_j}  ->  ⊕_j Z/p^{A_j},      m = p^v m',

with A_j = s_p(m,i,j) and t_j = s_p(1,i,j/m') placed at j ∈ m'I_p; even
and non-positive degrees vanish.  The projection to F_p[x]/(x^n) acts on
the j-th factor by reduction followed by multiplication by p^{w_j}, where
w_j is the j-th order of the alpha divisor.  Units are fixed to 1, so
only zero-ness, lengths and isomorphism types are meaningful outputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .arith import as_prime, d_p, prime_to_p, r_p, s_p, split_p, u_prime, v_cap, vp
from .divisor import alpha_order, kills_factor
from .groups import FinAbPGroup, PGroupHom, intersect_lattices, subgroup_from_lattice

SEARCH_LIMIT = 10_000


class StabilizationError(ValueError):
    pass


class EnumerationGuard(ValueError):
    pass


def _odd_degree(q: int) -> int | None:
    """i with q = 2i+1, or None when the groups vanish."""
    if q <= 0 or q % 2 == 0:
        return None
    return (q - 1) // 2


# --- the groups -----------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Source, target and map m'V^v whose cokernel is K_{2i+1}."""

    p: int
    m: int
    i: int
    source: FinAbPGroup
    target: FinAbPGroup
    V: PGroupHom


def presentation(p: int, m: int, i: int) -> Presentation:
    p = as_prime(p)
    if m < 1 or i < 0:
        raise ValueError("need m >= 1 and i >= 0")
    v, m1 = split_p(m, p)
    js = prime_to_p(p, m * (i + 1))
    tgt_e = {j: s_p(p, m, i, j) for j in js}
    src = [(j1, s_p(p, 1, i, j1)) for j1 in prime_to_p(p, i + 1)]
    src = [(j1, t) for j1, t in src if t > 0]
    source = FinAbPGroup(p, [t for _, t in src], [m1 * j1 for j1, _ in src])
    target = FinAbPGroup(p, [tgt_e[j] for j in js], js)
    row = {j: r for r, j in enumerate(js)}
    M = [[0] * len(src) for _ in js]
    for c, (j1, t) in enumerate(src):
        M[row[m1 * j1]][c] = m1 * p**v
    return Presentation(p, m, i, source, target, PGroupHom(source, target, tuple(map(tuple, M))))


def _cyclic_cokernel_exponent(A: int, c: int, p: int) -> int:
    """Exponent of Z/p^A modulo the subgroup generated by c."""
    if c % p**A == 0:
        return A
    return min(A, vp(c, p))


def relative_k(p: int, m: int, q: int) -> FinAbPGroup:
    """K_q(F_p[x]/(x^m), (x)) as a labelled sum of cyclic p-groups."""
    p = as_prime(p)
    if m < 1:
        raise ValueError("m must be >= 1")
    i = _odd_degree(q)
    if i is None:
        return FinAbPGroup.trivial(p)
    pres = presentation(p, m, i)
    src_at = {}
    for c, j in enumerate(pres.source.labels):
        src_at[j] = pres.V.matrix[pres.target.labels.index(j)][c]
    exps, labels = [], []
    for j, A in zip(pres.target.labels, pres.target.exponents):
        e = _cyclic_cokernel_exponent(A, src_at.get(j, 0), p)
        if e:
            exps.append(e)
            labels.append(j)
    out = FinAbPGroup(p, exps, labels)
    if out.length != (m - 1) * (i + 1):
        raise AssertionError(f"length {out.length} != (m-1)(i+1) for p={p}, m={m}, q={q}")
    return out


def relative_k_snf(p: int, m: int, q: int) -> FinAbPGroup:
    """Same group from the Smith normal form of the full presentation."""
    i = _odd_degree(q)
    if i is None:
        return FinAbPGroup.trivial(as_prime(p))
    return presentation(p, m, i).V.cokernel()


def _poly_mul_trunc(f: tuple[int, ...], g: tuple[int, ...], n: int, p: int) -> tuple[int, ...]:
    out = [0] * n
    for a, fa in enumerate(f):
        if fa:
            for b in range(n - a):
                if g[b]:
                    out[a + b] = (out[a + b] + fa * g[b]) % p
    return tuple(out)


def k1_units_oracle(p: int, n: int, guard: int = 10**6) -> FinAbPGroup:
    """Brute-force structure of the units 1 + x F_p[x]/(x^n).

    Counts N_k = #{g : g^(p^k) = 1}; the number of cyclic factors of
    exponent >= k is log_p(N_k / N_{k-1}).
    """
    p = as_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    size = p ** (n - 1)
    if size > guard:
        raise EnumerationGuard(f"{size} units exceeds the guard {guard}")
    one = (1,) + (0,) * (n - 1)
    exponent_count: dict[int, int] = {}
    for tail in itertools.product(range(p), repeat=n - 1):
        g = (1,) + tail
        e = 0
        while g != one:
            h = one
            for _ in range(p):
                h = _poly_mul_trunc(h, g, n, p)
            g = h
            e += 1
        exponent_count[e] = exponent_count.get(e, 0) + 1
    top = max(exponent_count)
    N = [sum(c for e, c in exponent_count.items() if e <= k) for k in range(top + 1)]
    at_least = []
    for k in range(1, top + 1):
        ratio, rem = divmod(N[k], N[k - 1])
        if rem:
            raise AssertionError("order statistics are not those of a p-group")
        at_least.append(vp(ratio, p) if ratio > 1 else 0)
    exps = []
    for k in range(1, top + 1):
        nxt = at_least[k] if k < top else 0
        exps.extend([k] * (at_least[k - 1] - nxt))
    return FinAbPGroup(p, sorted(exps, reverse=True))


# --- maps ---------------------------------------------------------------


@dataclass(frozen=True)
class KMapDesc:
    """Per-factor description of f_* : K_q(m) -> K_q(n).

    ``factors`` holds (j, a_j, b_j, w_j): source exponent, target exponent
    and the valuation of the twist; ``hom`` realises the map.
    """

    p: int
    m: int
    n: int
    q: int
    factors: tuple[tuple[int, int, int, int], ...]
    hom: PGroupHom = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "factors": [{"j": j, "a": a, "b": b, "w": w} for j, a, b, w in self.factors],
        }


def _check_mn(m, n):
    if not m > n >= 1:
        raise ValueError(f"need m > n >= 1, got m={m}, n={n}")


def transfer_map(p: int, m: int, n: int, q: int) -> KMapDesc:
    p = as_prime(p)
    _check_mn(m, n)
    src = relative_k(p, m, q)
    tgt = relative_k(p, n, q)
    i = _odd_degree(q)
    if i is None:
        return KMapDesc(p, m, n, q, (), PGroupHom(src, tgt))
    a = dict(zip(src.labels, src.exponents))
    b = dict(zip(tgt.labels, tgt.exponents))
    factors = []
    for j in sorted(set(a) | set(b)):
        factors.append((j, a.get(j, 0), b.get(j, 0), alpha_order(p, m, n, i, j)))
    row = {j: r for r, j in enumerate(tgt.labels)}
    M = [[0] * len(src) for _ in tgt.labels]
    for c, j in enumerate(src.labels):
        if j in row:
            M[row[j]][c] = p ** alpha_order(p, m, n, i, j)
    return KMapDesc(p, m, n, q, tuple(factors), PGroupHom(src, tgt, tuple(map(tuple, M))))


def middle_map_kills_V(p: int, m: int, n: int, i: int) -> bool:
    """Whether reduction-then-twist annihilates the image of m'V^v.

    This is the statement that the map on the left-hand terms is zero, so
    the map on cokernels is induced.
    """
    pres = presentation(p, m, i)
    for c, j in enumerate(pres.source.labels):
        col = pres.V.matrix[pres.target.labels.index(j)][c]
        B = s_p(p, n, i, j)
        if (col * p ** alpha_order(p, m, n, i, j)) % p**B:
            return False
    return True


def _closed_form_ker_coker(desc: KMapDesc) -> tuple[FinAbPGroup, FinAbPGroup]:
    p = desc.p
    ker, coker = [], []
    for _, a, b, w in desc.factors:
        if a == 0:
            coker.append(b)
        elif b == 0 or w >= b:
            ker.append(a)
            coker.append(b)
        else:
            ker.append(a - b + w)
            coker.append(w)
    return (
        FinAbPGroup(p, sorted((e for e in ker if e), reverse=True)),
        FinAbPGroup(p, sorted((e for e in coker if e), reverse=True)),
    )


def identity_map(p: int, m: int, q: int) -> KMapDesc:
    """The degenerate case m = n."""
    G = relative_k(p, m, q)
    factors = tuple((j, e, e, 0) for j, e in zip(G.labels, G.exponents))
    M = tuple(tuple(int(r == c) for c in range(len(G))) for r in range(len(G)))
    return KMapDesc(as_prime(p), m, m, q, factors, PGroupHom(G, G, M))


def ker_coker(desc: KMapDesc) -> tuple[FinAbPGroup, FinAbPGroup]:
    """Kernel and cokernel, from the Smith form and checked factor by factor."""
    ker, coker = desc.hom.kernel(), desc.hom.cokernel()
    k2, c2 = _closed_form_ker_coker(desc)
    if not (ker.isomorphic(k2) and coker.isomorphic(c2)):
        raise AssertionError(f"Smith form and per-factor analysis disagree: {ker}/{k2}, {coker}/{c2}")
    i = _odd_degree(desc.q)
    expected = 0 if i is None else (desc.m - desc.n) * (i + 1)
    if ker.length - coker.length != expected:
        raise AssertionError("len(ker) - len(coker) differs from (m-n)(i+1)")
    return ker, coker


def is_zero_map(p: int, m: int, n: int, q: int) -> bool:
    _check_mn(m, n)
    if _odd_degree(q) is None:
        return True
    return transfer_map(p, m, n, q).hom.is_zero()


# --- thresholds -------------------------------------------------------------


@dataclass(frozen=True)
class Threshold:
    value: int
    certificate: dict


def _stabilization_index(p, m, n, j) -> int:
    """Least i_j with the j-th factor condition holding for every i >= i_j.

    Once the condition holds at some i with (i+1)(m-n) >= n it holds at
    every later i, so the scan can stop there.
    """
    last_fail = -1
    w = 0
    for i in range(SEARCH_LIMIT):
        if w < s_p(p, n, i, j):
            last_fail = i
        elif (i + 1) * (m - n) >= n:
            return last_fail + 1
        w += s_p(p, m, i, j) - s_p(p, n, i, j)
    raise StabilizationError(f"no stabilization for j={j} within {SEARCH_LIMIT}")


def _critical_js(p, m, n) -> list[int]:
    # j >= 2mn/(m-n) satisfy the condition at every i
    return [j for j in range(1, 2 * m * n) if j % p and j * (m - n) < 2 * m * n]


def i0(p: int, m: int, n: int) -> Threshold:
    """Least i0 with kills_module(p, m, n, i) for all i >= i0."""
    p = as_prime(p)
    if not m > n > 1:
        raise ValueError("need m > n > 1")
    per_j = {j: _stabilization_index(p, m, n, j) for j in _critical_js(p, m, n)}
    value = max(per_j.values(), default=0)
    cert = {"per_j": per_j, "lower_bound": (p - 1) // m}
    if value > 0:
        cert["failing_i"] = value - 1
        cert["failing_j"] = [
            j for j in range(1, n * value + 1) if j % p and not kills_factor(p, m, n, value - 1, j)
        ]
    return Threshold(value, cert)


def kills_all_positive(p: int, m: int, n: int) -> bool:
    """kills_module(p, m, n, i) for every i > 0."""
    return i0(p, m, n).value <= 1


def m0(p: int, n: int) -> Threshold:
    """Least m0 > n with kills_module(p, m, n, i) for all m >= m0 and i > 0.

    Orders of the alpha divisor are nondecreasing in m while the right-hand
    side does not depend on m, so the first passing m settles all larger m.
    """
    p = as_prime(p)
    if n <= 1:
        raise ValueError("need n > 1")
    for m in range(n + 1, n + SEARCH_LIMIT):
        if kills_all_positive(p, m, n):
            cert = {}
            if m - 1 > n:
                t = i0(p, m - 1, n)
                cert = {"m": m - 1, "failing_i": t.certificate["failing_i"], "failing_j": t.certificate["failing_j"]}
            return Threshold(m, {"witness_below": cert})
    raise StabilizationError("m0 search exhausted")


def q0(p: int, m: int, n: int) -> Threshold:
    """Least q0 >= 1 with f_* zero in every degree q >= q0.

    Theorem territory is m > n+1; m = n+1 is computed anyway and flagged.
    """
    p = as_prime(p)
    _check_mn(m, n)
    beyond = m == n + 1
    if n == 1:
        return Threshold(1, {"beyond_theorem": beyond, "reason": "target group is trivial"})
    bound = i0(p, m, n).value
    value = 1
    for i in range(bound - 1, -1, -1):
        if not is_zero_map(p, m, n, 2 * i + 1):
            value = 2 * i + 3
            break
    cert = {"beyond_theorem": beyond, "i0": bound}
    if value > 1:
        cert["nonzero_at_q"] = value - 2
    return Threshold(value, cert)


# --- valuation formulas -------------------------------------------------------


def valuation_cross_check(p: int, m: int, n: int, i: int, j: int, u: int | None = None) -> tuple[int, int, int]:
    """Three independent evaluations of v_p(alpha_p(m,n,i,j)).

    v1 sums s_p differences; v2 sums lengths r_p over d < a <= e; v3
    counts monomials x_r^k sigma_r^l of bidegree (a, i) over the same a.
    """
    p = as_prime(p)
    if j < 1 or j % p == 0:
        raise ValueError("j must be a positive integer prime to p")
    if m < n or n < 1 or i < 0:
        raise ValueError("need m >= n >= 1 and i >= 0")
    if u is None:
        u = u_prime(p, max(m, n), i) + 1
    if p**u * j <= max(m, n) * (i + 1):
        raise StabilizationError(f"u={u} is below the stabilization bound")
    v1 = alpha_order(p, m, n, i, j)
    d, e = d_p(p, m, u, j), d_p(p, n, u, j)
    v2 = sum(r_p(p, a, v_cap(u, a, p), i) for a in range(d + 1, e + 1))
    v3 = 0
    for a in range(d + 1, e + 1):
        for r in range(1, v_cap(u, a, p) + 1):
            step = p ** (r - 1)
            if a % step == 0 and a // step <= i:
                v3 += 1
    return v1, v2, v3


def lemma_exponential_check(p: int, m: int, n: int, i: int, j: int) -> tuple[bool, bool]:
    """(hypothesis, conclusion) with t = s_p(n,i,j):

    hypothesis  (m-n)(p^t - 1) j >= 2t mn (p-1),
    conclusion  v_p(alpha) >= t.
    """
    p = as_prime(p)
    _check_mn(m, n)
    t = s_p(p, n, i, j)
    hyp = (m - n) * (p**t - 1) * j >= 2 * t * m * n * (p - 1)
    return hyp, alpha_order(p, m, n, i, j) >= t


def stays_zero_check(p: int, m: int, n: int, i: int, j: int) -> bool | None:
    """For i >= n/(m-n): condition at i-1 implies condition at i.

    Returns None when the hypotheses do not apply.
    """
    if i < 1 or i * (m - n) < n:
        return None
    if not kills_factor(p, m, n, i - 1, j):
        return None
    return kills_factor(p, m, n, i, j)


# --- intersection of images ---------------------------------------------------


@dataclass(frozen=True)
class MilnorIntersection:
    group: FinAbPGroup
    stabilized_at: int
    orders: tuple[int, ...]


def milnor_intersection(p: int, n: int, q: int, m_max: int) -> MilnorIntersection:
    """Intersection over n < m <= m_max of the images of f_* in K_q(n).

    ``orders`` lists the length of the running intersection after each m.
    """
    p = as_prime(p)
    if n < 1 or m_max <= n:
        raise ValueError("need n >= 1 and m_max > n")
    G = relative_k(p, n, q)
    k = len(G)
    running = None
    history = []
    lengths = []
    for m in range(n + 1, m_max + 1):
        L = transfer_map(p, m, n, q).hom.image_lattice()
        running = L if running is None else intersect_lattices(running, L, k)
        H = subgroup_from_lattice(G, running) if k else FinAbPGroup.trivial(p)
        history.append(H.invariants())
        lengths.append(H.length)
    final = lengths[-1]
    # images shrink as m grows, so the running intersection is a decreasing chain
    stabilized_at = n + 1 + lengths.index(final)
    if stabilized_at >= m_max:
        raise StabilizationError(f"intersection still shrinking at m_max={m_max}")
    return MilnorIntersection(FinAbPGroup(p, history[-1]), stabilized_at, tuple(lengths))
