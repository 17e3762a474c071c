"""The ten acceptance criteria, each at exact tolerance.

Every test reports one PASS/FAIL line (also collected into the terminal
summary) and asserts the outcome.
"""

import random
import time

from wittkit.arith import prime_to_p
from wittkit.cyclicbar import build_complex, compose_homology, homology, induced_map, predicted_homology
from wittkit import snf
from wittkit.divisor import alpha_divisor, div_witt, kills_module
from wittkit.kgroups import (
    i0,
    is_zero_map,
    k1_units_oracle,
    lemma_exponential_check,
    m0,
    milnor_intersection,
    q0,
    relative_k,
    stays_zero_check,
    transfer_map,
    valuation_cross_check,
)
from wittkit.truncation import divisor_set, quotient_set, segment
from wittkit.witt import (
    WittVectorFp,
    decomposed_F,
    decomposed_V,
    decomposed_add,
    decomposed_mul,
    decomposed_res,
    eta_decompose,
    eta_recompose,
    fp_add,
    fp_frobenius,
    fp_mul,
    fp_restrict,
    fp_verschiebung,
)


def test_criterion_01_length_identity(criterion):
    t = time.perf_counter()
    bad = []
    for p in (2, 3, 5):
        for m in range(1, 11):
            for i in range(9):
                if relative_k(p, m, 2 * i + 1).length != (m - 1) * (i + 1):
                    bad.append((p, m, i))
            for q in list(range(-4, 1)) + list(range(2, 20, 2)):
                if not relative_k(p, m, q).is_trivial():
                    bad.append((p, m, "q", q))
    ok = criterion(1, not bad, f"length (m-1)(i+1) on 270 cells, even/nonpositive q trivial; {len(bad)} violations, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_02_k1_oracle(criterion):
    t = time.perf_counter()
    cases = [(2, n) for n in range(2, 10)] + [(3, n) for n in range(2, 7)]
    bad = [(p, n) for p, n in cases if relative_k(p, n, 1).invariants() != k1_units_oracle(p, n).invariants()]
    ok = criterion(2, not bad, f"{len(cases)} (p,n) pairs, {len(bad)} mismatches, {time.perf_counter() - t:.1f}s")
    assert ok, bad


def _grid3():
    for p in (2, 3):
        for m in range(2, 7):
            for n in range(1, m):
                for i in range(7):
                    for j in prime_to_p(p, m * (i + 1)):
                        yield p, m, n, i, j


def test_criterion_03_valuation_triple(criterion):
    t = time.perf_counter()
    count, bad = 0, []
    for p, m, n, i, j in _grid3():
        v = valuation_cross_check(p, m, n, i, j)
        count += 1
        if not v[0] == v[1] == v[2]:
            bad.append((p, m, n, i, j, v))
    ok = criterion(3, not bad, f"{count} cells, {len(bad)} mismatches, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_04_witt_models(criterion):
    t = time.perf_counter()
    rng = random.Random(20240601)
    pairs, bad = 0, []
    for p in (2, 3):
        for r in range(1, 13):
            S = segment(r)
            subsets = [segment(k) for k in range(r + 1)] + [divisor_set(k) for k in range(1, r + 1)]
            for _ in range(200):
                x = WittVectorFp(p, S, tuple(rng.randrange(p) for _ in S))
                y = WittVectorFp(p, S, tuple(rng.randrange(p) for _ in S))
                a, b = eta_decompose(x), eta_decompose(y)
                pairs += 1
                checks = [
                    eta_recompose(a) == x,
                    eta_decompose(fp_add(x, y)) == decomposed_add(a, b),
                    eta_decompose(fp_mul(x, y)) == decomposed_mul(a, b),
                ]
                s = rng.randint(1, r)
                checks.append(eta_decompose(fp_frobenius(x, s)) == decomposed_F(a, s))
                z = fp_restrict(y, quotient_set(S, s))
                checks.append(eta_decompose(fp_verschiebung(z, s, S)) == decomposed_V(eta_decompose(z), s, S))
                T = rng.choice(subsets)
                checks.append(eta_decompose(fp_restrict(x, T)) == decomposed_res(a, T))
                if not all(checks):
                    bad.append((p, r, x.values, y.values, s, T.members, checks))
            # every operator index once on a fixed vector
            x = WittVectorFp(p, S, tuple(rng.randrange(p) for _ in S))
            a = eta_decompose(x)
            for s in range(1, r + 1):
                z = fp_restrict(x, quotient_set(S, s))
                if eta_decompose(fp_frobenius(x, s)) != decomposed_F(a, s) or eta_decompose(
                    fp_verschiebung(z, s, S)
                ) != decomposed_V(eta_decompose(z), s, S):
                    bad.append((p, r, "s", s))
    ok = criterion(4, not bad, f"{pairs} random pairs over 24 configurations, {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:5]


def test_criterion_05_divisor_algebra(criterion):
    t = time.perf_counter()
    bad = []
    for p in (2, 3):
        for r in range(1, 9):
            if div_witt(r, p).degree() != r:
                bad.append(("degree", p, r))
        for n in range(1, 9):
            for m in range(n + 1, 9):
                for i in range(9):
                    D = alpha_divisor(p, m, n, i)
                    if not D.is_effective():
                        bad.append(("effective", p, m, n, i))
                    for k in range(n + 1, m):
                        if alpha_divisor(p, m, k, i) + alpha_divisor(p, k, n, i) != D:
                            bad.append(("telescoping", p, m, k, n, i))
                    for j in prime_to_p(p, m * (i + 1)):
                        count = sum(
                            1
                            for h in range(i)
                            for r in range(1, 12)
                            if n * (h + 1) < p ** (r - 1) * j <= m * (h + 1)
                        )
                        if D.ord(j) != count:
                            bad.append(("remark", p, m, n, i, j))
    ok = criterion(5, not bad, f"telescoping, effectivity, degree and window-count identities; {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_06_thresholds(criterion):
    t = time.perf_counter()
    bad, triples = [], 0
    for p in (2, 3, 5, 7):
        for n in range(2, 6):
            for m in range(n + 1, 7):
                triples += 1
                v = i0(p, m, n).value
                if not all(kills_module(p, m, n, i) for i in range(v, v + 11)):
                    bad.append(("i0 holds", p, m, n, v))
                if kills_module(p, m, n, v - 1):
                    bad.append(("i0 minimal", p, m, n, v))
                if v < (p - 1) // m:
                    bad.append(("i0 bound", p, m, n, v))
    m0s = {}
    for p in (2, 3):
        for n in (2, 3, 4):
            tm = m0(p, n)
            m0s[(p, n)] = tm.value
            if not all(kills_module(p, m, n, i) for m in range(tm.value, tm.value + 6) for i in range(1, 21)):
                bad.append(("m0 holds", p, n))
            w = tm.certificate["witness_below"]
            if not w or kills_module(p, w["m"], n, w["failing_i"]):
                bad.append(("m0 witness", p, n))
    exp_cells = 0
    for p, m, n, i, j in _grid3():
        hyp, concl = lemma_exponential_check(p, m, n, i, j)
        exp_cells += 1
        if hyp and not concl:
            bad.append(("exponential", p, m, n, i, j))
        if stays_zero_check(p, m, n, i, j) is False:
            bad.append(("stayszero", p, m, n, i, j))
    ok = criterion(6, not bad, f"i0 on {triples} triples, m0={m0s}, {exp_cells} lemma cells; {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_07_q0(criterion):
    t = time.perf_counter()
    bad, values = [], {}
    for p in (2, 3):
        for m in range(3, 7):
            for n in range(1, m - 1):
                v = q0(p, m, n).value
                values[(p, m, n)] = v
                if not all(is_zero_map(p, m, n, q) for q in range(v, v + 21)):
                    bad.append(("zero after", p, m, n, v))
                if v >= 3 and is_zero_map(p, m, n, v - 2):
                    bad.append(("minimal", p, m, n, v))
        for m in range(2, 7):
            for n in range(1, m):
                for i in range(16):
                    if kills_module(p, m, n, i) and not is_zero_map(p, m, n, 2 * i + 1):
                        bad.append(("kills=>zero", p, m, n, i))
    ok = criterion(7, not bad, f"q0 on {len(values)} (p,m,n), max q0={max(values.values())}; {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_08_milnor(criterion):
    t = time.perf_counter()
    bad, stab = [], {}
    for p in (2, 3):
        for n in (2, 3, 4):
            m_max = m0(p, n).value + 2
            r = milnor_intersection(p, n, 1, m_max)
            if not r.group.isomorphic(relative_k(p, n, 1)):
                bad.append(("q=1", p, n))
            for i in (1, 2, 3):
                r = milnor_intersection(p, n, 2 * i + 1, m_max)
                stab[(p, n, 2 * i + 1)] = r.stabilized_at
                if not r.group.is_trivial() or r.stabilized_at >= m_max:
                    bad.append(("higher", p, n, i))
    ok = criterion(8, not bad, f"stabilization points {stab}; {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad


def test_criterion_09_cyclic_bar(criterion):
    t = time.perf_counter()
    bad = []
    for m in range(2, 5):
        for i in range(1, 9):
            cx = build_complex(m, i)
            h = homology(cx)
            if h != predicted_homology(m, i):
                bad.append(("prediction", m, i, str(h)))
            if h.euler_characteristic() != cx.euler_characteristic():
                bad.append(("euler", m, i))
            for k in range(2, cx.top + 1):
                prod = snf.matmul(cx.boundary(k - 1), cx.boundary(k), inner=cx.rank(k - 1), ncols=cx.rank(k))
                if any(v for row in prod for v in row):
                    bad.append(("dd", m, i, k))
    for i in range(1, 7):
        maps = {mn: induced_map(*mn, i) for mn in [(3, 2), (4, 2), (4, 3)]}
        src, mid = build_complex(4, i), build_complex(3, i)
        for k in range(src.top + 1):
            if snf.matmul(maps[(3, 2)].chain[k], maps[(4, 3)].chain[k], inner=mid.rank(k), ncols=src.rank(k)) != maps[(4, 2)].chain[k]:
                bad.append(("chain functoriality", i, k))
        direct = maps[(4, 2)]
        for k, M in direct.homology_matrices.items():
            reduced = [[x % q if q else x for x in row] for row, q in zip(M, direct.target_moduli[k])]
            if compose_homology(maps[(3, 2)], maps[(4, 3)], k) != reduced:
                bad.append(("homology functoriality", i, k))
    ok = criterion(9, not bad, f"24 complexes, 18 induced maps; {len(bad)} failures, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]


def test_criterion_10_functoriality(criterion):
    t = time.perf_counter()
    count, bad = 0, []
    for p in (2, 3):
        for n in range(1, 5):
            for k in range(n + 1, 8):
                for m in range(k + 1, 8):
                    for q in range(-1, 10):
                        g, h = transfer_map(p, m, k, q), transfer_map(p, k, n, q)
                        count += 1
                        if h.hom.compose(g.hom) != transfer_map(p, m, n, q).hom:
                            bad.append((p, m, k, n, q))
    ok = criterion(10, not bad, f"{count} composites compared as matrices; {len(bad)} mismatches, {time.perf_counter() - t:.1f}s")
    assert ok, bad[:10]
