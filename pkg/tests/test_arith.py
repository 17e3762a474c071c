import pytest
from hypothesis import given, strategies as st

from wittkit.arith import PrimeP, d_p, r_p, s_p, split_p, u_prime, v_cap, vp

primes = st.sampled_from([2, 3, 5, 7])


def s_p_by_enumeration(p, m, i, j):
    members = set(range(1, m * (i + 1) + 1))
    count, x = 0, j
    while x <= m * (i + 1):
        count += x in members
        x *= p
    return count


def test_prime_checked():
    assert PrimeP(7) == 7
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeP(bad)


@pytest.mark.parametrize("x,p,expected", [(8, 2, 3), (1, 5, 0), (12, 3, 1), (-12, 2, 2)])
def test_vp(x, p, expected):
    assert vp(x, p) == expected


def test_vp_zero_rejected():
    with pytest.raises(ValueError):
        vp(0, 2)


def test_split_p():
    assert split_p(48, 2) == (4, 3)


@pytest.mark.parametrize(
    "args,expected", [((2, 4, 0, 1), 3), ((3, 3, 1, 2), 2), ((2, 3, 0, 5), 0), ((5, 2, 3, 7), 1)]
)
def test_s_p_examples(args, expected):
    assert s_p(*args) == expected


def test_s_p_rejects_j_divisible_by_p():
    with pytest.raises(ValueError):
        s_p(2, 3, 1, 4)


@pytest.mark.parametrize("args,expected", [((2, 3, 3, 1), 1), ((5, 4, 1, 1), 0), ((2, 1, 3, 3), 11)])
def test_d_p_examples(args, expected):
    assert d_p(*args) == expected


@pytest.mark.parametrize("args,expected", [((3, 2, 5, 3), 5), ((2, 5, 3, 2), 2), ((2, 8, 2, 1), 0)])
def test_r_p_examples(args, expected):
    assert r_p(*args) == expected


@pytest.mark.parametrize("args,expected", [((2, 3, 2), 4), ((3, 1, 0), 1), ((2, 4, 0), 3)])
def test_u_prime_examples(args, expected):
    assert u_prime(*args) == expected


@pytest.mark.parametrize("args,expected", [((3, 4, 2), 3), ((5, 7, 2), 1), ((2, 27, 3), 2)])
def test_v_cap_examples(args, expected):
    assert v_cap(*args) == expected


@given(primes, st.integers(1, 12), st.integers(0, 10), st.integers(1, 200))
def test_s_p_matches_enumeration_and_characterisation(p, m, i, j):
    if j % p == 0:
        j += 1
    s = s_p(p, m, i, j)
    assert s == s_p_by_enumeration(p, m, i, j)
    if j <= m * (i + 1):
        assert p ** (s - 1) * j <= m * (i + 1) < p**s * j
    else:
        assert s == 0


@given(primes, st.integers(1, 12), st.integers(0, 10), st.integers(1, 60))
def test_s_p_monotone(p, m, i, j):
    if j % p == 0:
        j += 1
    s = s_p(p, m, i, j)
    assert s_p(p, m + 1, i, j) >= s
    assert s_p(p, m, i + 1, j) >= s
    j2 = j + 1 if (j + 1) % p else j + 2
    assert s_p(p, m, i, j2) <= s


@given(primes, st.integers(1, 10), st.integers(1, 10), st.integers(0, 10), st.integers(1, 60))
def test_difference_counts_powers_in_window(p, m, n, h, j):
    if j % p == 0:
        j += 1
    m, n = max(m, n), min(m, n)
    count = sum(1 for r in range(1, 40) if n * (h + 1) < p ** (r - 1) * j <= m * (h + 1))
    assert s_p(p, m, h, j) - s_p(p, n, h, j) == count


@given(primes, st.integers(1, 300), st.integers(1, 8), st.integers(0, 300))
def test_r_p_bounded_and_monotone(p, a, u, i):
    r = r_p(p, a, u, i)
    assert 0 <= r <= u
    assert r_p(p, a, u + 1, i) >= r
    assert r_p(p, a, u, i + 1) >= r


@given(primes, st.integers(1, 50), st.integers(0, 50))
def test_u_prime_characterisation(p, m, i):
    u = u_prime(p, m, i)
    assert p ** (u - 1) <= m * (i + 1) < p**u
