"""Exact integer linear algebra on lists of lists of Python ints.

Smith normal form with both unimodular transforms (and their inverses),
integer kernels, lattice intersections, and the structure of finitely
generated abelian groups given by presentation matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def copy(A: Matrix) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """A (r x k) times B (k x c). Shapes are passed when a factor is empty."""
    if inner is None:
        inner = len(B) if B else (len(A[0]) if A else 0)
    if ncols is None:
        ncols = len(B[0]) if B else 0
    Bt = transpose(B, ncols) if B else [[] for _ in range(ncols)]
    if inner == 0:
        return zeros(len(A), ncols)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def hstack(*blocks: Matrix, nrows: int) -> Matrix:
    out = [[] for _ in range(nrows)]
    for B in blocks:
        for i in range(nrows):
            out[i].extend(B[i] if B else [])
    return out


@dataclass
class SmithForm:
    """U A V = D with D diagonal, d_1 | d_2 | ... , U and V unimodular."""

    U: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix
    diagonal: list[int]
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def D(self) -> Matrix:
        out = zeros(self.nrows, self.ncols)
        for k, d in enumerate(self.diagonal):
            out[k][k] = d
        return out


def smith_normal_form(A: Matrix, nrows: int | None = None, ncols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix, with transforms.

    Pivots are chosen with smallest absolute value; Python ints keep
    intermediate growth exact.
    """
    n = len(A) if nrows is None else nrows
    m = (len(A[0]) if A else 0) if ncols is None else ncols
    D = copy(A) if A else zeros(n, m)
    U, Uinv = identity(n), identity(n)
    V, Vinv = identity(m), identity(m)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        Dd, Ds = D[dst], D[src]
        for c in range(m):
            if Ds[c]:
                Dd[c] += q * Ds[c]
        Ud, Us = U[dst], U[src]
        for c in range(n):
            if Us[c]:
                Ud[c] += q * Us[c]
        for row in Uinv:
            if row[dst]:
                row[src] -= q * row[dst]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]
        Vd, Vs = Vinv[dst], Vinv[src]
        for c in range(m):
            if Vd[c]:
                Vs[c] -= q * Vd[c]

    t = 0
    while t < min(n, m):
        # smallest nonzero entry of the trailing block
        best = None
        for i in range(t, n):
            row = D[i]
            for j in range(t, m):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            piv = D[t][t]
            done = True
            for i in range(t + 1, n):
                if D[i][t]:
                    q = D[i][t] // piv
                    row_add(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    q = D[t][j] // piv
                    col_add(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the trailing block
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, m):
                        if D[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
                continue
            # a smaller remainder appeared; move it to the pivot
            best = None
            for i in range(t, n):
                x = D[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, t)
            for j in range(t, m):
                x = D[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), t, j)
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
        if D[t][t] < 0:
            row_neg(t)
        t += 1

    diag = [D[k][k] for k in range(min(n, m))]
    return SmithForm(U, V, Uinv, Vinv, diag, n, m)


def rank(A: Matrix, nrows=None, ncols=None) -> int:
    return smith_normal_form(A, nrows, ncols).rank


def integer_kernel(A: Matrix, ncols: int) -> Matrix:
    """Columns forming a Z-basis of {x in Z^ncols : A x = 0} (as an ncols x k matrix)."""
    sf = smith_normal_form(A, len(A), ncols)
    r = sf.rank
    return [row[r:] for row in sf.V]


def solve_integer(A: Matrix, b: list[int], ncols: int) -> list[int] | None:
    """Some integer x with A x = b, or None."""
    n = len(A)
    sf = smith_normal_form(A, n, ncols)
    c = matvec(sf.U, b)
    y = [0] * ncols
    for k in range(n):
        d = sf.diagonal[k] if k < len(sf.diagonal) else 0
        if d == 0:
            if c[k]:
                return None
        else:
            if c[k] % d:
                return None
            y[k] = c[k] // d
    return matvec(sf.V, y)


def column_basis(gens: Matrix, nrows: int) -> Matrix:
    """A Z-basis (columns) of the lattice spanned by the columns of gens."""
    ncols = len(gens[0]) if gens and gens[0] else 0
    if ncols == 0:
        return [[] for _ in range(nrows)]
    sf = smith_normal_form(gens, nrows, ncols)
    r = sf.rank
    # span = Uinv * D * Vinv columns; Uinv[:, :r] * diag is a basis
    return [[sf.Uinv[i][k] * sf.diagonal[k] for k in range(r)] for i in range(nrows)]


def lattice_intersection(B1: Matrix, B2: Matrix, nrows: int) -> Matrix:
    """Basis of span(B1) intersected with span(B2), both given by columns."""
    k1 = len(B1[0]) if B1 and B1[0] else 0
    k2 = len(B2[0]) if B2 and B2[0] else 0
    if k1 == 0 or k2 == 0:
        return [[] for _ in range(nrows)]
    M = hstack(B1, [[-x for x in row] for row in B2], nrows=nrows)
    K = integer_kernel(M, k1 + k2)
    coeffs = K[:k1]
    gens = matmul(B1, coeffs, inner=k1, ncols=len(K[0]) if K else 0)
    return column_basis(gens, nrows)


def cokernel_invariants(A: Matrix, nrows: int, ncols: int) -> tuple[int, list[int]]:
    """Z^nrows / A Z^ncols as (free rank, torsion invariant factors > 1)."""
    sf = smith_normal_form(A, nrows, ncols)
    diag = sf.diagonal + [0] * (nrows - len(sf.diagonal))
    free = sum(1 for d in diag if d == 0)
    torsion = [d for d in diag if d > 1]
    return free, torsion
