"""Exact linear algebra over the integers.

Matrices are plain lists of lists of Python ints, so every computation is
arbitrary precision.  The toolbox is the usual one for computing homology of
finite complexes:

  * row Hermite normal form (optionally with a unimodular transform),
  * integer kernels and integer solving (lattice membership with witness),
  * Smith normal form with all four transforms U, V, U^-1, V^-1,
  * canonical lattice comparison via reduced row HNF.

Pivoting picks a least-absolute-value entry and reduces neighbours by gcd
steps, which keeps coefficient growth tame on the sparse +-1 matrices this
package produces.
"""

from __future__ import annotations

from dataclasses import dataclass


def xgcd(a: int, b: int):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity_matrix(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int):
    return [[0] * cols for _ in range(rows)]


def transpose(A):
    return [list(row) for row in zip(*A)] if A else []


def matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n, k, m = len(A), len(B), len(B[0])
    Bc = [list(col) for col in zip(*B)]
    return [[sum(arow[t] * bcol[t] for t in range(k)) for bcol in Bc] for arow in A]


def mat_eq(A, B):
    return A == B


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


# -- Hermite form -------------------------------------------------------------

def row_hnf(A, transform: bool = False):
    """Row Hermite normal form.

    Returns H (and U with U*A = H when transform=True).  H is in echelon
    form with positive pivots of increasing column index, entries above each
    pivot reduced into [0, pivot), and zero rows at the bottom.
    """
    H = [list(row) for row in A]
    m = len(H)
    n = len(H[0]) if H else 0
    U = identity_matrix(m) if transform else None
    r = 0
    for col in range(n):
        if r >= m:
            break
        # gcd out the column below r
        while True:
            piv = None
            for i in range(r, m):
                v = H[i][col]
                if v and (piv is None or abs(v) < abs(H[piv][col])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if transform:
                    U[r], U[piv] = U[piv], U[r]
            pivot = H[r][col]
            dirty = False
            for i in range(r + 1, m):
                v = H[i][col]
                if v:
                    q = v // pivot
                    if q:
                        Hi, Hr = H[i], H[r]
                        H[i] = [x - q * y for x, y in zip(Hi, Hr)]
                        if transform:
                            Ui, Ur = U[i], U[r]
                            U[i] = [x - q * y for x, y in zip(Ui, Ur)]
                    if H[i][col]:
                        dirty = True
            if not dirty:
                break
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            if transform:
                U[r] = [-x for x in U[r]]
        pivot = H[r][col]
        for i in range(r):
            q = H[i][col] // pivot
            if q:
                Hi, Hr = H[i], H[r]
                H[i] = [x - q * y for x, y in zip(Hi, Hr)]
                if transform:
                    Ui, Ur = U[i], U[r]
                    U[i] = [x - q * y for x, y in zip(Ui, Ur)]
        r += 1
    return (H, U) if transform else H


def hnf_lattice(rows):
    """Canonical basis (reduced row HNF, zero rows dropped) of the lattice
    spanned by the given vectors."""
    if not rows:
        return []
    H = row_hnf(rows)
    return [row for row in H if any(row)]


def lattices_equal(rows1, rows2) -> bool:
    return hnf_lattice(rows1) == hnf_lattice(rows2)


def lattice_contains(rows, vec) -> bool:
    """Membership of vec in the row span, by greedy pivot reduction."""
    basis = hnf_lattice(rows)
    v = list(vec)
    for row in basis:
        col = next(j for j, x in enumerate(row) if x)
        if v[col]:
            q, rem = divmod(v[col], row[col])
            if rem:
                return False
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def kernel_basis(A):
    """Basis (list of vectors) of the integer kernel {x : A x = 0}.

    The basis spans the full (saturated) kernel lattice:

    >>> kernel_basis([[2, -2]])
    [[1, 1]]
    """
    if not A or not A[0]:
        n = len(A[0]) if A else 0
        return identity_matrix(n)
    H, U = row_hnf(transpose(A), transform=True)
    return [U[i] for i in range(len(H)) if not any(H[i])]


class ColumnSolver:
    """Reusable integer solver for A x = b with a fixed A."""

    def __init__(self, A):
        self.ncols = len(A[0]) if A else 0
        self.nrows = len(A)
        self.H, self.U = row_hnf(transpose(A), transform=True)
        self.pivots = []
        for i, row in enumerate(self.H):
            for j, x in enumerate(row):
                if x:
                    self.pivots.append((i, j))
                    break

    def solve(self, b):
        """One integer solution x, or None when b is outside the column
        lattice of A."""
        r = list(b)
        y = [0] * len(self.H)
        for i, col in self.pivots:
            if r[col]:
                q, rem = divmod(r[col], self.H[i][col])
                if rem:
                    return None
                y[i] = q
                Hi = self.H[i]
                r = [x - q * h for x, h in zip(r, Hi)]
        if any(r):
            return None
        x = [0] * self.ncols
        for i, yi in enumerate(y):
            if yi:
                Ui = self.U[i]
                x = [xx + yi * u for xx, u in zip(x, Ui)]
        return x


def solve_int(A, b):
    return ColumnSolver(A).solve(b)


# -- Smith form ---------------------------------------------------------------

@dataclass
class SmithDecomposition:
    """U A V = D with U, V unimodular and diagonal divisibility d1 | d2 | ..."""

    D: list
    U: list
    V: list
    U_inv: list
    V_inv: list

    def diagonal(self):
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    def verify(self, A) -> bool:
        if matmul(matmul(self.U, A), self.V) != self.D:
            return False
        if matmul(self.U, self.U_inv) != identity_matrix(len(self.U)):
            return False
        if matmul(self.V, self.V_inv) != identity_matrix(len(self.V)):
            return False
        diag = [d for d in self.diagonal() if d]
        return all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1)) \
            and all(d >= 0 for d in self.diagonal())

    def recompose(self):
        return matmul(matmul(self.U_inv, self.D), self.V_inv)


def smith_normal_form(A) -> SmithDecomposition:
    """
    >>> dec = smith_normal_form([[2, 4], [6, 8]])
    >>> dec.diagonal()
    [2, 4]
    >>> dec.verify([[2, 4], [6, 8]]) and dec.recompose() == [[2, 4], [6, 8]]
    True
    """
    m = len(A)
    n = len(A[0]) if A else 0
    D = [list(row) for row in A]
    U, U_inv = identity_matrix(m), identity_matrix(m)
    V, V_inv = identity_matrix(n), identity_matrix(n)

    def row_op(i, q, j):
        # row_i -= q * row_j ; inverse transform gets the opposite column op
        D[i] = [x - q * y for x, y in zip(D[i], D[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]
        for row in U_inv:
            row[j] += q * row[i]

    def col_op(j, q, k):
        # col_j -= q * col_k
        for row in D:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]
        V_inv[k] = [x + q * y for x, y in zip(V_inv[k], V_inv[j])]

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for row in U_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    k = min(m, n)
    for t in range(k):
        # least-absolute-value pivot in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (piv is None or abs(v) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t by gcd steps
            for i in range(t + 1, m):
                while D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_op(i, q, t)
                    if D[i][t]:
                        swap_rows(t, i)
            # clear row t; may dirty the column again
            for j in range(t + 1, n):
                while D[t][j]:
                    q = D[t][j] // D[t][t]
                    col_op(j, q, t)
                    if D[t][j]:
                        swap_cols(t, j)
            if all(D[i][t] == 0 for i in range(t + 1, m)) and \
               all(D[t][j] == 0 for j in range(t + 1, n)):
                break
        if D[t][t] < 0:
            negate_row(t)

    # push the diagonal into a divisibility chain
    changed = True
    while changed:
        changed = False
        for t in range(k - 1):
            a, b = D[t][t], D[t + 1][t + 1]
            if b and (a == 0 or b % a):
                # fold b into position t via one row op, then rediagonalize the
                # 2x2 block [[a, b], [0, b]]
                row_op(t, -1, t + 1)
                g, x, y = xgcd(a, b)
                # column ops to make entry (t,t) = g
                # [a b] * [[x, -b//g], [y, a//g]] = [g, 0]
                colt = [row[t] for row in D]
                coltp = [row[t + 1] for row in D]
                for i, row in enumerate(D):
                    row[t] = x * colt[i] + y * coltp[i]
                    row[t + 1] = (-b // g) * colt[i] + (a // g) * coltp[i]
                vt = [row[t] for row in V]
                vtp = [row[t + 1] for row in V]
                for i, row in enumerate(V):
                    row[t] = x * vt[i] + y * vtp[i]
                    row[t + 1] = (-b // g) * vt[i] + (a // g) * vtp[i]
                # V_inv rows transform by the inverse, [[a//g, b//g], [-y, x]]
                rt = V_inv[t][:]
                rtp = V_inv[t + 1][:]
                V_inv[t] = [(a // g) * u + (b // g) * w for u, w in zip(rt, rtp)]
                V_inv[t + 1] = [-y * u + x * w for u, w in zip(rt, rtp)]
                # now clear the dirtied positions
                i = t + 1
                while D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_op(i, q, t)
                    if D[i][t]:
                        swap_rows(t, i)
                while D[t][t + 1]:
                    q = D[t][t + 1] // D[t][t]
                    col_op(t + 1, q, t)
                    if D[t][t + 1]:
                        swap_cols(t, t + 1)
                if D[t][t] < 0:
                    negate_row(t)
                if D[t + 1][t + 1] < 0:
                    negate_row(t + 1)
                changed = True
    return SmithDecomposition(D, U, V, U_inv, V_inv)


def invariant_factors(A):
    """Nonzero diagonal of the Smith form (with 1s), cheaply: Hermite-reduce
    first, then run the Smith machinery on the small core."""
    core = hnf_lattice(A)
    if not core:
        return []
    snf = smith_normal_form(core)
    return [d for d in snf.diagonal() if d]


def rank_of(A) -> int:
    return len(hnf_lattice(A))


# -- modulo-p helpers ---------------------------------------------------------

def rank_mod_p(A, p: int) -> int:
    M = [[x % p for x in row] for row in A]
    rank = 0
    rows = len(M)
    cols = len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def nullity_mod_p(A, p: int) -> int:
    cols = len(A[0]) if A else 0
    return cols - rank_mod_p(A, p)
