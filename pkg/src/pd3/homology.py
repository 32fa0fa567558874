"""Homology, annihilators, bounded kernel certificates, bar resolution.

Everything here reduces to exact integer linear algebra (intlin):

  * `flatten` expands a matrix over Z[G] (G finite) to an integer matrix on
    the Z-basis {g * cell}, functorially;
  * `homology` of an integer complex returns one AbelianGroupDescriptor per
    degree (free rank from ranks of the differentials, torsion from the
    invariant factors of the incoming one);
  * annihilator ideals in Z[G] are integer kernel lattices of
    right-multiplication matrices, and principality is a lattice equality;
  * the kernel claims over the infinite ring Z[Pi] are certified on balls of
    normal forms: every annihilator element supported in ball(L) is exhibited
    as p * generator with an explicit witness p, and the result is reported
    as a radius-L certificate, never as a proof;
  * group homology comes from the normalized bar resolution (degenerate
    tuples dropped), with induced maps and the amalgam Mayer-Vietoris in
    degree 3;
  * modules over R = Z[a]/(a^2-1) are compared by underlying group plus
    a-eigenvalue multiplicities on the free quotient and on each p-socle,
    which separates every module that occurs here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import GroupTooLarge, InfiniteGroup, NotAComplex
from .groups import ALL, GroupContext, GroupHom, PI, Z2, enumerate_elements
from .ring import RingElement, TRIVIAL_CHARACTER, TWISTED_CHARACTER, \
    format_element, to_R
from .complexes import FreeComplex, IntComplex, flatten_r_matrix, \
    involuted_transpose
from . import intlin
from .intlin import ColumnSolver, hnf_lattice, invariant_factors, kernel_basis, \
    lattices_equal, rank_of, smith_normal_form, transpose


# -- abelian group descriptors -------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """free_rank copies of Z plus cyclic factors in divisibility order."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        assert all(t > 1 for t in self.torsion)
        assert all(self.torsion[i + 1] % self.torsion[i] == 0
                   for i in range(len(self.torsion) - 1))

    @classmethod
    def from_factors(cls, free_rank, factors):
        """Normalize arbitrary cyclic factors into invariant-factor form.

        >>> str(AbelianGroupDescriptor.from_factors(0, [3, 3, 2]))
        'Z/3 + Z/6'
        >>> AbelianGroupDescriptor.from_factors(0, [0, 1, 4])
        AbelianGroupDescriptor(free_rank=1, torsion=(4,))
        """
        primary = {}
        for d in factors:
            d = abs(d)
            if d == 0:
                free_rank += 1
                continue
            if d == 1:
                continue
            for p, e in _factorize(d).items():
                primary.setdefault(p, []).append(e)
        chains = {p: sorted(es, reverse=True) for p, es in primary.items()}
        depth = max((len(es) for es in chains.values()), default=0)
        invs = []
        for i in range(depth):
            d = 1
            for p, es in chains.items():
                if i < len(es):
                    d *= p ** es[i]
            invs.append(d)
        return cls(free_rank, tuple(sorted(invs)))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _factorize(n: int) -> dict:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- flattening over a finite group --------------------------------------------

@lru_cache(maxsize=None)
def _elements_of(ctx_id: str):
    from .groups import context
    ctx = context(ctx_id)
    if not ctx.is_finite:
        raise InfiniteGroup(f"{ctx.id} is infinite; cannot flatten")
    return tuple(enumerate_elements(ctx, ALL))


def flatten_matrix(M, ctx: GroupContext):
    """Z[G]-matrix -> integer matrix on the Z-basis {g * cell_j}, with g
    running through the fixed enumeration fastest."""
    elements = _elements_of(ctx.id)
    index = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    rows = len(M)
    cols = len(M[0]) if M else 0
    out = [[0] * (cols * n) for _ in range(rows * n)]
    for j in range(cols):
        for g_idx, g in enumerate(elements):
            col = j * n + g_idx
            rg = RingElement.from_element(g)
            for i in range(rows):
                if not M[i][j].terms:
                    continue
                for h, c in (rg * M[i][j]).terms.items():
                    out[i * n + index[h]][col] = c
    return out


def flatten_complex(cx: FreeComplex) -> IntComplex:
    elements = _elements_of(cx.ctx.id)
    n = len(elements)
    return IntComplex([r * n for r in cx.ranks],
                      {d: flatten_matrix(cx.diffs[d], cx.ctx)
                       for d in range(1, cx.top + 1)})


# -- homology of integer complexes ----------------------------------------------

def homology(cx: IntComplex):
    """One descriptor per degree 0..top."""
    top = cx.top
    ranks_of_diff = {}
    for d in range(1, top + 1):
        M = cx.diffs[d]
        ranks_of_diff[d] = rank_of(M) if M and M[0] else 0
    out = []
    for d in range(0, top + 1):
        r_in = ranks_of_diff.get(d + 1, 0)
        r_out = ranks_of_diff.get(d, 0)
        free = cx.ranks[d] - r_out - r_in
        if free < 0:
            raise NotAComplex("differential ranks exceed chain rank")
        torsion = [f for f in (invariant_factors(cx.diffs[d + 1])
                               if d + 1 <= top else []) if f > 1]
        out.append(AbelianGroupDescriptor.from_factors(free, torsion))
    return out


def betti_mod2(cx: IntComplex):
    top = cx.top
    r2 = {}
    for d in range(1, top + 1):
        M = cx.diffs[d]
        r2[d] = intlin.rank_mod_p(M, 2) if M and M[0] else 0
    return [cx.ranks[d] - r2.get(d, 0) - r2.get(d + 1, 0) for d in range(top + 1)]


class HomologyWithClasses:
    """H_n = ker(d_n)/im(d_{n+1}) together with coordinates of cycles.

    coords(z) returns one integer per retained invariant factor (reduced mod
    that factor) followed by the free coordinates.
    """

    def __init__(self, d_n, d_np1, ambient_rank: int):
        if d_n and d_n[0]:
            K = kernel_basis(d_n)
        else:
            K = intlin.identity_matrix(ambient_rank)
        self.kernel = K
        k = len(K)
        self.solver = ColumnSolver(transpose(K)) if k else None
        cols = []
        if d_np1 and d_np1[0] and k:
            for j in range(len(d_np1[0])):
                col = [d_np1[i][j] for i in range(len(d_np1))]
                y = self.solver.solve(col)
                if y is None:
                    raise NotAComplex("image is not inside the kernel")
                cols.append(y)
        reduced = hnf_lattice(cols) if cols else []
        if k and reduced:
            snf = smith_normal_form(transpose(reduced))
            self.U = snf.U
            self.diag = snf.diagonal() + [0] * (k - len(snf.diagonal()))
        else:
            self.U = intlin.identity_matrix(k)
            self.diag = [0] * k
        self.keep = [i for i, d in enumerate(self.diag) if d != 1]
        self.descriptor = AbelianGroupDescriptor.from_factors(
            sum(1 for d in self.diag if d == 0),
            [d for d in self.diag if d > 1])

    def coords(self, cycle):
        """Coordinates of a cycle's class, aligned with self.keep."""
        if not self.kernel:
            assert not any(cycle)
            return []
        x = self.solver.solve(list(cycle))
        if x is None:
            raise ValueError("vector is not a cycle")
        out = []
        for i in self.keep:
            w = sum(self.U[i][t] * x[t] for t in range(len(x)))
            d = self.diag[i]
            out.append(w % d if d else w)
        return out

    def factor_list(self):
        return [self.diag[i] for i in self.keep]


# -- annihilator ideals in finite group rings ------------------------------------

def right_multiplication_matrix(x: RingElement):
    """Integer matrix of g -> g*x on the Z-basis of Z[G], G finite."""
    elements = _elements_of(x.context.id)
    index = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    out = [[0] * n for _ in range(n)]
    for j, g in enumerate(elements):
        prod = RingElement.from_element(g) * x
        for h, c in prod.terms.items():
            out[index[h]][j] = c
    return out


def element_coords(x: RingElement):
    elements = _elements_of(x.context.id)
    return [x.coeff(g) for g in elements]


def coords_element(ctx: GroupContext, vec):
    elements = _elements_of(ctx.id)
    return RingElement(ctx, {g: c for g, c in zip(elements, vec)})


def annihilator_lattice(x: RingElement):
    """Left annihilator {h : h x = 0} as an integer lattice (row basis)."""
    if not x.context.is_finite:
        raise InfiniteGroup("annihilator lattices need a finite group")
    return kernel_basis(right_multiplication_matrix(x))


def principal_ideal_lattice(y: RingElement):
    """The left ideal Z[G] y as an integer lattice (row basis)."""
    if not y.context.is_finite:
        raise InfiniteGroup("ideal lattices need a finite group")
    elements = _elements_of(y.context.id)
    rows = [element_coords(RingElement.from_element(g) * y) for g in elements]
    return hnf_lattice(rows)


def annihilator_is_principal(x: RingElement, generator: RingElement) -> bool:
    return lattices_equal(annihilator_lattice(x), principal_ideal_lattice(generator))


# -- bounded certificates over Z[Pi] ---------------------------------------------

@dataclass
class BallCertificate:
    kind: str           # "kernel-membership" or "injectivity"
    status: str         # "PARTIAL" | "INCONCLUSIVE" | "FAIL"
    radius: int
    kernel_rank: int
    details: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status == "PARTIAL"

    def __str__(self):
        return (f"{self.kind}: {self.status}({self.radius}), "
                f"kernel rank {self.kernel_rank}")


def _ball_annihilator(targets, L: int):
    """Kernel vectors of h -> (h d : d in targets) with supp(h) in ball(L)."""
    ball = enumerate_elements(PI, L)
    reach = L + max(d.max_word_length() for d in targets)
    rows = enumerate_elements(PI, reach)
    row_index = {g: i for i, g in enumerate(rows)}
    blocks = []
    for d in targets:
        A = [[0] * len(ball) for _ in rows]
        for j, g in enumerate(ball):
            prod = RingElement.from_element(g) * d
            for h, c in prod.terms.items():
                A[row_index[h]][j] = c
        blocks.extend(A)
    return ball, kernel_basis(blocks)


def divide_on_right(h: RingElement, gen: RingElement, support_bound: int):
    """A witness p with p * gen = h and supp(p) within the length bound, or
    None.  Greedy peeling from the shortlex-top of the support: at each step
    the top term u must be the top of g * gen for some candidate g = u * t^-1
    (t in supp(gen)); subtracting the matched multiple strictly lowers the
    top, so this terminates.  Any returned witness is re-verified exactly."""
    gen_terms = list(gen.terms.items())
    work = h
    p = RingElement.zero(h.context)
    while not work.is_zero():
        u = max(work.support(), key=lambda g: g.shortlex_key())
        best = None
        for t, _ in gen_terms:
            g = u * t.inverse()
            if g.length() > support_bound:
                continue
            prod = RingElement.from_element(g) * gen
            if max(prod.support(), key=lambda e: e.shortlex_key()) != u:
                continue
            if best is None or g.shortlex_key() > best[0].shortlex_key():
                best = (g, prod)
        if best is None:
            return None
        g, prod = best
        cu = prod.coeff(u)
        q, rem = divmod(work.coeff(u), cu)
        if rem:
            return None
        p = p + RingElement.from_element(g, q)
        work = work - prod * q
    assert p * gen == h
    return p


def bounded_kernel_search(d: RingElement, L: int, claimed_generator: RingElement,
                          slack: int | None = None) -> BallCertificate:
    """Certify, on ball(L), that every left annihilator of d is a left
    multiple of the claimed generator.  PARTIAL(L) on success; INCONCLUSIVE
    when a kernel vector has no witness within the slack (not a refutation);
    FAIL when the claimed generator does not annihilate d at all."""
    if slack is None:
        slack = claimed_generator.max_word_length() + 2
    cert = BallCertificate("kernel-membership", "PARTIAL", L, 0)
    if not (claimed_generator * d).is_zero():
        cert.status = "FAIL"
        cert.details.append("claimed generator does not annihilate the target")
        return cert
    ball, kernel = _ball_annihilator([d], L)
    cert.kernel_rank = len(kernel)
    for vec in kernel:
        h = RingElement(PI, {g: c for g, c in zip(ball, vec) if c})
        p = divide_on_right(h, claimed_generator, L + slack)
        if p is None:
            cert.status = "INCONCLUSIVE"
            cert.details.append(
                f"no witness within slack {slack} for kernel element {format_element(h)}")
        else:
            cert.details.append(
                f"{format_element(h)} = ({format_element(p)}) * generator")
    return cert


def bounded_injectivity(targets, L: int) -> BallCertificate:
    """Certify on ball(L) that h -> (h d_k)_k has zero kernel."""
    ball, kernel = _ball_annihilator(list(targets), L)
    cert = BallCertificate("injectivity", "PARTIAL", L, len(kernel))
    if kernel:
        cert.status = "FAIL"
        for vec in kernel[:3]:
            h = RingElement(PI, {g: c for g, c in zip(ball, vec) if c})
            cert.details.append(f"nonzero annihilator: {format_element(h)}")
    return cert


# -- the degree-3 generator and the lifting identity ------------------------------

@dataclass
class CheckOutcome:
    passed: bool
    details: list = field(default_factory=list)


def lifting_identity_check(cx_f: FreeComplex, gen_b: RingElement,
                           mult_p: RingElement, mult_q: RingElement) -> CheckOutcome:
    """In the diagonal basis of the S3 complex: for p, q over the Z-basis
    {1, b, b^2}, ((p*mult_p + q*mult_q)) * d3 equals (p(a-1), q*gen_b).
    Bilinearity makes the nine basis pairs (plus zero cases) exhaustive."""
    out = CheckOutcome(True)
    ctx = cx_f.ctx
    one = RingElement.one(ctx)
    basis = [one, RingElement.from_word(ctx, "b"), RingElement.from_word(ctx, "b^2")]
    zero = RingElement.zero(ctx)
    a_minus_1 = RingElement.from_word(ctx, "a") - one
    d3 = [cx_f.diffs[3][i][0] for i in range(2)]
    for p in [zero] + basis:
        for q in [zero] + basis:
            h = p * mult_p + q * mult_q
            lhs = [h * d3[0], h * d3[1]]
            rhs = [p * a_minus_1, q * gen_b]
            ok = lhs == rhs
            out.passed &= ok
            tag = "ok" if ok else "MISMATCH"
            out.details.append(
                f"p={format_element(p)}, q={format_element(q)}: {tag}")
    return out


def h3_generator_check(cx: FreeComplex, nu: RingElement, beta: RingElement) -> CheckOutcome:
    """ker(flatten d3) is rank one, generated primitively by nu * g, where
    nu = beta(a+1) is the sum of all six group elements (also the transfer
    image of the base top cell)."""
    out = CheckOutcome(True)
    ctx = cx.ctx
    a_plus_1 = RingElement.from_word(ctx, "a") + RingElement.one(ctx)
    elements = _elements_of(ctx.id)
    full_sum = RingElement(ctx, {g: 1 for g in elements})
    checks = [
        ("nu = beta*(a+1)", beta * a_plus_1 == nu),
        ("nu = transfer of the base top cell (sum over the group)", full_sum == nu),
        ("support size 6", len(nu.support()) == 6),
    ]
    K = kernel_basis(flatten_matrix(cx.diffs[3], ctx))
    checks.append(("kernel of flattened d3 has rank 1", len(K) == 1))
    if len(K) == 1:
        vec = K[0]
        from math import gcd
        g = 0
        for v in vec:
            g = gcd(g, v)
        checks.append(("generator primitive", g == 1))
        nu_coords = element_coords(nu)
        checks.append(("generator = +-(nu g)", vec == nu_coords
                       or [-v for v in vec] == nu_coords))
    for label, ok in checks:
        out.passed &= ok
        out.details.append(f"{label}: {'ok' if ok else 'FAIL'}")
    return out


# -- normalized bar resolution ----------------------------------------------------

MAX_BAR_GROUP = 6


@lru_cache(maxsize=None)
def _bar_boundary(ctx_id: str, n: int):
    """Integer matrix of the degree-n boundary of the normalized bar complex
    with trivial coefficients (the leading face loses its group translate)."""
    from .groups import context
    ctx = context(ctx_id)
    if not ctx.is_finite:
        raise InfiniteGroup("bar resolution needs a finite group")
    if ctx.order > MAX_BAR_GROUP:
        raise GroupTooLarge(f"bar homology supports |G| <= {MAX_BAR_GROUP}")
    nontrivial = [g for g in _elements_of(ctx_id) if not g.is_identity()]
    tuples_n = _bar_tuples(nontrivial, n)
    tuples_low = _bar_tuples(nontrivial, n - 1)
    index = {t: i for i, t in enumerate(tuples_low)}
    A = [[0] * len(tuples_n) for _ in tuples_low]

    def emit(tup, sign, col):
        if all(not g.is_identity() for g in tup):
            A[index[tup]][col] += sign

    for col, tup in enumerate(tuples_n):
        emit(tup[1:], 1, col)
        for i in range(n - 1):
            merged = tup[:i] + (tup[i] * tup[i + 1],) + tup[i + 2:]
            emit(merged, -1 if i % 2 == 0 else 1, col)
        emit(tup[:-1], -1 if n % 2 else 1, col)
    return A


def _bar_tuples(nontrivial, n):
    if n == 0:
        return [()]
    out = [()]
    for _ in range(n):
        out = [t + (g,) for t in out for g in nontrivial]
    return out


def bar_rank(ctx: GroupContext, n: int) -> int:
    return (ctx.order - 1) ** n


def bar_homology(ctx: GroupContext, n: int) -> AbelianGroupDescriptor:
    """
    >>> str(bar_homology(Z2, 3))
    'Z/2'
    """
    if n > 3 or n < 0:
        raise ValueError("bar homology is supported for degrees 0..3")
    return bar_homology_with_classes(ctx.id, n).descriptor


@lru_cache(maxsize=None)
def bar_homology_with_classes(ctx_id: str, n: int) -> HomologyWithClasses:
    d_n = _bar_boundary(ctx_id, n) if n >= 1 else None
    d_np1 = _bar_boundary(ctx_id, n + 1)
    from .groups import context
    rank = bar_rank(context(ctx_id), n)
    return HomologyWithClasses(d_n, d_np1, rank)


def bar_induced_cycle(hom: GroupHom, tup):
    """Image of a bar tuple under a homomorphism (tuple-wise)."""
    return tuple(hom(g) for g in tup)


def induced_h3_coords(hom: GroupHom, cycle_tuples):
    """Class coordinates in H3(target) of the image of a degree-3 cycle given
    as a list of (tuple, coefficient) over the source group."""
    target = hom.target
    H = bar_homology_with_classes(target.id, 3)
    nontrivial = [g for g in _elements_of(target.id) if not g.is_identity()]
    tuples3 = _bar_tuples(nontrivial, 3)
    index = {t: i for i, t in enumerate(tuples3)}
    vec = [0] * len(tuples3)
    for tup, c in cycle_tuples:
        img = bar_induced_cycle(hom, tup)
        if all(not g.is_identity() for g in img):
            vec[index[img]] += c
    return H, H.coords(vec)


def mayer_vietoris_h3() -> tuple:
    """H3 of the amalgam of the two S3 copies along <a>:
    the cokernel of H3(Z/2) -> H3(S3) (+) H3(S3), g -> (i*g, -i*g),
    valid because H2(Z/2) = 0 (checked).

    Returns (descriptor, details list)."""
    details = []
    h2_a = bar_homology(Z2, 2)
    if h2_a != AbelianGroupDescriptor(0, ()):
        raise NotAComplex(f"H2(Z/2) = {h2_a}, expected 0")
    details.append("H2(Z/2) = 0 (cokernel identification valid)")
    a = Z2.generator("a")
    gen_cycle = [((a, a, a), 1)]
    from .groups import named_hom
    H_s3, coords = induced_h3_coords(named_hom("a_in_s3"), gen_cycle)
    factors = H_s3.factor_list()
    details.append(f"H3(S3) = {H_s3.descriptor}; image of the H3(Z/2) generator "
                   f"has coordinates {coords}")
    # relations of Z/6 (+) Z/6 plus the image (u, -u)
    k = len(factors)
    rel_cols = []
    for i, d in enumerate(factors):
        if d:
            col = [0] * (2 * k)
            col[i] = d
            rel_cols.append(col)
            col2 = [0] * (2 * k)
            col2[k + i] = d
            rel_cols.append(col2)
    image = [c for c in coords] + [-c for c in coords]
    rel_cols.append(image)
    presentation = transpose(rel_cols)
    invs = invariant_factors(presentation)
    free = 2 * k - len(invs)
    desc = AbelianGroupDescriptor.from_factors(free, [d for d in invs if d > 1])
    return desc, details


# -- R-module invariants ----------------------------------------------------------

@dataclass(frozen=True)
class RModuleInvariants:
    underlying: AbelianGroupDescriptor
    free_eigen: tuple          # (mult of +1, mult of -1) on the free quotient
    socle_eigen: tuple         # ((p, (m_plus, m_minus)), ...) per torsion prime

    def __str__(self):
        socle = ", ".join(f"p={p}: +{m[0]}/-{m[1]}" for p, m in self.socle_eigen)
        return (f"[{self.underlying}; a on free part +{self.free_eigen[0]}/"
                f"-{self.free_eigen[1]}; socle {socle or '-'}]")


def r_module_invariants(M) -> RModuleInvariants:
    """Invariants of Coker(M : R^m -> R^n) with the a-action."""
    n = len(M)
    F = flatten_r_matrix(M)
    N = 2 * n
    snf = smith_normal_form(F) if F and F[0] else None
    if snf is None:
        diag = []
        U = intlin.identity_matrix(N)
        U_inv = intlin.identity_matrix(N)
    else:
        diag = snf.diagonal()
        U, U_inv = snf.U, snf.U_inv
    diag = list(diag) + [0] * (N - len(diag))
    # a acts by swapping each pair of flattened coordinates
    A = [[0] * N for _ in range(N)]
    for i in range(n):
        A[2 * i][2 * i + 1] = 1
        A[2 * i + 1][2 * i] = 1
    Ay = intlin.matmul(intlin.matmul(U, A), U_inv)
    free_idx = [i for i in range(N) if diag[i] == 0]
    torsion = [d for d in diag if d > 1]
    underlying = AbelianGroupDescriptor.from_factors(len(free_idx), torsion)
    # free quotient: the submatrix on free coordinates
    tr = sum(Ay[i][i] for i in free_idx)
    k = len(free_idx)
    assert (k + tr) % 2 == 0 and (k - tr) % 2 == 0
    free_eigen = ((k + tr) // 2, (k - tr) // 2)
    primes = sorted({p for d in torsion for p in _factorize(d)})
    socle = []
    for p in primes:
        T = [i for i in range(N) if diag[i] and diag[i] % p == 0]
        alpha = [[0] * len(T) for _ in T]
        for col, i in enumerate(T):
            for row, j in enumerate(T):
                c = (diag[i] // p) * Ay[j][i]
                c %= diag[j]
                step = diag[j] // p
                assert c % step == 0
                alpha[row][col] = (c // step) % p
        m_plus = _eigen_nullity(alpha, p, 1)
        if p == 2:
            m_minus = len(T) - m_plus
        else:
            m_minus = _eigen_nullity(alpha, p, -1)
            assert m_plus + m_minus == len(T)
        socle.append((p, (m_plus, m_minus)))
    return RModuleInvariants(underlying, free_eigen, tuple(socle))


def _eigen_nullity(alpha, p, eig):
    n = len(alpha)
    M = [[(alpha[i][j] - (eig if i == j else 0)) % p for j in range(n)]
         for i in range(n)]
    return intlin.nullity_mod_p(M, p)


def reduce_matrix_to_R(M):
    return [[to_R(x) for x in row] for row in M]


@dataclass
class OrientabilityReport:
    inv_aug: RModuleInvariants
    by_character: dict           # w -> (invariants, "MATCH"/"MISMATCH")

    @property
    def passed(self):
        return (self.by_character[1][1] == "MATCH"
                and self.by_character[-1][1] == "MISMATCH")


def orientability_check(d2) -> OrientabilityReport:
    """Compare R (x) Coker(d2) with R (x) Coker(involuted-transpose d2) for
    both characters.  Only the trivial character can match, which forces
    orientability."""
    inv_aug = r_module_invariants(reduce_matrix_to_R(d2))
    by_character = {}
    for chi in (TRIVIAL_CHARACTER, TWISTED_CHARACTER):
        J = involuted_transpose(d2, chi)
        inv = r_module_invariants(reduce_matrix_to_R(J))
        verdict = "MATCH" if inv == inv_aug else "MISMATCH"
        by_character[chi.w] = (inv, verdict)
    return OrientabilityReport(inv_aug, by_character)
