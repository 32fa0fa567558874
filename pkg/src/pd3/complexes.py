"""Free chain complexes over a group ring.

Conventions (fixed once, used everywhere):

  * Chains are abstract tuples with ring coefficients on the left:
    a degree-d chain is (x_1, ..., x_n) meaning sum x_j * basis_j.
  * A differential matrix M has entry M[i][j] = coefficient of basis_i in
    d(basis_j), i.e. columns describe images of basis vectors.
  * Composition of two matrices therefore multiplies the *inner* map's
    coefficients on the left: compose(outer, inner)[i][j]
    = sum_k inner[k][j] * outer[i][k].  (Over a commutative ring this is
    ordinary matrix multiplication; over a group ring the order matters.)

The complexes built here model presentation 2-complexes: d1 has columns
(x - 1) for each generator x, d2 is the matrix of Fox derivatives of the
relators, and a 3-cell can be attached along any 2-cycle.  Conjugate
transposition (entrywise involution g -> w1(g) g^{-1} plus reindexing) sends
a complex of length three to another chain complex; the complexes of this
package are fixed points of that duality in the right bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch, NotAComplex, NotACycle, NotInvertible
from .groups import GroupContext, GroupHom
from .ring import (OrientationCharacter, RingElement, TRIVIAL_CHARACTER,
                   augment, format_element, induced_ring_map, involute,
                   parse_element, restrict_block_left, to_R)
from .words import Word

# -- matrices over the group ring --------------------------------------------


def zero_gmatrix(ctx, rows, cols):
    z = RingElement.zero(ctx)
    return [[z for _ in range(cols)] for _ in range(rows)]


def identity_gmatrix(ctx, n):
    one = RingElement.one(ctx)
    z = RingElement.zero(ctx)
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def gmat_eq(A, B):
    return A == B


def gmat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def gmat_neg(A):
    return [[-x for x in row] for row in A]


def compose(outer, inner):
    """Matrix of (outer map) after (inner map); see module docstring."""
    rows = len(outer)
    cols = len(inner[0]) if inner else 0
    if rows == 0 or cols == 0:
        return [[] for _ in range(rows)]
    mids = len(inner)
    ctx = inner[0][0].context
    out = []
    for i in range(rows):
        out_row = []
        for j in range(cols):
            acc = RingElement.zero(ctx)
            for k in range(mids):
                ik = inner[k][j]
                ok = outer[i][k]
                if ik.terms and ok.terms:
                    acc = acc + ik * ok
            out_row.append(acc)
        out.append(out_row)
    return out


def apply_gmatrix(M, coords):
    """Image coordinates of a chain: (d x)_i = sum_j x_j * M[i][j]."""
    out = []
    for i in range(len(M)):
        acc = None
        for j, xj in enumerate(coords):
            if xj.terms and M[i][j].terms:
                term = xj * M[i][j]
                acc = term if acc is None else acc + term
        if acc is None:
            ctx = coords[0].context if coords else M[i][0].context
            acc = RingElement.zero(ctx)
        out.append(acc)
    return out


def involuted_transpose(M, chi: OrientationCharacter = TRIVIAL_CHARACTER):
    rows = len(M)
    cols = len(M[0]) if M else 0
    return [[involute(M[i][j], chi) for i in range(rows)] for j in range(cols)]


def gmatrix_map(M, fn):
    return [[fn(x) for x in row] for row in M]


def parse_gmatrix(ctx, rows):
    return [[parse_element(ctx, cell) for cell in row] for row in rows]


def format_gmatrix(M):
    return [[format_element(x) for x in row] for row in M]


def invert_gmatrix(M, ctx):
    """Two-sided inverse via row reduction with unit pivots (+-g entries).

    Row operations act by right multiplication of coefficients, matching the
    compose() semantics; the result W satisfies compose(W, M) = I and is then
    verified on the other side too.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotInvertible("matrix is not square")
    A = [list(row) for row in M]
    W = identity_gmatrix(ctx, n)

    def is_unit(x):
        return len(x.terms) == 1 and abs(next(iter(x.terms.values()))) == 1

    def unit_inverse(x):
        (g, c), = x.terms.items()
        return RingElement.from_element(g.inverse(), c)  # (c g)^-1 = c g^-1 when c = +-1

    for col in range(n):
        piv = next((i for i in range(col, n) if is_unit(A[i][col])), None)
        if piv is None:
            raise NotInvertible(f"no unit pivot in column {col}")
        A[col], A[piv] = A[piv], A[col]
        W[col], W[piv] = W[piv], W[col]
        inv = unit_inverse(A[col][col])
        A[col] = [x * inv for x in A[col]]
        W[col] = [x * inv for x in W[col]]
        for i in range(n):
            if i != col and A[i][col].terms:
                f = A[i][col]
                A[i] = [x - y * f for x, y in zip(A[i], A[col])]
                W[i] = [x - y * f for x, y in zip(W[i], W[col])]
    if A != identity_gmatrix(ctx, n):
        raise NotInvertible("reduction did not reach the identity")
    if compose(M, W) != identity_gmatrix(ctx, n):
        raise NotInvertible("one-sided inverse only")
    return W


# -- the complex --------------------------------------------------------------

class FreeComplex:
    """A finite free chain complex over Z[G], degrees 0..top."""

    def __init__(self, ctx: GroupContext, ranks, diffs, labels=None):
        self.ctx = ctx
        self.ranks = list(ranks)
        self.diffs = {int(d): m for d, m in diffs.items()}
        if labels is None:
            labels = [[f"x{d}_{j}" for j in range(r)] for d, r in enumerate(self.ranks)]
        self.labels = [list(l) for l in labels]
        self.validate()

    @property
    def top(self):
        return len(self.ranks) - 1

    def diff(self, d):
        return self.diffs[d]

    def validate(self):
        for d in range(1, self.top + 1):
            M = self.diffs[d]
            if len(M) != self.ranks[d - 1] or any(len(row) != self.ranks[d] for row in M):
                raise NotAComplex(f"differential {d} has the wrong shape")
        for d in range(1, self.top):
            prod = compose(self.diffs[d], self.diffs[d + 1])
            if any(x.terms for row in prod for x in row):
                raise NotAComplex(f"d{d} o d{d + 1} != 0")

    def boundary(self, d, coords):
        if d == 0 or d > self.top:
            return [RingElement.zero(self.ctx)] * (self.ranks[d - 1] if d else 0)
        return apply_gmatrix(self.diffs[d], coords)

    def zero_chain(self, d):
        return [RingElement.zero(self.ctx)] * self.ranks[d]

    def basis_chain(self, d, j):
        out = self.zero_chain(d)
        out[j] = RingElement.one(self.ctx)
        return out

    def label_index(self, label):
        for d, labs in enumerate(self.labels):
            if label in labs:
                return d, labs.index(label)
        raise KeyError(label)


# -- Fox calculus -------------------------------------------------------------

def fox_derivative(word: Word, sym: str, ctx: GroupContext) -> RingElement:
    """d(word)/d(sym) evaluated in Z[ctx].

    Characterized by d(x)/d(x) = 1, d(x^-1)/d(x) = -x^-1 and the product rule
    d(uv) = d(u) + u d(v); computed by one left-to-right scan with a running
    prefix.
    """
    result = RingElement.zero(ctx)
    prefix = ctx.identity
    for letter_sym, sign in word.letters():
        g = ctx.generator(letter_sym)
        if sign > 0:
            if letter_sym == sym:
                result = result + RingElement.from_element(prefix)
            prefix = prefix * g
        else:
            prefix = prefix * g.inverse()
            if letter_sym == sym:
                result = result - RingElement.from_element(prefix)
    return result


RELATOR_LABELS = ("r", "s", "t")


def build_fox_lyndon(ctx: GroupContext, relators=None) -> FreeComplex:
    """The chain complex of the presentation 2-complex, over Z[ctx]:
    d1 columns are (x - 1), d2 is the Fox Jacobian of the relators."""
    gens = ctx.generators
    rels = ctx.relators if relators is None else tuple(relators)
    for rel in rels:
        if not ctx.element(rel).is_identity():
            raise ValueError(f"relator {rel} does not hold in {ctx.id}")
    one = RingElement.one(ctx)
    d1 = [[RingElement.from_element(ctx.generator(x)) - one for x in gens]]
    d2 = [[fox_derivative(rel, x, ctx) for rel in rels] for x in gens]
    labels = [["1"], list(gens), list(RELATOR_LABELS[: len(rels)])]
    return FreeComplex(ctx, [1, len(gens), len(rels)], {1: d1, 2: d2}, labels)


def attach_top_cell(cx: FreeComplex, z, label="g") -> FreeComplex:
    """Attach one 3-cell along the 2-chain z; z must be a 2-cycle."""
    if cx.top != 2:
        raise NotAComplex("can only attach a 3-cell to a 2-dimensional complex")
    residual = cx.boundary(2, z)
    if any(x.terms for x in residual):
        raise NotACycle([format_element(x) for x in residual])
    d3 = [[zj] for zj in z]
    return FreeComplex(cx.ctx, cx.ranks + [1],
                       {1: cx.diffs[1], 2: cx.diffs[2], 3: d3},
                       cx.labels + [[label]])


# -- basis changes ------------------------------------------------------------

class BasisChange:
    """Per-degree invertible matrices; columns are the new basis vectors in
    old coordinates.  Inverses are computed and verified two-sided."""

    def __init__(self, ctx: GroupContext, mats: dict, labels: dict | None = None):
        self.ctx = ctx
        self.mats = {int(d): m for d, m in mats.items()}
        self.invs = {d: invert_gmatrix(m, ctx) for d, m in self.mats.items()}
        self.labels = {int(d): list(v) for d, v in (labels or {}).items()}

    def matrix(self, d, rank):
        return self.mats.get(d) or identity_gmatrix(self.ctx, rank)

    def inverse(self, d, rank):
        return self.invs.get(d) or identity_gmatrix(self.ctx, rank)


def change_basis(cx: FreeComplex, bc: BasisChange) -> FreeComplex:
    if bc.ctx.id != cx.ctx.id:
        raise ContextMismatch("basis change lives over a different group")
    diffs = {}
    for d in range(1, cx.top + 1):
        P = bc.matrix(d, cx.ranks[d])
        Q_inv = bc.inverse(d - 1, cx.ranks[d - 1])
        diffs[d] = compose(Q_inv, compose(cx.diffs[d], P))
    labels = [bc.labels.get(d, cx.labels[d]) for d in range(cx.top + 1)]
    return FreeComplex(cx.ctx, cx.ranks, diffs, labels)


# -- duality ------------------------------------------------------------------

def dual_conjugate_transpose(cx: FreeComplex,
                             chi: OrientationCharacter = TRIVIAL_CHARACTER) -> FreeComplex:
    """Conjugate and reindex the dual: degree k of the result has the rank of
    degree top-k, with differentials the involuted transposes in reversed
    order.  Applying it twice gives back the original."""
    top = cx.top
    ranks = [cx.ranks[top - k] for k in range(top + 1)]
    diffs = {k: involuted_transpose(cx.diffs[top + 1 - k], chi) for k in range(1, top + 1)}
    labels = [[f"{lab}^" for lab in cx.labels[top - k]] for k in range(top + 1)]
    return FreeComplex(cx.ctx, ranks, diffs, labels)


@dataclass(frozen=True)
class SelfDualityReport:
    hermitian_ok: bool
    transpose_ok: bool
    hermitian_residual: tuple
    transpose_residual: tuple

    @property
    def passed(self):
        return self.hermitian_ok and self.transpose_ok


def self_duality_check(cx: FreeComplex,
                       chi: OrientationCharacter = TRIVIAL_CHARACTER) -> SelfDualityReport:
    """(i) d2 equals its involuted transpose; (ii) d3 is the involuted
    transpose of d1."""
    d2 = cx.diffs[2]
    h_diff = gmat_add(d2, gmat_neg(involuted_transpose(d2, chi)))
    t_diff = gmat_add(cx.diffs[3], gmat_neg(involuted_transpose(cx.diffs[1], chi)))
    h_res = tuple(format_element(x) for row in h_diff for x in row if x.terms)
    t_res = tuple(format_element(x) for row in t_diff for x in row if x.terms)
    return SelfDualityReport(not h_res, not t_res, h_res, t_res)


# -- push-forwards ------------------------------------------------------------

@dataclass
class IntComplex:
    """A finite chain complex of free abelian groups (integer matrices)."""

    ranks: list
    diffs: dict  # degree -> integer matrix

    def __post_init__(self):
        from .intlin import matmul
        for d in range(1, len(self.ranks) - 1):
            A, B = self.diffs[d], self.diffs[d + 1]
            if A and A[0] and B and B[0]:
                prod = matmul(A, B)
                if any(x for row in prod for x in row):
                    raise NotAComplex(f"d{d} o d{d + 1} != 0 after push-forward")

    @property
    def top(self):
        return len(self.ranks) - 1


def push_to_integers(cx: FreeComplex) -> IntComplex:
    """Apply the augmentation entrywise: the complex of the base space."""
    diffs = {d: [[augment(x) for x in row] for row in cx.diffs[d]]
             for d in range(1, cx.top + 1)}
    return IntComplex(list(cx.ranks), diffs)


def push_along_hom(cx: FreeComplex, hom: GroupHom) -> FreeComplex:
    if cx.ctx.id != hom.source.id:
        raise ContextMismatch(f"{cx.ctx.id} complex fed to {hom.name}")
    diffs = {d: gmatrix_map(cx.diffs[d], lambda x: induced_ring_map(hom, x))
             for d in range(1, cx.top + 1)}
    return FreeComplex(hom.target, cx.ranks, diffs, cx.labels)


def push_to_R(cx: FreeComplex):
    """Entrywise reduction to R = Z[a]/(a^2-1) (kills b and c).
    Returns (ranks, diffs) with RElement matrices."""
    diffs = {d: [[to_R(x) for x in row] for row in cx.diffs[d]]
             for d in range(1, cx.top + 1)}
    return list(cx.ranks), diffs


def restrict_complex(cx: FreeComplex) -> FreeComplex:
    """Restriction of scalars along Pi' < Pi: ranks double, each entry m
    becomes the 2x2 block of m acting on coordinates over the basis
    {cell, a*cell}."""
    from .groups import PI, PI_PRIME
    if cx.ctx.id != PI.id:
        raise ContextMismatch("restriction of scalars is along pi' < pi")
    ranks = [2 * r for r in cx.ranks]
    diffs = {}
    for d in range(1, cx.top + 1):
        M = cx.diffs[d]
        rows, cols = cx.ranks[d - 1], cx.ranks[d]
        big = zero_gmatrix(PI_PRIME, 2 * rows, 2 * cols)
        for i in range(rows):
            for j in range(cols):
                block = restrict_block_left(M[i][j])
                for bi in range(2):
                    for bj in range(2):
                        big[2 * i + bi][2 * j + bj] = block[bi][bj]
        diffs[d] = big
    labels = [[t for lab in labs for t in (lab, f"a.{lab}")] for labs in cx.labels]
    return FreeComplex(PI_PRIME, ranks, diffs, labels)


def flatten_r_matrix(M):
    """R-matrix -> integer matrix, each u + v*a becoming [[u, v], [v, u]]."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    out = [[0] * (2 * cols) for _ in range(2 * rows)]
    for i in range(rows):
        for j in range(cols):
            e = M[i][j]
            out[2 * i][2 * j] = e.u
            out[2 * i][2 * j + 1] = e.v
            out[2 * i + 1][2 * j] = e.v
            out[2 * i + 1][2 * j + 1] = e.u
    return out


def mod2_matrix(M_int):
    return [[x & 1 for x in row] for row in M_int]


# -- the complex file format ---------------------------------------------------

def complex_to_payload(cx: FreeComplex) -> dict:
    """Serializable form: group, ranks, differentials (element strings, one
    matrix per positive degree), basis_labels."""
    return {
        "group": cx.ctx.id,
        "ranks": list(cx.ranks),
        "differentials": [format_gmatrix(cx.diffs[d]) for d in range(1, cx.top + 1)],
        "basis_labels": [list(l) for l in cx.labels],
    }


def complex_from_payload(payload: dict) -> FreeComplex:
    from .groups import context
    ctx = context(payload["group"])
    diffs = {d + 1: parse_gmatrix(ctx, rows)
             for d, rows in enumerate(payload["differentials"])}
    return FreeComplex(ctx, payload["ranks"], diffs, payload["basis_labels"])
