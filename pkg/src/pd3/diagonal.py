"""The tensor square C (x) C and equivariant diagonal approximations.

A TensorElement is a finitely supported integer combination of elementary
tensors (g * cell_i) (x) (h * cell_j); the group acts diagonally,
g.(x (x) y) = (gx) (x) (gy).  The boundary follows the Koszul rule
d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy, and the transposition is
tau(x (x) y) = (-1)^{pq} y (x) x; tau is a chain map and an involution.

A DiagonalTable stores the value of a diagonal approximation on each basis
cell in degrees 0..2 and extends equivariantly; on 0-chains the diagonal is
forced to be g -> g (x) g.  Verification modes:

  * counit:    (eps (x) 1) Delta = id = (1 (x) eps) Delta on each cell,
  * chain map: d Delta(cell) = Delta(d cell) in degrees 1 and 2,
  * embedding compatibility: (iota (x) iota) Delta_K = Delta_L iota for a
    chain embedding iota of the small complex into the big one,
  * collapse residuals (informational): (rho (x) rho) Delta_L - Delta_K rho
    for a chain retraction rho; these are genuinely nonzero on some cells,
    which is why the certified direction is the embedding one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContextMismatch
from .groups import GroupElement, GroupHom
from .ring import RingElement, induced_ring_map
from .complexes import FreeComplex, apply_gmatrix


class TensorElement:
    """Element of (C (x) C); keys are ((p, i, g), (q, j, h))."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = self.terms.get(key, 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return TensorElement(terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, n: int):
        return TensorElement({k: n * c for k, c in self.terms.items()})

    def act(self, g: GroupElement):
        """Diagonal action (g (x) g)."""
        return TensorElement({((p, i, g * x), (q, j, g * y)): c
                              for ((p, i, x), (q, j, y)), c in self.terms.items()})

    def part(self, p: int, q: int):
        return TensorElement({k: c for k, c in self.terms.items()
                              if k[0][0] == p and k[1][0] == q})

    def total_degrees(self):
        return {k[0][0] + k[1][0] for k in self.terms}

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


def elementary(p, i, g, q, j, h, coeff=1) -> TensorElement:
    return TensorElement({((p, i, g), (q, j, h)): coeff})


def tensor_of_chains(xs, p, ys, q) -> TensorElement:
    """(sum x_i cell_i) (x) (sum y_j cell_j) expanded into group terms."""
    out = {}
    for i, x in enumerate(xs):
        if not x.terms:
            continue
        for j, y in enumerate(ys):
            if not y.terms:
                continue
            for g, cg in x.terms.items():
                for h, ch in y.terms.items():
                    key = ((p, i, g), (q, j, h))
                    out[key] = out.get(key, 0) + cg * ch
    return TensorElement(out)


def tensor_boundary(t: TensorElement, cx: FreeComplex) -> TensorElement:
    """Koszul boundary, using the differentials of cx on both factors."""
    out = {}

    def emit(key, c):
        out[key] = out.get(key, 0) + c

    for ((p, i, g), (q, j, h)), c in t.terms.items():
        if p:
            col = [cx.diffs[p][k][i] for k in range(cx.ranks[p - 1])]
            for k, entry in enumerate(col):
                for g2, c2 in (RingElement.from_element(g) * entry).terms.items():
                    emit(((p - 1, k, g2), (q, j, h)), c * c2)
        if q:
            sign = -1 if p % 2 else 1
            col = [cx.diffs[q][k][j] for k in range(cx.ranks[q - 1])]
            for k, entry in enumerate(col):
                for h2, c2 in (RingElement.from_element(h) * entry).terms.items():
                    emit(((p, i, g), (q - 1, k, h2)), sign * c * c2)
    return TensorElement(out)


def transpose_tau(t: TensorElement) -> TensorElement:
    """tau(x (x) y) = (-1)^{pq} y (x) x."""
    out = {}
    for (left, right), c in t.terms.items():
        sign = -1 if (left[0] * right[0]) % 2 else 1
        key = (right, left)
        out[key] = out.get(key, 0) + sign * c
    return TensorElement(out)


def counit_left(t: TensorElement, cx: FreeComplex, degree: int):
    """(eps (x) 1) t as a degree-`degree` chain (eps kills positive degrees)."""
    out = cx.zero_chain(degree)
    for ((p, i, g), (q, j, h)), c in t.terms.items():
        if p == 0 and q == degree:
            out[j] = out[j] + RingElement.from_element(h, c)
    return out


def counit_right(t: TensorElement, cx: FreeComplex, degree: int):
    out = cx.zero_chain(degree)
    for ((p, i, g), (q, j, h)), c in t.terms.items():
        if q == 0 and p == degree:
            out[i] = out[i] + RingElement.from_element(g, c)
    return out


def format_tensor(t: TensorElement, cx: FreeComplex) -> str:
    if t.is_zero():
        return "0"
    bits = []
    for ((p, i, g), (q, j, h)), c in sorted(
            t.terms.items(),
            key=lambda kv: (kv[0][0][0], kv[0][1][0], kv[0][0][1], kv[0][1][1],
                            kv[0][0][2].shortlex_key(), kv[0][1][2].shortlex_key())):
        lab_l = cx.labels[p][i]
        lab_r = cx.labels[q][j]
        gl = str(g) if not g.is_identity() else ""
        hl = str(h) if not h.is_identity() else ""
        left = f"{gl}.{lab_l}" if gl else lab_l
        right = f"{hl}.{lab_r}" if hl else lab_r
        bits.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{left}(x){right}")
    return " ".join(bits)


# -- diagonal tables ----------------------------------------------------------

class DiagonalTable:
    """Values of a diagonal approximation on the basis cells of degrees 0..2."""

    def __init__(self, cx: FreeComplex, cells: dict):
        self.cx = cx
        self.cells = dict(cells)  # label -> TensorElement
        for label, t in self.cells.items():
            d, _ = cx.label_index(label)
            degs = t.total_degrees()
            if degs - {d}:
                raise ValueError(f"table value for {label} has degrees {degs}, expected {d}")

    def value(self, degree: int, index: int) -> TensorElement:
        return self.cells[self.cx.labels[degree][index]]


def diagonal_of_chain(table: DiagonalTable, coords, degree: int) -> TensorElement:
    """Extend the table Z-linearly and equivariantly to a chain.

    Degree 0 needs no table: the diagonal of sum n_g g is sum n_g (g (x) g).
    """
    cx = table.cx
    out = TensorElement.zero()
    for j, x in enumerate(coords):
        for g, c in x.terms.items():
            if degree == 0:
                out = out + elementary(0, 0, g, 0, 0, g, c)
            else:
                out = out + table.value(degree, j).act(g).scale(c)
    return out


@dataclass
class CellReport:
    label: str
    ok: bool
    residual: str

    def __str__(self):
        return f"{self.label}: {'ok' if self.ok else 'residual ' + self.residual}"


@dataclass
class DiagonalReport:
    mode: str
    cells: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.ok for c in self.cells)

    def failures(self):
        return [c for c in self.cells if not c.ok]

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return f"diagonal {self.mode}: {status} ({len(self.cells)} cells)"


def verify_counit(table: DiagonalTable) -> DiagonalReport:
    cx = table.cx
    report = DiagonalReport("counit")
    for d in range(0, 3):
        for j in range(cx.ranks[d]):
            t = table.value(d, j)
            want = cx.basis_chain(d, j)
            left = counit_left(t, cx, d)
            right = counit_right(t, cx, d)
            ok = left == want and right == want
            res = "" if ok else (
                f"(eps(x)1)-id: {[str(x - w) for x, w in zip(left, want)]}; "
                f"(1(x)eps)-id: {[str(x - w) for x, w in zip(right, want)]}")
            report.cells.append(CellReport(cx.labels[d][j], ok, res))
    return report


def verify_chain_map(table: DiagonalTable) -> DiagonalReport:
    cx = table.cx
    report = DiagonalReport("chain_map")
    for d in (1, 2):
        for j in range(cx.ranks[d]):
            lhs = tensor_boundary(table.value(d, j), cx)
            boundary = apply_gmatrix(cx.diffs[d], cx.basis_chain(d, j))
            rhs = diagonal_of_chain(table, boundary, d - 1)
            diff = lhs - rhs
            report.cells.append(CellReport(cx.labels[d][j], diff.is_zero(),
                                           format_tensor(diff, cx)))
    return report


# -- chain maps (embeddings and collapses) ------------------------------------

class ChainMap:
    """A degreewise map of complexes covering a group homomorphism.

    mats[d][i][j] = coefficient (in the target ring) of target cell i in the
    image of source cell j; coefficients of chains are pushed through the
    group homomorphism and multiply on the left.
    """

    def __init__(self, source: FreeComplex, target: FreeComplex,
                 hom: GroupHom, mats: dict, name=""):
        if source.ctx.id != hom.source.id or target.ctx.id != hom.target.id:
            raise ContextMismatch("chain map does not match its homomorphism")
        self.source = source
        self.target = target
        self.hom = hom
        self.mats = {int(d): m for d, m in mats.items()}
        self.name = name or hom.name
        self.check_chain_map()

    def apply_chain(self, d: int, coords):
        pushed = [induced_ring_map(self.hom, x) for x in coords]
        return apply_gmatrix(self.mats[d], pushed)

    def check_chain_map(self):
        degrees = sorted(self.mats)
        for d in degrees:
            if d == 0 or d - 1 not in self.mats:
                continue
            # rho(d(cell)) == d(rho(cell)) for every source cell
            for j in range(self.source.ranks[d]):
                src_boundary = apply_gmatrix(self.source.diffs[d],
                                             self.source.basis_chain(d, j))
                lhs = self.apply_chain(d - 1, src_boundary)
                img = self.apply_chain(d, self.source.basis_chain(d, j))
                rhs = apply_gmatrix(self.target.diffs[d], img)
                if lhs != rhs:
                    raise ValueError(
                        f"{self.name} is not a chain map on degree-{d} cell {j}")

    def apply_tensor(self, t: TensorElement) -> TensorElement:
        out = TensorElement.zero()
        for ((p, i, g), (q, j, h)), c in t.terms.items():
            left = self._image_terms(p, i, g)
            right = self._image_terms(q, j, h)
            for (k, g2), c2 in left:
                for (l, h2), c3 in right:
                    out = out + elementary(p, k, g2, q, l, h2, c * c2 * c3)
        return out

    def _image_terms(self, d, i, g):
        """Image of g * cell_i as [( (index, group element), coeff ), ...]."""
        img_g = RingElement.from_element(self.hom(g))
        out = []
        for k in range(self.target.ranks[d]):
            entry = self.mats[d][k][i]
            if entry.terms:
                for g2, c in (img_g * entry).terms.items():
                    out.append(((k, g2), c))
        return out


def verify_embedding_compat(table_small: DiagonalTable, table_big: DiagonalTable,
                            emb: ChainMap) -> DiagonalReport:
    """(iota (x) iota) Delta_small(cell) = Delta_big(iota cell), all cells."""
    report = DiagonalReport(f"embedding_compat[{emb.name}]")
    small = table_small.cx
    for d in range(0, 3):
        for j in range(small.ranks[d]):
            lhs = emb.apply_tensor(table_small.value(d, j))
            img = emb.apply_chain(d, small.basis_chain(d, j))
            rhs = diagonal_of_chain(table_big, img, d)
            diff = lhs - rhs
            report.cells.append(CellReport(small.labels[d][j], diff.is_zero(),
                                           format_tensor(diff, table_big.cx)))
    return report


def collapse_residuals(table_big: DiagonalTable, table_small: DiagonalTable,
                       rho: ChainMap) -> DiagonalReport:
    """(rho (x) rho) Delta_big(cell) - Delta_small(rho cell), informational."""
    report = DiagonalReport(f"collapse_residuals[{rho.name}]")
    big = table_big.cx
    for d in range(0, 3):
        for j in range(big.ranks[d]):
            lhs = rho.apply_tensor(table_big.value(d, j))
            img = rho.apply_chain(d, big.basis_chain(d, j))
            rhs = diagonal_of_chain(table_small, img, d)
            diff = lhs - rhs
            report.cells.append(CellReport(big.labels[d][j], diff.is_zero(),
                                           format_tensor(diff, table_small.cx)))
    return report
