"""The named verification checks and their reports.

Each check certifies one computational claim about the complexes X (over
Z[S3]), Y and Z (over Z[Pi], Pi the amalgam of two S3's along <a>):
differentials, cycles, diagonalization, self-duality, homology, annihilator
principality, the degree-3 generator, bounded kernel certificates over the
infinite ring, the diagonal approximation, the orientability obstruction, and
group homology in degree 3.

Statuses: PASS / FAIL / PARTIAL.  PARTIAL is reserved for the ball-truncated
checks (Y5, Y6): those claims live over an infinite group ring, and a run at
radius L certifies the claim on ball(L) only, which the report says
explicitly.  A FAIL always carries a reproducible residual in its details.

Checks are pure functions of the catalog, so any check can run in isolation;
shared intermediates (complexes, tables, embeddings) are built lazily per
workspace and memoized.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .errors import UnknownCheck
from .groups import PI, S3, Z2, Z3, named_hom
from .ring import RingElement, TRIVIAL_CHARACTER, format_element, involute, \
    parse_element
from .complexes import dual_conjugate_transpose, format_gmatrix, gmat_eq, \
    parse_gmatrix, push_to_integers, restrict_complex, self_duality_check
from .diagonal import ChainMap, collapse_residuals, verify_chain_map, \
    verify_counit, verify_embedding_compat
from .homology import annihilator_is_principal, annihilator_lattice, \
    bar_homology, betti_mod2, bounded_injectivity, bounded_kernel_search, \
    flatten_complex, h3_generator_check, homology, lifting_identity_check, \
    mayer_vietoris_h3, orientability_check
from .corpus import Catalog, basis_change, cycle_chain, default_catalog, \
    diagonal_table, displayed_matrix, expected_descriptor, expected_homology, \
    named_element, presentation_complex, standard_complex
from . import intlin


@dataclass
class CheckResult:
    id: str
    title: str
    status: str                 # PASS | FAIL | PARTIAL | SKIP
    claim: str
    details: list = field(default_factory=list)
    radius: int | None = None   # set for ball-truncated checks
    wall_time: float = 0.0

    @property
    def status_text(self):
        if self.status == "PARTIAL" and self.radius is not None:
            return f"PARTIAL({self.radius})"
        return self.status


class Workspace:
    """Lazily built shared objects over one catalog."""

    def __init__(self, catalog: Catalog, max_length: int = 5):
        self.catalog = catalog
        self.max_length = max_length
        self._cache = {}

    def _memo(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    def presentation(self, which):
        return self._memo(("pres", which),
                          lambda: presentation_complex(self.catalog, which))

    def standard(self, which):
        return self._memo(("std", which),
                          lambda: standard_complex(self.catalog, which))

    def table_y(self):
        return self._memo("table_y",
                          lambda: diagonal_table(self.catalog, self.standard("y")))

    def table_x(self):
        return self._memo("table_x",
                          lambda: diagonal_table(self.catalog, self.standard("x"),
                                                 restrict_to_b=True))

    def embedding(self, name):
        def build():
            cols = {"include_b": [["1", "0"], ["0", "1"], ["0", "0"]],
                    "include_c": [["1", "0"], ["0", "0"], ["0", "1"]]}[name]
            m = parse_gmatrix(PI, cols)
            return ChainMap(self.standard("x"), self.standard("y"),
                            named_hom(name),
                            {0: parse_gmatrix(PI, [["1"]]), 1: m, 2: m}, name)
        return self._memo(("emb", name), build)

    def collapse(self, name):
        def build():
            from .ring import induced_ring_map
            from .complexes import compose
            hom = named_hom(name)
            orig = {"retract_b": ([["1", "0", "0"], ["0", "1", "0"]],
                                  [["1", "0", "1"], ["0", "1", "0"]]),
                    "retract_c": ([["1", "0", "0"], ["0", "0", "1"]],
                                  [["1", "1", "0"], ["0", "0", "1"]])}[name]
            P = basis_change(self.catalog, "y")
            Q = basis_change(self.catalog, "x")
            mats = {0: parse_gmatrix(S3, [["1"]]), 3: parse_gmatrix(S3, [["1"]])}
            for d, cells in ((1, orig[0]), (2, orig[1])):
                Pd = P.matrix(d, 3)
                mixed = [[sum((induced_ring_map(hom, Pd[k][j]) * parse_element(S3, cells[i][k])
                               for k in range(3)), RingElement.zero(S3))
                          for j in range(3)] for i in range(2)]
                mats[d] = compose(Q.inverse(d, 2), mixed)
            return ChainMap(self.standard("y"), self.standard("x"), hom, mats, name)
        return self._memo(("col", name), build)


def _golden(ws, which, key, actual, details):
    want = displayed_matrix(ws.catalog, which, key)
    ok = gmat_eq(actual, want)
    if ok:
        details.append(f"{key}: matches")
    else:
        details.append(f"{key}: MISMATCH computed={format_gmatrix(actual)} "
                       f"expected={format_gmatrix(want)}")
    return ok


# -- check bodies ---------------------------------------------------------------

def check_x1(ws):
    K = ws.presentation("s3")
    details = []
    ok = _golden(ws, "x", "d1", K.diffs[1], details)
    ok &= _golden(ws, "x", "d2", K.diffs[2], details)
    return ok, details


def check_x2(ws):
    K = ws.presentation("s3")
    psi = cycle_chain(ws.catalog, "psi")
    residual = K.boundary(2, psi)
    ok = all(x.is_zero() for x in residual)
    details = [f"boundary of the attaching chain: "
               f"{[format_element(x) for x in residual]}"]
    return ok, details


def _diagonal_hermitian(cx, details):
    d2 = cx.diffs[2]
    n = len(d2)
    off = [(i, j) for i in range(n) for j in range(n) if i != j and d2[i][j].terms]
    ok = not off
    details.append("d2 off-diagonal zero" if ok else f"nonzero off-diagonal at {off}")
    herm = all(involute(d2[i][i], TRIVIAL_CHARACTER) == d2[i][i] for i in range(n))
    ok &= herm
    details.append("diagonal entries hermitian" if herm
                   else "diagonal entry not involution-fixed")
    return ok


def check_x3(ws):
    X = ws.standard("x")
    details = []
    ok = _diagonal_hermitian(X, details)
    ok &= _golden(ws, "x", "d1_new_basis", X.diffs[1], details)
    ok &= _golden(ws, "x", "d2_new_basis", X.diffs[2], details)
    ok &= _golden(ws, "x", "d3_new_basis", X.diffs[3], details)
    return ok, details


def _self_dual(cx, details):
    rep = self_duality_check(cx)
    details.append("d2 hermitian under involuted transpose: "
                   + ("ok" if rep.hermitian_ok else f"residual {rep.hermitian_residual}"))
    details.append("d3 = involuted transpose of d1: "
                   + ("ok" if rep.transpose_ok else f"residual {rep.transpose_residual}"))
    dual = dual_conjugate_transpose(cx)
    fixed = dual.diffs == cx.diffs and dual.ranks == cx.ranks
    details.append("conjugated reindexed dual equals the complex: "
                   + ("ok" if fixed else "NO"))
    return rep.passed and fixed


def check_x4(ws):
    details = []
    return _self_dual(ws.standard("x"), details), details


def check_x5(ws):
    details = []
    X = ws.standard("x")
    got_univ = homology(flatten_complex(X))
    want_univ = expected_homology(ws.catalog, "homology_x_universal")
    ok = got_univ == want_univ
    details.append(f"universal cover: {[str(h) for h in got_univ]}"
                   + ("" if ok else f" != expected {[str(h) for h in want_univ]}"))
    got = homology(push_to_integers(X))
    want = expected_homology(ws.catalog, "homology_x")
    ok2 = got == want
    details.append(f"base space: {[str(h) for h in got]}"
                   + ("" if ok2 else f" != expected {[str(h) for h in want]}"))
    return ok and ok2, details


def check_x6(ws):
    cat = ws.catalog
    details = []
    pairs = [("a + 1", named_element(cat, "annihilator_generator_a")),
             ("b^2*a + a - 1", named_element(cat, "annihilator_generator_b"))]
    ok = True
    for text, gen in pairs:
        x = parse_element(S3, text)
        good = annihilator_is_principal(x, gen)
        ok &= good
        details.append(f"Ann({text}) = ideal({format_element(gen)}): "
                       + ("equal as lattices" if good else "NOT equal"))
    details.append(f"Ann(1) = {annihilator_lattice(parse_element(S3, '1'))} (zero)")
    return ok, details


def check_x7(ws):
    cat = ws.catalog
    out = lifting_identity_check(
        ws.standard("x"),
        named_element(cat, "annihilator_generator_b"),
        named_element(cat, "lifting_multiplier_p"),
        named_element(cat, "lifting_multiplier_q"))
    return out.passed, out.details


def check_x8(ws):
    cat = ws.catalog
    out = h3_generator_check(ws.standard("x"),
                             named_element(cat, "nu"), named_element(cat, "beta"))
    return out.passed, out.details


def check_y1(ws):
    L = ws.presentation("pi")
    details = []
    ok = _golden(ws, "y", "d1", L.diffs[1], details)
    ok &= _golden(ws, "y", "d2", L.diffs[2], details)
    return ok, details


def check_y2(ws):
    details = []
    L = ws.presentation("pi")
    theta = cycle_chain(ws.catalog, "theta")
    residual = L.boundary(2, theta)
    cyc = all(x.is_zero() for x in residual)
    details.append("theta is a 2-cycle" if cyc else
                   f"boundary {[format_element(x) for x in residual]}")
    Y = ws.standard("y")
    ok = cyc and _diagonal_hermitian(Y, details)
    for key in ("d1_new_basis", "d2_new_basis", "d3_new_basis"):
        ok &= _golden(ws, "y", key, Y.diffs[int(key[1])], details)
    return ok, details


def check_y3(ws):
    details = []
    return _self_dual(ws.standard("y"), details), details


def _diagonal_entries(ws, which="y"):
    cx = ws.standard(which)
    return [cx.diffs[2][i][i] for i in range(3)]


def _claimed_generators(cat):
    return [named_element(cat, "annihilator_generator_a", PI),
            named_element(cat, "annihilator_generator_b", PI),
            named_element(cat, "annihilator_generator_c", PI)]


def check_y4(ws):
    details = []
    ok = True
    for d, gen, label in zip(_diagonal_entries(ws), _claimed_generators(ws.catalog),
                             ("f1", "f2", "f3")):
        zero = (gen * d).is_zero()
        ok &= zero
        details.append(f"({format_element(gen)}) * d2[{label}] = "
                       + ("0" if zero else format_element(gen * d)))
    return ok, details


def check_y5(ws):
    details = []
    L = ws.max_length
    status = "PARTIAL"
    for d, gen, label in zip(_diagonal_entries(ws), _claimed_generators(ws.catalog),
                             ("f1", "f2", "f3")):
        cert = bounded_kernel_search(d, L, gen)
        details.append(f"{label}: {cert.status}({cert.radius}), "
                       f"kernel rank {cert.kernel_rank}")
        if cert.status == "FAIL":
            status = "FAIL"
            details.extend("  " + line for line in cert.details)
        elif cert.status == "INCONCLUSIVE" and status != "FAIL":
            status = "INCONCLUSIVE"
            details.extend("  " + line for line in cert.details)
    details.append("bounded certificate only: claims verified on the ball of "
                   f"radius {L}, not over the whole group ring")
    return status, details


def check_y6(ws):
    Y = ws.standard("y")
    theta_f = [Y.diffs[3][i][0] for i in range(3)]
    cert = bounded_injectivity(theta_f, ws.max_length)
    details = [str(cert),
               "bounded certificate only: no annihilator of the attaching "
               f"cycle is supported on the ball of radius {ws.max_length}"]
    details.extend(cert.details)
    return ("PARTIAL" if cert.passed else "FAIL"), details


def check_y7(ws):
    got = homology(push_to_integers(ws.standard("y")))
    want = expected_homology(ws.catalog, "homology_y")
    details = [f"H_*(Y) = {[str(h) for h in got]}"]
    if got != want:
        details.append(f"expected {[str(h) for h in want]}")
    return got == want, details


def check_y8(ws):
    details = []
    Y = ws.standard("y")
    IY = push_to_integers(Y)
    got = betti_mod2(IY)
    want = list(ws.catalog.get("expected:betti_mod2_y"))
    ok = got == want
    details.append(f"mod-2 Betti numbers {got}" + ("" if ok else f" != {want}"))
    # u is the cocycle dual to the first 1-cell (the abelianization class);
    # cocycle condition: u(d2 f_k) = 0 mod 2
    d2 = IY.diffs[2]
    cocycle = all(d2[0][k] % 2 == 0 for k in range(3))
    ok &= cocycle
    details.append("u is a mod-2 cocycle" if cocycle else "u is NOT a cocycle")
    # boundaries vanish mod 2, so evaluating on kernel vectors evaluates on H2
    d3_mod2 = [[x % 2 for x in row] for row in IY.diffs[3]]
    if any(any(row) for row in d3_mod2):
        ok = False
        details.append("degree-3 boundary nonzero mod 2; pairing ill-defined")
    table = ws.table_y()
    cup = []
    for k in range(3):
        val = 0
        for ((p, i, g), (q, j, h)), c in table.value(2, k).terms.items():
            if p == 1 and q == 1 and i == 0 and j == 0:
                val += c  # both augmentations are 1 mod 2 on group elements
        cup.append(val % 2)
    details.append(f"(u cup u) on the 2-cells: {cup}")
    kernel2 = [v for v in intlin.kernel_basis([[x % 2 for x in row] for row in IY.diffs[2]])]
    # reduce kernel basis mod 2 and drop zero vectors
    classes = [[x % 2 for x in v] for v in kernel2]
    classes = [v for v in classes if any(v)]
    pairings = [sum(c * v for c, v in zip(cup, v)) % 2 for v in classes]
    nonzero = any(pairings)
    ok &= nonzero
    details.append(f"pairing with the mod-2 homology basis: {pairings} "
                   + ("(u cup u != 0)" if nonzero else "(u cup u = 0!)"))
    return ok, details


def check_y9(ws):
    details = []
    ok = True
    for table, name in ((ws.table_y(), "Y"), (ws.table_x(), "X")):
        for rep in (verify_counit(table), verify_chain_map(table)):
            ok &= rep.passed
            details.append(f"{name} {rep.mode}: "
                           + ("pass" if rep.passed else "FAIL"))
            details.extend(f"  {c.label}: {c.residual}" for c in rep.failures())
    return ok, details


def check_y10(ws):
    details = []
    ok = True
    for name in ("include_b", "include_c"):
        rep = verify_embedding_compat(ws.table_x(), ws.table_y(), ws.embedding(name))
        ok &= rep.passed
        details.append(f"{name}: " + ("compatible on the nose" if rep.passed else "FAIL"))
        details.extend(f"  {c.label}: {c.residual}" for c in rep.failures())
    for name in ("retract_b", "retract_c"):
        rep = collapse_residuals(ws.table_y(), ws.table_x(), ws.collapse(name))
        bad = rep.failures()
        details.append(f"informational {name} collapse residuals on "
                       f"{[c.label for c in bad] or 'no cells'} "
                       "(expected; collapse-direction compatibility is not on the nose)")
    return ok, details


def check_y11(ws):
    details = []
    ok = True
    for which in ("y",):
        cover = restrict_complex(ws.standard(which))
        got = homology(push_to_integers(cover))
        want = expected_descriptor(ws.catalog, "h1_double_cover")
        good = got[1] == want
        ok &= good
        details.append(f"H_1(double cover of {which.upper()}) = {got[1]}"
                       + ("" if good else f" != expected {want}"))
        details.append(f"full homology of the double cover: {[str(h) for h in got]}")
    return ok, details


def check_z1(ws):
    details = []
    L = ws.presentation("pi")
    xi = cycle_chain(ws.catalog, "xi")
    residual = L.boundary(2, xi)
    ok = all(x.is_zero() for x in residual)
    details.append("xi is a 2-cycle" if ok else
                   f"boundary {[format_element(x) for x in residual]}")
    Z = ws.standard("z")
    details.append("using the sign-adjusted standard basis for Z "
                   "(third 2-cell negated relative to Y)")
    ok &= _self_dual(Z, details)
    ok &= _golden(ws, "z", "d2_new_basis", Z.diffs[2], details)
    ok &= _golden(ws, "z", "d3_new_basis", Z.diffs[3], details)
    got = homology(push_to_integers(Z))
    want = expected_homology(ws.catalog, "homology_z")
    same = got == want
    ok &= same
    details.append(f"H_*(Z) = {[str(h) for h in got]}"
                   + ("" if same else f" != expected {[str(h) for h in want]}"))
    goty = homology(push_to_integers(ws.standard("y")))
    ok &= got == goty
    details.append("H_*(Z) = H_*(Y): " + ("yes" if got == goty else "NO"))
    cover = homology(push_to_integers(restrict_complex(Z)))
    wantc = expected_descriptor(ws.catalog, "h1_double_cover")
    okc = cover[1] == wantc
    ok &= okc
    details.append(f"H_1(double cover of Z) = {cover[1]}"
                   + ("" if okc else f" != expected {wantc}"))
    return ok, details


def _invariants_payload(inv):
    return {
        "underlying": [inv.underlying.free_rank, list(inv.underlying.torsion)],
        "free_eigen": list(inv.free_eigen),
        "socle_eigen": {str(p): list(m) for p, m in inv.socle_eigen},
    }


def check_o1(ws):
    details = []
    rep = orientability_check(ws.presentation("pi").diffs[2])
    details.append(f"R (x) I(pi): {rep.inv_aug}")
    ok = True
    for w in (1, -1):
        inv, verdict = rep.by_character[w]
        details.append(f"w = {w:+d}: R (x) J = {inv} -> {verdict}")
    ok &= rep.passed
    details.append("only the trivial character matches, so w = +1 is forced")
    want_i = ws.catalog.get("expected:r_module_i_pi")
    want_j = ws.catalog.get("expected:r_module_j_twisted")
    same_i = _invariants_payload(rep.inv_aug) == want_i
    same_j = _invariants_payload(rep.by_character[-1][0]) == want_j
    ok &= same_i and same_j
    details.append("invariants match the catalog: "
                   + ("yes" if same_i and same_j else "NO"))
    return ok, details


def check_h1(ws):
    details = []
    cat = ws.catalog
    ok = True
    for ctx, name in ((Z2, "h3_z2"), (Z3, "h3_z3"), (S3, "h3_s3")):
        got = bar_homology(ctx, 3)
        want = expected_descriptor(cat, name)
        good = got == want
        ok &= good
        details.append(f"H_3({ctx.id}) = {got}" + ("" if good else f" != {want}"))
    desc, mv_details = mayer_vietoris_h3()
    details.extend(mv_details)
    want = expected_descriptor(cat, "h3_pi")
    good = desc == want
    ok &= good
    details.append(f"H_3(amalgam) = {desc}" + ("" if good else f" != {want}"))
    return ok, details


# -- the registry -----------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    id: str
    title: str
    claim: str
    fn: object
    payloads: tuple  # catalog path prefixes this check reads

CHECKS = [
    CheckSpec("X1", "Presentation differentials of the S3 complex",
              "the Fox Jacobian of <a,b | a^2, abab^-2> equals the displayed d1, d2",
              check_x1, ("displayed_matrices:x:d1", "displayed_matrices:x:d2",
                         "presentations:s3")),
    CheckSpec("X2", "psi is a 2-cycle",
              "the attaching chain psi has zero boundary", check_x2,
              ("cycles:psi",)),
    CheckSpec("X3", "Diagonalization of d2 over Z[S3]",
              "the e/f basis change makes d2 diagonal with hermitian entries",
              check_x3, ("bases:x", "displayed_matrices:x", "cycles:psi")),
    CheckSpec("X4", "Self-duality of the X complex",
              "d2 is hermitian and d3 is the involuted transpose of d1",
              check_x4, ("bases:x", "cycles:psi")),
    CheckSpec("X5", "Homology of X and its universal cover",
              "H_* of the flattened complex is (Z,0,0,Z); H_*(X;Z) = (Z,Z/2,0,Z)",
              check_x5, ("cycles:psi", "expected:homology_x_universal",
                         "expected:homology_x")),
    CheckSpec("X6", "Annihilator ideals are principal",
              "Ann(a+1) and Ann(b^2a+a-1) are the principal left ideals on "
              "(a-1) and (b-1)(ba-1)", check_x6,
              ("elements:annihilator_generator_a", "elements:annihilator_generator_b")),
    CheckSpec("X7", "Degree-3 lifting identity",
              "(p(ba+b+1)+q(ba+b)) g maps under d3 to p(a-1) f1 + q(b-1)(ba-1) f2",
              check_x7, ("elements:lifting_multiplier_p", "elements:lifting_multiplier_q",
                         "elements:annihilator_generator_b", "bases:x", "cycles:psi")),
    CheckSpec("X8", "The degree-3 kernel generator",
              "ker(flattened d3) is rank one on the primitive vector nu g, "
              "nu = beta(a+1) = transfer of the base top cell", check_x8,
              ("elements:nu", "elements:beta", "cycles:psi", "bases:x")),
    CheckSpec("Y1", "Presentation differentials of the Pi complex",
              "the Fox Jacobian of <a,b,c | a^2, abab^-2, acac^-2> equals the "
              "displayed d1, d2", check_y1,
              ("displayed_matrices:y:d1", "displayed_matrices:y:d2", "presentations:pi")),
    CheckSpec("Y2", "theta is a cycle; tilde basis diagonalizes",
              "theta has zero boundary and the tilde basis gives the displayed "
              "diagonal d2 and d3", check_y2,
              ("cycles:theta", "bases:y", "displayed_matrices:y")),
    CheckSpec("Y3", "Self-duality of the Y complex",
              "the conjugated reindexed dual of the Y complex is the Y complex",
              check_y3, ("bases:y", "cycles:theta")),
    CheckSpec("Y4", "Claimed kernel generators are cycles",
              "(a-1) f1, (b-1)(ba-1) f2, (c-1)(ca-1) f3 are killed by d2",
              check_y4, ("elements:annihilator_generator_a",
                         "elements:annihilator_generator_b",
                         "elements:annihilator_generator_c", "bases:y", "cycles:theta")),
    CheckSpec("Y5", "Bounded completeness of the kernel generators",
              "on the radius-L ball, every annihilator of a diagonal entry is a "
              "left multiple of its claimed generator", check_y5,
              ("elements:annihilator_generator_a", "elements:annihilator_generator_b",
               "elements:annihilator_generator_c", "bases:y", "cycles:theta")),
    CheckSpec("Y6", "Bounded injectivity of d3",
              "no nonzero annihilator of the attaching cycle is supported on "
              "the radius-L ball", check_y6, ("bases:y", "cycles:theta")),
    CheckSpec("Y7", "Homology of Y",
              "H_*(Y;Z) = (Z, Z/2, 0, Z)", check_y7,
              ("cycles:theta", "bases:y", "expected:homology_y")),
    CheckSpec("Y8", "Mod-2 Betti numbers and the square of u",
              "Betti numbers over F2 are (1,1,1,1) and u cup u != 0 for the "
              "abelianization class u", check_y8,
              ("diagonal", "expected:betti_mod2_y", "bases:y", "cycles:theta")),
    CheckSpec("Y9", "Diagonal approximation: counit and chain map",
              "(eps(x)1)Delta = id = (1(x)eps)Delta and d Delta = Delta d in "
              "degrees <= 2", check_y9, ("diagonal", "bases:y", "bases:x",
                                         "cycles:theta", "cycles:psi")),
    CheckSpec("Y10", "Diagonal compatibility with the two S3-copy embeddings",
              "(iota(x)iota) Delta_X = Delta_Y iota for the b-copy and c-copy "
              "embeddings (collapse residuals reported informationally)", check_y10,
              ("diagonal", "bases:y", "bases:x", "cycles:theta", "cycles:psi")),
    CheckSpec("Y11", "First homology of the double cover of Y",
              "restriction of scalars and augmentation give H_1 = (Z/3)^2",
              check_y11, ("cycles:theta", "bases:y", "expected:h1_double_cover")),
    CheckSpec("Z1", "The sign-flipped complex Z",
              "xi is a cycle; Z is self-dual in its sign-adjusted basis; "
              "H_*(Z) = H_*(Y); the double cover has H_1 = (Z/3)^2", check_z1,
              ("cycles:xi", "bases:z", "displayed_matrices:z", "expected:homology_z",
               "expected:h1_double_cover")),
    CheckSpec("O1", "Orientability obstruction",
              "R (x) I(pi) matches R (x) J for w = +1 and mismatches for w = -1",
              check_o1, ("expected:r_module_i_pi", "expected:r_module_j_twisted",
                         "presentations:pi")),
    CheckSpec("H1", "Group homology in degree 3",
              "H_3(Z/2) = Z/2, H_3(S3) = Z/6, and the amalgam has "
              "H_3 = (Z/3)^2 + Z/2 by Mayer-Vietoris", check_h1,
              ("expected:h3_z2", "expected:h3_z3", "expected:h3_s3", "expected:h3_pi")),
]

CHECK_IDS = [c.id for c in CHECKS]
_BY_ID = {c.id: c for c in CHECKS}


def run_check(check_id: str, ws: Workspace | None = None) -> CheckResult:
    if check_id not in _BY_ID:
        raise UnknownCheck(check_id)
    spec = _BY_ID[check_id]
    if ws is None:
        ws = Workspace(default_catalog())
    start = time.perf_counter()
    radius = ws.max_length if check_id in ("Y5", "Y6") else None
    try:
        outcome, details = spec.fn(ws)
    except Exception as exc:  # a broken catalog must FAIL, not crash the suite
        outcome, details = False, [f"error while checking: {exc!r}"]
    wall = time.perf_counter() - start
    if outcome is True:
        status = "PASS"
    elif outcome is False:
        status = "FAIL"
    else:
        status = outcome
        if status == "INCONCLUSIVE":
            # inconclusive ball searches are flagged but are not refutations
            status = "FAIL"
            details.append("witness search inconclusive at this slack; "
                           "rerun with a larger ball")
    return CheckResult(spec.id, spec.title, status, spec.claim, details,
                       radius, wall)


# -- suites and reports -----------------------------------------------------------

@dataclass
class Report:
    results: list
    corpus_hash: str
    max_length: int
    tool_version: str = __version__

    @property
    def counts(self):
        out = {"PASS": 0, "FAIL": 0, "PARTIAL": 0, "SKIP": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def exit_code(self):
        return 1 if self.counts["FAIL"] else 0

    def to_text(self, include_timing=True) -> str:
        lines = [f"verification report (tool {self.tool_version}, "
                 f"corpus {self.corpus_hash[:12]}, ball radius {self.max_length})"]
        for r in self.results:
            timing = f"  [{r.wall_time:.2f}s]" if include_timing else ""
            lines.append(f"{r.id:>4}  {r.status_text:<12} {r.title}{timing}")
            for d in r.details:
                lines.append(f"        {d}")
        c = self.counts
        lines.append(f"total: {len(self.results)} checks, {c['PASS']} pass, "
                     f"{c['PARTIAL']} partial, {c['FAIL']} fail")
        return "\n".join(lines) + "\n"

    def to_json(self, include_timing=True) -> str:
        payload = {
            "tool_version": self.tool_version,
            "corpus_hash": self.corpus_hash,
            "config": {"max_length": self.max_length},
            "summary": self.counts,
            "exit_code": self.exit_code,
            "results": [
                {
                    "id": r.id,
                    "title": r.title,
                    "status": r.status,
                    "status_text": r.status_text,
                    "radius": r.radius,
                    "claim": r.claim,
                    "details": list(r.details),
                    **({"wall_time": round(r.wall_time, 6)} if include_timing else {}),
                }
                for r in self.results
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def select_checks(patterns) -> list:
    if not patterns:
        return list(CHECK_IDS)
    for p in patterns:
        if "*" not in p and "?" not in p and p not in CHECK_IDS:
            raise UnknownCheck(p)
    return [cid for cid in CHECK_IDS
            if any(fnmatch.fnmatch(cid, pat) for pat in patterns)]


def run_suite(patterns=None, max_length: int = 5, catalog: Catalog | None = None,
              jobs: int = 1) -> Report:
    cat = catalog or default_catalog()
    ws = Workspace(cat, max_length)
    ids = select_checks(patterns)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda cid: run_check(cid, ws), ids))
    else:
        results = [run_check(cid, ws) for cid in ids]
    results.sort(key=lambda r: CHECK_IDS.index(r.id))
    return Report(results, cat.content_hash(), max_length)


# -- report schema ------------------------------------------------------------------

REPORT_SCHEMA = {
    "required": {"tool_version": str, "corpus_hash": str, "config": dict,
                 "summary": dict, "exit_code": int, "results": list},
    "result_required": {"id": str, "title": str, "status": str,
                        "status_text": str, "claim": str, "details": list},
    "statuses": ("PASS", "FAIL", "PARTIAL", "SKIP"),
}


def validate_report_json(text: str):
    """Structural validation of a JSON report; raises ValueError on problems."""
    data = json.loads(text)
    for key, typ in REPORT_SCHEMA["required"].items():
        if key not in data or not isinstance(data[key], typ):
            raise ValueError(f"report field {key!r} missing or mistyped")
    for res in data["results"]:
        for key, typ in REPORT_SCHEMA["result_required"].items():
            if key not in res or not isinstance(res[key], typ):
                raise ValueError(f"result field {key!r} missing or mistyped")
        if res["status"] not in REPORT_SCHEMA["statuses"]:
            raise ValueError(f"unknown status {res['status']!r}")
        if not all(isinstance(d, str) for d in res["details"]):
            raise ValueError("details must be strings")
    return data


# -- mutation audit -----------------------------------------------------------------

#: Twenty deterministic single-coefficient mutations spread over every kind of
#: catalog payload.  Strings get "+ 1" appended to one coefficient expression;
#: integers get bumped by one.
MUTATIONS = [
    "cycles:psi:1",
    "cycles:theta:2",
    "cycles:xi:2",
    "bases:x:matrices:1:0:1",
    "bases:y:matrices:2:1:1",
    "bases:z:matrices:2:2:2",
    "elements:beta",
    "elements:nu",
    "elements:annihilator_generator_b",
    "elements:lifting_multiplier_q",
    "displayed_matrices:x:d2:0:1",
    "displayed_matrices:y:d2:2:2",
    "displayed_matrices:y:d1_new_basis:0:2",
    "diagonal:cells:f1:1:right:0:0",
    "diagonal:cells:e2:1:left:0:0",
    "diagonal:cells:f3:4:right:0:0",
    "expected:homology_x_universal:3:0",
    "expected:h3_s3:1:0",
    "expected:betti_mod2_y:1",
    "expected:h1_double_cover:1:0",
]


def _bump(leaf):
    if isinstance(leaf, str):
        return f"{leaf} + 1"
    if isinstance(leaf, int):
        return leaf + 1
    raise TypeError(f"cannot mutate a {type(leaf).__name__}")


def checks_reading(path: str):
    return [c.id for c in CHECKS
            if any(path.startswith(prefix) for prefix in c.payloads)
            and c.id not in ("Y5", "Y6")]


@dataclass
class MutationOutcome:
    path: str
    checks_run: list
    failed: list

    @property
    def detected(self):
        return bool(self.failed)


def mutation_audit(catalog: Catalog | None = None, max_length: int = 2):
    """Apply each sampled mutation and rerun the checks that read the mutated
    payload; every mutation must make at least one of them FAIL."""
    base = catalog or default_catalog()
    outcomes = []
    for path in MUTATIONS:
        mutated = base.mutated(path, _bump)
        ws = Workspace(mutated, max_length)
        ids = checks_reading(path)
        failed = []
        for cid in ids:
            res = run_check(cid, ws)
            if res.status == "FAIL":
                failed.append(cid)
        outcomes.append(MutationOutcome(path, ids, failed))
    return outcomes
