"""The shipped catalog of canonical constants.

Presentations, the 2-cycles psi/theta/xi, the diagonalizing bases, the
diagonal-approximation table, a handful of named ring elements, and the
expected invariants all live in JSON data files rather than code, so they can
be audited and mutated independently of the implementation.  `Catalog.get`
addresses entries by paths like "cycles:psi" or "expected:h3_s3"; every value
is plain JSON.  Typed views (parsed ring elements, complexes, tables) are
built on demand by the functions at the bottom.

A catalog is identified by the sha256 of its canonical JSON serialization;
reports embed that hash.
"""

from __future__ import annotations

import copy
import hashlib
import json
from importlib import resources

from .errors import UnknownArtifact
from .groups import PI, S3, context
from .ring import RingElement, parse_element
from .complexes import BasisChange, FreeComplex, attach_top_cell, build_fox_lyndon, \
    change_basis, parse_gmatrix
from .diagonal import DiagonalTable, TensorElement, tensor_of_chains

DATA_FILES = ("presentations", "cycles", "bases", "elements",
              "displayed_matrices", "diagonal", "expected")


def _load_raw() -> dict:
    raw = {}
    for name in DATA_FILES:
        text = resources.files("pd3").joinpath("data", f"{name}.json").read_text()
        raw[name] = json.loads(text)
    return raw


class Catalog:
    """All shipped constants, addressable by 'file:key:subkey' paths."""

    def __init__(self, raw=None):
        self.raw = raw if raw is not None else _load_raw()

    def content_hash(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()

    def get(self, name: str):
        node = self.raw
        for part in name.split(":"):
            if isinstance(node, dict) and part in node:
                node = node[part]
            elif isinstance(node, list) and part.isdigit() and int(part) < len(node):
                node = node[int(part)]
            else:
                raise UnknownArtifact(name)
        return copy.deepcopy(node)

    def names(self):
        out = []

        def walk(node, prefix):
            if isinstance(node, dict):
                for k, v in node.items():
                    walk(v, f"{prefix}:{k}" if prefix else k)
            else:
                out.append(prefix)
        walk(self.raw, "")
        return out

    def mutated(self, path: str, mutate_fn) -> "Catalog":
        """A deep copy with the leaf at `path` replaced by mutate_fn(leaf)."""
        raw = copy.deepcopy(self.raw)
        parts = path.split(":")
        node = raw
        for part in parts[:-1]:
            node = node[int(part) if isinstance(node, list) else part]
        leaf = parts[-1]
        if isinstance(node, list):
            node[int(leaf)] = mutate_fn(node[int(leaf)])
        else:
            node[leaf] = mutate_fn(node[leaf])
        return Catalog(raw)


_default = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = Catalog()
    return _default


# -- typed views ---------------------------------------------------------------

def cycle_chain(cat: Catalog, name: str):
    ctx = S3 if name == "psi" else PI
    return [parse_element(ctx, s) for s in cat.get(f"cycles:{name}")]


def named_element(cat: Catalog, name: str, ctx=S3) -> RingElement:
    return parse_element(ctx, cat.get(f"elements:{name}"))


def basis_change(cat: Catalog, which: str) -> BasisChange:
    ctx = S3 if which == "x" else PI
    data = cat.get(f"bases:{which}")
    mats = {int(d): parse_gmatrix(ctx, rows) for d, rows in data["matrices"].items()}
    labels = {int(d): labs for d, labs in data["labels"].items()}
    return BasisChange(ctx, mats, labels)


def presentation_complex(cat: Catalog, which: str) -> FreeComplex:
    """Fox complex of the shipped presentation (validated against the
    registered rewriting context of the same name)."""
    from .words import parse_word
    data = cat.get(f"presentations:{which}")
    ctx = context(which)
    if tuple(data["generators"]) != ctx.generators:
        raise ValueError(f"catalog presentation {which} has foreign generators")
    relators = [parse_word(s) for s in data["relators"]]
    return build_fox_lyndon(ctx, relators)


def attached_complex(cat: Catalog, which: str) -> FreeComplex:
    """X, Y or Z in the original cell basis."""
    base = presentation_complex(cat, "s3" if which == "x" else "pi")
    cycle = {"x": "psi", "y": "theta", "z": "xi"}[which]
    return attach_top_cell(base, cycle_chain(cat, cycle))


def standard_complex(cat: Catalog, which: str) -> FreeComplex:
    """X, Y or Z in its diagonalizing basis (e/f resp. sign-adjusted for Z)."""
    return change_basis(attached_complex(cat, which), basis_change(cat, which))


def displayed_matrix(cat: Catalog, which: str, key: str):
    ctx = S3 if which == "x" else PI
    return parse_gmatrix(ctx, cat.get(f"displayed_matrices:{which}:{key}"))


def diagonal_table(cat: Catalog, cx: FreeComplex, restrict_to_b=False) -> DiagonalTable:
    """The shipped diagonal table over cx (the Y complex in its e/f basis).

    With restrict_to_b=True, only the cells without a c-flavoured index are
    kept (the table of the S3-copy complex); their coefficients are checked
    to be c-free.
    """
    data = cat.get("diagonal:cells")
    cells = {}
    for label, summands in data.items():
        if restrict_to_b and label in ("e3", "f3"):
            continue
        value = TensorElement.zero()
        for s in summands:
            value = value + _summand(cx, s)
        cells[label] = value
    return DiagonalTable(cx, cells)


def _summand(cx: FreeComplex, s) -> TensorElement:
    left = _side_chain(cx, s["left"])
    right = _side_chain(cx, s["right"])
    t = tensor_of_chains(left[1], left[0], right[1], right[0])
    return t.scale(int(s["sign"]))


def _side_chain(cx: FreeComplex, pairs):
    degree = None
    coords = None
    for coeff_text, label in pairs:
        d, j = cx.label_index(label)
        if degree is None:
            degree, coords = d, cx.zero_chain(d)
        elif d != degree:
            raise ValueError("mixed degrees inside one tensor factor")
        coords[j] = coords[j] + parse_element(cx.ctx, coeff_text)
    return degree, coords


def expected_descriptor(cat: Catalog, name: str):
    from .homology import AbelianGroupDescriptor
    free, torsion = cat.get(f"expected:{name}")
    return AbelianGroupDescriptor(free, tuple(torsion))


def expected_homology(cat: Catalog, name: str):
    from .homology import AbelianGroupDescriptor
    return [AbelianGroupDescriptor(f, tuple(t)) for f, t in cat.get(f"expected:{name}")]
