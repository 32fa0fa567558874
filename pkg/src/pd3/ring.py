"""Exact arithmetic in integral group rings Z[G].

Elements are finitely supported integer combinations of normal-form group
elements; all coefficients are arbitrary-precision.  On top of the plain ring
structure this module provides

  * the (optionally orientation-twisted) involution  g -> w1(g) g^{-1},
  * the augmentation Z[G] -> Z,
  * ring maps induced by group homomorphisms,
  * the reduction to R = Z[a]/(a^2 - 1) that kills b and c, and
  * restriction of scalars from Z[Pi] to Z[Pi'] along the transversal {1, a}.

Text grammar: signed integer coefficients, `*` products, `+`/`-` term
separators, words in the word grammar; e.g. "b^2*a + a - 1".  Formatting is
deterministic: terms in shortlex order of their (normal form) words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch, ElementSyntaxError
from .groups import PI, PI_PRIME, GroupContext, GroupElement, GroupHom
from .words import parse_word


@dataclass(frozen=True)
class OrientationCharacter:
    """A homomorphism G -> {+1, -1} determined by the image of a.

    b and c always map to +1 (they lie in the commutator subgroup), so the
    character factors through the abelianization onto <a>.
    """

    w: int = 1

    def __post_init__(self):
        if self.w not in (1, -1):
            raise ValueError("orientation character must send a to +1 or -1")

    def value(self, g: GroupElement) -> int:
        return self.w if g.a_parity else 1


TRIVIAL_CHARACTER = OrientationCharacter(1)
TWISTED_CHARACTER = OrientationCharacter(-1)


class RingElement:
    """An element of Z[G].  Immutable; arithmetic returns new objects."""

    __slots__ = ("context", "terms")

    def __init__(self, context: GroupContext, terms: dict):
        self.context = context
        self.terms = {g: c for g, c in terms.items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: GroupContext) -> "RingElement":
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx: GroupContext) -> "RingElement":
        return cls(ctx, {ctx.identity: 1})

    @classmethod
    def from_int(cls, ctx: GroupContext, n: int) -> "RingElement":
        return cls(ctx, {ctx.identity: n})

    @classmethod
    def from_element(cls, g: GroupElement, coeff: int = 1) -> "RingElement":
        return cls(g.context, {g: coeff})

    @classmethod
    def from_word(cls, ctx: GroupContext, text: str, coeff: int = 1) -> "RingElement":
        return cls(ctx, {ctx.element(text): coeff})

    # -- structure -----------------------------------------------------------

    def coeff(self, g: GroupElement) -> int:
        return self.terms.get(g, 0)

    def support(self):
        return set(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def max_word_length(self) -> int:
        return max((g.length() for g in self.terms), default=0)

    def __eq__(self, other):
        return (isinstance(other, RingElement)
                and self.context.id == other.context.id
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.context.id, frozenset(self.terms.items())))

    def __repr__(self):
        return f"<Z[{self.context.id}] {format_element(self)}>"

    def __str__(self):
        return format_element(self)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "RingElement"):
        if self.context.id != other.context.id:
            raise ContextMismatch(f"{self.context.id} vs {other.context.id}")

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElement.from_int(self.context, other)
        self._check(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, 0) + c
        return RingElement(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.context, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElement.from_int(self.context, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.context, {g: c * other for g, c in self.terms.items()})
        self._check(other)
        terms = {}
        for g, cg in self.terms.items():
            for h, ch in other.terms.items():
                gh = g * h
                terms[gh] = terms.get(gh, 0) + cg * ch
        return RingElement(self.context, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        assert n >= 0
        out = RingElement.one(self.context)
        for _ in range(n):
            out = out * self
        return out


def ring_multiply(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def augment(x: RingElement) -> int:
    """Sum of coefficients; the ring map Z[G] -> Z killing the group."""
    return sum(x.terms.values())


def involute(x: RingElement, chi: OrientationCharacter = TRIVIAL_CHARACTER) -> RingElement:
    """g -> w1(g) g^{-1}, extended additively.  An anti-automorphism of order 2.

    >>> from pd3.groups import S3
    >>> str(involute(parse_element(S3, "a + 1"), TWISTED_CHARACTER))
    '1 - a'
    >>> x = parse_element(S3, "b^2*a + a - 1")   # a diagonal entry
    >>> involute(x) == x                         # hermitian
    True
    """
    terms = {}
    for g, c in x.terms.items():
        gi = g.inverse()
        terms[gi] = terms.get(gi, 0) + c * chi.value(g)
    return RingElement(x.context, terms)


def induced_ring_map(h: GroupHom, x: RingElement) -> RingElement:
    """Apply a group homomorphism termwise; a ring homomorphism."""
    if x.context.id != h.source.id:
        raise ContextMismatch(f"{x.context.id} element fed to {h.name}")
    terms = {}
    for g, c in x.terms.items():
        img = h(g)
        terms[img] = terms.get(img, 0) + c
    return RingElement(h.target, terms)


# -- text form ---------------------------------------------------------------

def format_element(x: RingElement) -> str:
    if not x.terms:
        return "0"
    items = sorted(x.terms.items(), key=lambda item: item[0].shortlex_key())
    parts = []
    for i, (g, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if g.is_identity():
            body = str(mag)
        elif mag == 1:
            body = str(g)
        else:
            body = f"{mag}*{g}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_element(ctx: GroupContext, text: str) -> RingElement:
    """Parse the element grammar; ElementSyntaxError carries the position."""
    terms = {}
    n = len(text)
    i = 0
    sign = 1
    seen_any = False
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        ch = text[i]
        if ch == "+" or ch == "-":
            sign = 1 if ch == "+" else -1
            i += 1
            while i < n and text[i].isspace():
                i += 1
            if i >= n:
                raise ElementSyntaxError("dangling sign", i)
        elif seen_any:
            raise ElementSyntaxError(f"expected '+' or '-', got {ch!r}", i)
        # scan one term: up to the next top-level +/- (a '-' right after '^'
        # belongs to an exponent)
        start = i
        while i < n:
            ch = text[i]
            if ch in "+-":
                j = i - 1
                while j >= 0 and text[j].isspace():
                    j -= 1
                if j >= 0 and text[j] == "^":
                    i += 1
                    continue
                break
            i += 1
        term = text[start:i].strip()
        if not term:
            raise ElementSyntaxError("empty term", start)
        coeff, word_text = _split_term(term, start)
        if word_text is None:
            g = ctx.identity
        else:
            try:
                g = ctx.element(parse_word(word_text))
            except ElementSyntaxError as exc:
                raise ElementSyntaxError(str(exc).rsplit(" (at", 1)[0],
                                         start + term.index(word_text) + exc.pos) from None
        terms[g] = terms.get(g, 0) + sign * coeff
        sign = 1
        seen_any = True
    if not seen_any:
        raise ElementSyntaxError("empty element", 0)
    return RingElement(ctx, terms)


def _split_term(term: str, offset: int):
    """Split 'k*word', 'k', or 'word' into (k, word-or-None)."""
    j = 0
    while j < len(term) and term[j].isdigit():
        j += 1
    if j == 0:
        return 1, term
    coeff = int(term[:j])
    rest = term[j:].strip()
    if not rest:
        return coeff, None
    if not rest.startswith("*"):
        raise ElementSyntaxError("coefficient must be joined to its word by '*'",
                                 offset + j)
    word_text = rest[1:].strip()
    if not word_text:
        raise ElementSyntaxError("dangling '*'", offset + len(term) - 1)
    return coeff, word_text


# -- the two-dimensional quotient ring R = Z[a]/(a^2 - 1) ---------------------

@dataclass(frozen=True)
class RElement:
    """u + v*a with a^2 = 1."""

    u: int = 0
    v: int = 0

    def __add__(self, other):
        other = _coerce_r(other)
        return RElement(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return RElement(-self.u, -self.v)

    def __sub__(self, other):
        return self + (-_coerce_r(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_r(other)
        return RElement(self.u * other.u + self.v * other.v,
                        self.u * other.v + self.v * other.u)

    __rmul__ = __mul__

    def involute(self, chi: OrientationCharacter = TRIVIAL_CHARACTER) -> "RElement":
        return RElement(self.u, chi.w * self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def __str__(self):
        if self.u == 0 and self.v == 0:
            return "0"
        parts = []
        if self.u:
            parts.append(str(self.u))
        if self.v:
            a_part = "a" if abs(self.v) == 1 else f"{abs(self.v)}*a"
            if not parts:
                parts.append(a_part if self.v > 0 else f"-{a_part}")
            else:
                parts.append(f"+ {a_part}" if self.v > 0 else f"- {a_part}")
        return " ".join(parts)


R_ZERO = RElement(0, 0)
R_ONE = RElement(1, 0)
R_A = RElement(0, 1)


def _coerce_r(x) -> RElement:
    if isinstance(x, RElement):
        return x
    if isinstance(x, int):
        return RElement(x, 0)
    raise TypeError(f"cannot coerce {x!r} into R")


def to_R(x: RingElement) -> RElement:
    """The ring map killing b and c; a goes to a.  Factors through the
    abelianization, so only the a-parity of each term matters."""
    u = v = 0
    for g, c in x.terms.items():
        if g.a_parity:
            v += c
        else:
            u += c
    return RElement(u, v)


# -- restriction of scalars Z[Pi] -> M_2(Z[Pi']) ------------------------------

def _strip_a(g: GroupElement) -> GroupElement:
    assert g.letters.startswith("a")
    return GroupElement(PI_PRIME, g.letters[1:])


def _as_piprime(g: GroupElement) -> GroupElement:
    return GroupElement(PI_PRIME, g.letters)


def conjugate_by_a(x: RingElement) -> RingElement:
    """w -> a w a on Z[Pi']; an automorphism (inverts every b/c syllable)."""
    a = PI.element("a")
    terms = {}
    for g, c in x.terms.items():
        conj = a * GroupElement(PI, g.letters) * a
        terms[_as_piprime(conj)] = terms.get(_as_piprime(conj), 0) + c
    return RingElement(PI_PRIME, terms)


def coset_decompose(x: RingElement):
    """x = P + a*Q with P, Q over Pi'; the a-prefix normal form makes the
    splitting a support partition."""
    p_terms, q_terms = {}, {}
    for g, c in x.terms.items():
        if g.a_parity:
            h = _strip_a(g)
            q_terms[h] = q_terms.get(h, 0) + c
        else:
            h = _as_piprime(g)
            p_terms[h] = p_terms.get(h, 0) + c
    return RingElement(PI_PRIME, p_terms), RingElement(PI_PRIME, q_terms)


def restrict_scalars(x: RingElement):
    """Matrix of left multiplication by x on Z[Pi] as a free right
    Z[Pi']-module with basis {1, a}.  Multiplicative for the ordinary
    matrix product."""
    if x.context.id != PI.id:
        raise ContextMismatch("restriction of scalars lives over pi")
    p, q = coset_decompose(x)
    return [[p, conjugate_by_a(q)],
            [q, conjugate_by_a(p)]]


def restrict_block_left(x: RingElement):
    """The 2x2 block of x acting on left-module coordinates over the basis
    {e, a*e}; this is what differentials of restricted complexes use."""
    p, q = coset_decompose(x)
    return [[p, q],
            [conjugate_by_a(q), conjugate_by_a(p)]]
