"""Groups presented by confluent string rewriting, and maps between them.

The groups that appear are fixed once and for all:

    S3        <a,b | a^2, abab^-2>         symmetric group, order 6
    Pi        <a,b,c | a^2, abab^-2, acac^-2>   two copies of S3 glued along <a>
    Z2        <a | a^2>
    Z3        <b | b^3>
    PiPrime   <b,c | b^3, c^3>              the commutator subgroup Z/3 * Z/3
    Free      free group on a, b, c         (relator bookkeeping only)

Normal forms put the a-exponent first: the rules ba -> abb and ca -> acc move
every a to the front, so an element of Pi reads a^eps * w with eps in {0,1}
and w an alternating word in syllables b, b^2, c, c^2.  The a-parity (the
first letter) is then the orientation character and the PiPrime-membership
test.

Termination of the rewriting: each rule strictly decreases the pair
(sum over b/c letters of 3^{number of a's to its right}, word length)
lexicographically, so leftmost reduction reaches a fixed point; the critical
pair check (`check_confluence`) certifies local confluence, hence unique
normal forms.

Elements store their normal form as a plain letter string ('abb' = a*b^2);
the free group additionally uses upper case for inverse letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ContextMismatch, InfiniteEnumeration, UnknownSymbol
from .words import Word, parse_word, word_from_string_of_letters

#: Sentinel for enumerate_elements: every element of a finite group.
ALL = object()


class RewriteSystem:
    """An ordered list of string rewriting rules over a fixed alphabet."""

    def __init__(self, alphabet: str, rules):
        self.alphabet = alphabet
        self.rules = tuple((str(l), str(r)) for l, r in rules)

    def reduce(self, word: str) -> str:
        """Leftmost reduction to a fixed point (deterministic)."""
        rules = self.rules
        changed = True
        while changed:
            changed = False
            best = None
            for lhs, rhs in rules:
                i = word.find(lhs)
                if i >= 0 and (best is None or i < best[0]):
                    best = (i, lhs, rhs)
            if best is not None:
                i, lhs, rhs = best
                word = word[:i] + rhs + word[i + len(lhs):]
                changed = True
        return word

    def critical_pairs(self):
        """All superpositions of two left-hand sides, with their reducts.

        Yields (superposition, reduct1, reduct2) where the two reducts come
        from the two possible first rewrites.  Covers both proper overlaps
        (suffix of one lhs = prefix of the other) and containments.
        """
        out = []
        for l1, r1 in self.rules:
            for l2, r2 in self.rules:
                # suffix/prefix overlaps
                for k in range(1, min(len(l1), len(l2))):
                    if l1.endswith(l2[:k]):
                        word = l1 + l2[k:]
                        out.append((word, r1 + l2[k:], l1[: len(l1) - k] + r2))
                # containment of l2 strictly inside l1
                if l1 != l2:
                    start = l1.find(l2)
                    while start >= 0:
                        out.append((l1, r1, l1[:start] + r2 + l1[start + len(l2):]))
                        start = l1.find(l2, start + 1)
        return out


@dataclass(frozen=True)
class ConfluenceReport:
    context_id: str
    passed: bool
    failures: tuple  # (superposition, reduct1 normal form, reduct2 normal form)
    checked_pairs: int
    relators_ok: bool
    bad_relators: tuple

    def __str__(self):
        status = "pass" if self.passed else "fail"
        return (f"confluence({self.context_id}): {status} "
                f"({self.checked_pairs} critical pairs, "
                f"{len(self.failures)} unjoined, relators_ok={self.relators_ok})")


class GroupContext:
    """One of the fixed groups.  Immutable; compare by identity or id string."""

    def __init__(self, ctx_id, generators, orders, rules, relator_strings, order=None):
        self.id = ctx_id
        self.generators = tuple(generators)
        self.orders = dict(orders)  # generator -> order of its image
        self.rewriting = RewriteSystem("".join(generators), rules)
        self.relators = tuple(parse_word(s) for s in relator_strings)
        self.order = order  # group order, None if infinite
        self._mul_cache = {}

    def __repr__(self):
        return f"GroupContext({self.id})"

    @property
    def is_finite(self):
        return self.order is not None

    def check_symbols(self, word: Word):
        bad = word.symbols() - set(self.generators)
        if bad:
            raise UnknownSymbol(f"generator(s) {sorted(bad)} not in {self.id}")

    # -- normal forms ------------------------------------------------------

    def _letters_of(self, word: Word) -> str:
        """Positive letter string for the word, folding x^-k via x's order."""
        chunks = []
        for sym, exp in word.syllables:
            e = exp % self.orders[sym]
            chunks.append(sym * e)
        return "".join(chunks)

    def normal_letters(self, word: Word) -> str:
        self.check_symbols(word)
        if self.id == "free":
            return _free_reduce_letters(word)
        return self.rewriting.reduce(self._letters_of(word))

    def element(self, word) -> "GroupElement":
        if isinstance(word, str):
            word = parse_word(word)
        return GroupElement(self, self.normal_letters(word))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, "")

    def generator(self, sym: str) -> "GroupElement":
        return self.element(Word(((sym, 1),)))

    def multiply_letters(self, u: str, v: str) -> str:
        key = (u, v)
        cached = self._mul_cache.get(key)
        if cached is None:
            if self.id == "free":
                cached = _free_reduce_concat(u, v)
            else:
                cached = self.rewriting.reduce(u + v)
            self._mul_cache[key] = cached
        return cached


def _free_reduce_letters(word: Word) -> str:
    out = []
    for sym, sign in word.letters():
        ch = sym if sign > 0 else sym.upper()
        if out and out[-1].swapcase() == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _free_reduce_concat(u: str, v: str) -> str:
    out = list(u)
    for ch in v:
        if out and out[-1].swapcase() == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


class GroupElement:
    """A group element in normal form.  Hashable and immutable."""

    __slots__ = ("context", "letters")

    def __init__(self, context: GroupContext, letters: str):
        self.context = context
        self.letters = letters

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.context.id == other.context.id
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.context.id, self.letters))

    def __repr__(self):
        return f"<{self.context.id}:{self.letters or '1'}>"

    def __str__(self):
        return str(self.word())

    def word(self) -> Word:
        if self.context.id == "free":
            syl = []
            for ch in self.letters:
                sym, exp = (ch, 1) if ch.islower() else (ch.lower(), -1)
                if syl and syl[-1][0] == sym and (syl[-1][1] > 0) == (exp > 0):
                    syl[-1][1] += exp
                else:
                    syl.append([sym, exp])
            return Word(tuple((s, e) for s, e in syl))
        return word_from_string_of_letters(self.letters)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.context.id != other.context.id:
            raise ContextMismatch(f"{self.context.id} vs {other.context.id}")
        return GroupElement(self.context, self.context.multiply_letters(self.letters, other.letters))

    def inverse(self) -> "GroupElement":
        ctx = self.context
        if ctx.id == "free":
            return GroupElement(ctx, self.letters[::-1].swapcase())
        # x^-1 = x^(order-1) letterwise, reversed
        inv = "".join(ch * (ctx.orders[ch] - 1) for ch in reversed(self.letters))
        return GroupElement(ctx, ctx.rewriting.reduce(inv))

    def is_identity(self) -> bool:
        return not self.letters

    @property
    def a_parity(self) -> int:
        """Exponent of a mod 2; the orientation character and the coset of
        the commutator subgroup."""
        return self.letters.count("a") & 1

    def length(self) -> int:
        """a-exponent plus number of b/c syllables (ball metric)."""
        runs = 0
        prev = None
        for ch in self.letters:
            if ch != "a" and ch != prev:
                runs += 1
            prev = ch
        return (1 if self.letters.startswith("a") else 0) + runs

    def shortlex_key(self):
        return (len(self.letters), self.letters)


# -- public operations -----------------------------------------------------

def normalize(ctx: GroupContext, word) -> GroupElement:
    """Unique irreducible form of a word; idempotent and multiplicative.

    >>> str(normalize(S3, "b*a"))
    'a*b^2'
    >>> str(normalize(PI, "c*b*a"))
    'a*c^2*b^2'
    >>> str(normalize(S3, "a*a"))
    '1'
    """
    return ctx.element(word)


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def invert(x: GroupElement) -> GroupElement:
    return x.inverse()


def enumerate_elements(ctx: GroupContext, max_len=ALL) -> list[GroupElement]:
    """Every element (max_len=ALL, finite groups) or the ball of normal
    forms of length <= max_len, in shortlex order."""
    if max_len is ALL:
        if not ctx.is_finite:
            raise InfiniteEnumeration(f"{ctx.id} is infinite")
        return _enumerate_finite(ctx)
    if ctx.is_finite:
        return [g for g in _enumerate_finite(ctx) if g.length() <= max_len]
    if ctx.id == "free":
        raise InfiniteEnumeration("ball enumeration is not defined for the free group")
    return _enumerate_ball(ctx, max_len)


def _enumerate_finite(ctx: GroupContext) -> list[GroupElement]:
    seen = {""}
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for g in ctx.generators:
                prod = ctx.multiply_letters(w, g)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    elements = sorted(seen, key=lambda s: (len(s), s))
    assert ctx.order is None or len(elements) == ctx.order
    return [GroupElement(ctx, w) for w in elements]


def _enumerate_ball(ctx: GroupContext, max_len: int) -> list[GroupElement]:
    # Normal forms of Pi: a^eps * alternating syllables in {b,b^2,c,c^2}.
    # PiPrime: the eps = 0 subset on letters {b, c}.
    letters = [g for g in ctx.generators if g != "a"]
    prefixes = [""]
    if "a" in ctx.generators:
        prefixes.append("a")
    words = []

    def grow(current: str, last_letter: str, syllables: int, budget: int):
        words.append(current)
        if syllables == budget:
            return
        for ch in letters:
            if ch == last_letter:
                continue
            for exp in range(1, ctx.orders[ch]):
                grow(current + ch * exp, ch, syllables + 1, budget)

    out = []
    for pre in prefixes:
        words.clear()
        budget = max_len - len(pre)
        if budget < 0:
            continue
        grow("", "", 0, budget)
        out.extend(pre + w for w in words)
    out.sort(key=lambda s: (len(s), s))
    return [GroupElement(ctx, w) for w in out]


def check_confluence(ctx: GroupContext) -> ConfluenceReport:
    """Critical-pair joinability plus a sanity check that the context's
    relators actually reduce to the identity."""
    return check_rules(ctx.rewriting, ctx.id, [ctx._letters_of(r) for r in ctx.relators])


def check_rules(system: RewriteSystem, label: str, relator_letter_words=()) -> ConfluenceReport:
    failures = []
    pairs = system.critical_pairs()
    for word, red1, red2 in pairs:
        n1 = system.reduce(red1)
        n2 = system.reduce(red2)
        if n1 != n2:
            failures.append((word, n1, n2))
    bad_relators = tuple(w for w in relator_letter_words if system.reduce(w) != "")
    passed = not failures and not bad_relators
    return ConfluenceReport(label, passed, tuple(failures), len(pairs),
                            not bad_relators, bad_relators)


# -- the fixed contexts ------------------------------------------------------

S3 = GroupContext(
    "s3", ("a", "b"), {"a": 2, "b": 3},
    [("aa", ""), ("bbb", ""), ("ba", "abb")],
    ["a^2", "a*b*a*b^-2"],
    order=6,
)

PI = GroupContext(
    "pi", ("a", "b", "c"), {"a": 2, "b": 3, "c": 3},
    [("aa", ""), ("bbb", ""), ("ccc", ""), ("ba", "abb"), ("ca", "acc")],
    ["a^2", "a*b*a*b^-2", "a*c*a*c^-2"],
)

Z2 = GroupContext("z2", ("a",), {"a": 2}, [("aa", "")], ["a^2"], order=2)

Z3 = GroupContext("z3", ("b",), {"b": 3}, [("bbb", "")], ["b^3"], order=3)

PI_PRIME = GroupContext(
    "pi_prime", ("b", "c"), {"b": 3, "c": 3},
    [("bbb", ""), ("ccc", "")],
    ["b^3", "c^3"],
)

FREE = GroupContext("free", ("a", "b", "c"), {}, [], [])

CONTEXTS = {ctx.id: ctx for ctx in (S3, PI, Z2, Z3, PI_PRIME, FREE)}


def context(ctx_id: str) -> GroupContext:
    try:
        return CONTEXTS[ctx_id]
    except KeyError:
        raise UnknownSymbol(f"no group named {ctx_id!r}") from None


# -- homomorphisms -----------------------------------------------------------

class GroupHom:
    """A homomorphism given on generators, validated on relators."""

    def __init__(self, source: GroupContext, target: GroupContext, images: dict, name=""):
        self.source = source
        self.target = target
        self.name = name or f"{source.id}->{target.id}"
        self.images = {}
        for sym in source.generators:
            img = images[sym]
            if isinstance(img, str):
                img = parse_word(img)
            target.check_symbols(img)
            self.images[sym] = img
        for rel in source.relators:
            if not self.apply_word(rel).is_identity():
                raise ValueError(
                    f"images do not respect relator {rel} under {self.name}")

    def __repr__(self):
        return f"GroupHom({self.name})"

    def apply_word(self, word: Word) -> GroupElement:
        acc = self.target.identity
        for sym, sign in word.letters():
            img = self.target.element(self.images[sym])
            acc = acc * (img if sign > 0 else img.inverse())
        return acc

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.context.id != self.source.id:
            raise ContextMismatch(f"{x.context.id} element fed to {self.name}")
        return self.apply_word(x.word())


def apply_hom(h: GroupHom, x: GroupElement) -> GroupElement:
    return h(x)


@lru_cache(maxsize=None)
def named_hom(name: str) -> GroupHom:
    """The homomorphisms the construction actually uses."""
    table = {
        # retractions of Pi onto the two S3 copies (collapse c resp. b)
        "retract_b": (PI, S3, {"a": "a", "b": "b", "c": "1"}),
        "retract_c": (PI, S3, {"a": "a", "b": "1", "c": "b"}),
        # the two embeddings of S3 (b-copy and c-copy)
        "include_b": (S3, PI, {"a": "a", "b": "b"}),
        "include_c": (S3, PI, {"a": "a", "b": "c"}),
        # abelianizations onto <a> = Z/2
        "abelianize_pi": (PI, Z2, {"a": "a", "b": "1", "c": "1"}),
        "abelianize_s3": (S3, Z2, {"a": "a", "b": "1"}),
        # subgroup inclusions
        "a_in_s3": (Z2, S3, {"a": "a"}),
        "a_in_pi": (Z2, PI, {"a": "a"}),
        "b_in_s3": (Z3, S3, {"b": "b"}),
        "piprime_in_pi": (PI_PRIME, PI, {"b": "b", "c": "c"}),
    }
    if name.startswith("id_"):
        ctx = context(name[3:])
        return GroupHom(ctx, ctx, {g: g for g in ctx.generators}, name)
    src, dst, images = table[name]
    images = {k: parse_word(v) for k, v in images.items()}
    return GroupHom(src, dst, images, name)
