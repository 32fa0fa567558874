"""Words in the generators a, b, c.

A word is a sequence of syllables (symbol, exponent) with nonzero integer
exponents.  Words are the raw input side of the package: relators, generator
images of homomorphisms, and anything a user types.  Normal forms of group
elements are a separate, more restrictive representation (see groups.py);
normalizing a word always lands there.

Text grammar: `*`-separated syllables, each `x` or `x^k` with k a nonzero
integer (negative allowed, for relators such as a*b*a*b^-2); the identity is
written `1`.  Whitespace is insignificant.
"""

from __future__ import annotations

from dataclasses import dataclass

GENERATORS = ("a", "b", "c")


@dataclass(frozen=True)
class Word:
    """A formal word: tuple of (symbol, exponent) with exponent != 0."""

    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for sym, exp in self.syllables:
            if sym not in GENERATORS:
                raise ValueError(f"unknown generator {sym!r}")
            if not isinstance(exp, int) or exp == 0:
                raise ValueError(f"exponent must be a nonzero integer, got {exp!r}")

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((sym, -exp) for sym, exp in reversed(self.syllables)))

    def letters(self):
        """Expand to a list of (symbol, +1/-1) letters."""
        out = []
        for sym, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            out.extend((sym, sign) for _ in range(abs(exp)))
        return out

    def symbols(self):
        return {sym for sym, _ in self.syllables}

    def __str__(self) -> str:
        return format_word(self)


IDENTITY_WORD = Word()


def parse_word(text: str) -> Word:
    """Parse the word grammar.  Raises ElementSyntaxError with a position."""
    from .errors import ElementSyntaxError

    stripped = text.strip()
    if not stripped:
        raise ElementSyntaxError("empty word", 0)
    if stripped == "1":
        return IDENTITY_WORD
    syllables = []
    pos = 0
    # Track offsets against the original text so error positions are usable.
    for chunk in text.split("*"):
        bare = chunk.strip()
        offset = text.index(chunk, pos) + (len(chunk) - len(chunk.lstrip()))
        pos = text.index(chunk, pos) + len(chunk) + 1
        if not bare:
            raise ElementSyntaxError("empty syllable", offset)
        sym, caret, expstr = bare.partition("^")
        sym = sym.strip()
        if sym not in GENERATORS:
            raise ElementSyntaxError(f"unknown generator {sym!r}", offset)
        if caret:
            try:
                exp = int(expstr.strip())
            except ValueError:
                raise ElementSyntaxError(f"bad exponent {expstr.strip()!r}", offset) from None
            if exp == 0:
                raise ElementSyntaxError("zero exponent", offset)
        else:
            exp = 1
        syllables.append((sym, exp))
    return Word(tuple(syllables))


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    parts = []
    for sym, exp in w.syllables:
        parts.append(sym if exp == 1 else f"{sym}^{exp}")
    return "*".join(parts)


def word_from_string_of_letters(letters: str) -> Word:
    """Build a word from a plain run-length-encoded letter string like 'abb'."""
    syllables = []
    for ch in letters:
        if syllables and syllables[-1][0] == ch:
            syllables[-1][1] += 1
        else:
            syllables.append([ch, 1])
    return Word(tuple((s, e) for s, e in syllables))
