"""Words in a universal Coxeter group, twisted involutions, and Bruhat order.

A universal Coxeter system on generators ``0, ..., n-1`` imposes no relation
besides each generator squaring to the identity, so group elements correspond
one-to-one to words with no two equal adjacent letters.  Words are stored as
tuples of generator indices; the empty tuple is the identity and prints as
``"e"``.  For I/O, generators are rendered as the letters ``a``-``z``, which
caps the rank at 26.

On top of the free word arithmetic this module implements the apparatus of a
diagram involution ``*`` (an order <= 2 permutation of the generators): the
set of twisted involutions ``w`` with ``w^-1 == w*``, the twist action
``s # w`` (``sw`` when ``sw == w s*``, else ``s w s*``), twist expressions
and their rank function ``rho``, the companion statistic ``ell_star`` with
``2*rho == ell + ell_star``, and the subword characterisation of Bruhat
order on both the full group and the twisted involutions.

All functions are pure; words and specs are immutable values.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

Word = tuple[int, ...]

IDENTITY: Word = ()

LETTERS = string.ascii_lowercase
MAX_GENERATORS = len(LETTERS)

# Enumerations refuse to grow past this many elements unless overridden.
DEFAULT_CAP = 10**6


class GeneratorError(ValueError):
    """A generator index or letter outside the declared range."""


class CapExceeded(RuntimeError):
    """An enumeration grew past the configured element cap."""


class NotTwistedInvolution(ValueError):
    """A word expected to satisfy ``w^-1 == w*`` does not."""


@dataclass(frozen=True)
class CoxeterSpec:
    """A universal Coxeter system: generator count plus diagram involution.

    ``star`` is a permutation of ``range(gen_count)`` with ``star o star = id``.
    The pair fixes everything else in this package.
    """

    gen_count: int
    star: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.gen_count <= MAX_GENERATORS:
            raise GeneratorError(
                f"gen_count must be in 1..{MAX_GENERATORS}, got {self.gen_count}"
            )
        if sorted(self.star) != list(range(self.gen_count)):
            raise GeneratorError(f"star must permute 0..{self.gen_count - 1}")
        for i, j in enumerate(self.star):
            if self.star[j] != i:
                raise GeneratorError("star must be an involution")

    @classmethod
    def make(cls, gen_count: int, star: str = "id") -> "CoxeterSpec":
        """Build a spec from a star literal, e.g. ``make(3, "(a b)")``."""
        return cls(gen_count, parse_star(star, gen_count))

    @property
    def star_is_fixed_point_free(self) -> bool:
        return all(self.star[i] != i for i in range(self.gen_count))

    def __str__(self) -> str:
        return f"gens={self.gen_count} star={format_star(self.star)}"


def reduce_word(letters: Iterable[int], gen_count: int) -> Word:
    """Reduce a raw generator sequence by cancelling equal adjacent letters.

    >>> reduce_word([0, 1, 1, 0], 3)
    ()
    >>> reduce_word([0, 1, 0], 3)
    (0, 1, 0)
    >>> reduce_word([0, 1, 1, 0, 2], 3)
    (2,)
    """
    out: list[int] = []
    for s in letters:
        if not 0 <= s < gen_count:
            raise GeneratorError(f"generator {s} out of range 0..{gen_count - 1}")
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def multiply(u: Word, w: Word) -> Word:
    """Product of two reduced words; cancellation happens only at the seam.

    >>> multiply((0, 1), (1, 0))
    ()
    >>> multiply((0, 1), (0, 1))
    (0, 1, 0, 1)
    >>> multiply((0, 1, 0), (0, 2))
    (0, 1, 2)
    """
    i = len(u)
    j = 0
    while i > 0 and j < len(w) and u[i - 1] == w[j]:
        i -= 1
        j += 1
    return u[:i] + w[j:]


def inverse(w: Word) -> Word:
    return w[::-1]


def star_word(spec: CoxeterSpec, w: Word) -> Word:
    """Apply the diagram involution letterwise."""
    return tuple(spec.star[s] for s in w)


def dagger(spec: CoxeterSpec, w: Word) -> Word:
    """Reversal composed with the diagram involution: ``dagger(w) = (w*)^-1``."""
    return tuple(spec.star[s] for s in reversed(w))


def descents(w: Word) -> tuple[frozenset[int], frozenset[int]]:
    """Left and right descent sets; singletons except for the identity.

    >>> descents((0, 1, 0))
    (frozenset({0}), frozenset({0}))
    >>> descents(())
    (frozenset(), frozenset())
    """
    if not w:
        return frozenset(), frozenset()
    return frozenset({w[0]}), frozenset({w[-1]})


def _is_subsequence(y: tuple, w: tuple) -> bool:
    i = 0
    for s in w:
        if i < len(y) and y[i] == s:
            i += 1
    return i == len(y)


def bruhat_leq(y: Word, w: Word) -> bool:
    """Bruhat order: reduced words are unique here, so the order is the
    (greedy) subsequence test on the reduced words.

    >>> bruhat_leq((1, 0), (0, 1, 0))
    True
    >>> bruhat_leq((1, 0, 1), (0, 1, 0))
    False
    """
    return _is_subsequence(y, w)


def word_key(w: Word) -> tuple[int, Word]:
    """Canonical sort key: length first, then lexicographic."""
    return (len(w), w)


def is_twisted_involution(spec: CoxeterSpec, w: Word) -> bool:
    return w[::-1] == star_word(spec, w)


def check_twisted_involution(spec: CoxeterSpec, w: Word) -> Word:
    if not is_twisted_involution(spec, w):
        raise NotTwistedInvolution(f"{format_word(w)} does not satisfy w^-1 == w*")
    return w


@lru_cache(maxsize=None)
def twist(spec: CoxeterSpec, s: int, w: Word) -> Word:
    """The twist action of a generator on a twisted involution.

    Returns ``sw`` if ``sw == w s*`` and ``s w s*`` otherwise; the result is
    again a twisted involution, distinct from ``w``, and applying the same
    generator twice returns ``w``.
    """
    sw = multiply((s,), w)
    if sw == multiply(w, (spec.star[s],)):
        return sw
    return multiply(sw, (spec.star[s],))


def twist_word(spec: CoxeterSpec, x: Word, w: Word) -> Word:
    """Fold the twist action over the letters of ``x`` (rightmost acts first).

    In the universal case this is a genuine group action, so the result only
    depends on the group element ``x``.
    """
    for s in reversed(x):
        w = twist(spec, s, w)
    return w


@lru_cache(maxsize=None)
def twist_expression(spec: CoxeterSpec, w: Word) -> tuple[int, ...]:
    """The unique reduced twist expression of a twisted involution.

    Peeling the unique left descent repeatedly gives generators
    ``(s_1, ..., s_k)`` with ``w == s_1 # (s_2 # (... # identity))``; in a
    universal system this sequence is unique and its length is ``rho(w)``.
    """
    check_twisted_involution(spec, w)
    out: list[int] = []
    while w:
        s = w[0]
        out.append(s)
        w = twist(spec, s, w)
    return tuple(out)


def rho(spec: CoxeterSpec, w: Word) -> int:
    """Rank of ``w`` in the Bruhat order on twisted involutions."""
    return len(twist_expression(spec, w))


def ell_star(spec: CoxeterSpec, w: Word) -> int:
    """Number of one-letter steps in the descent-stripping trace of ``w``.

    Stripping the descent ``s`` from ``w_prev`` leaves ``w_next``; the step
    counts when ``s w_next == w_next s*``.  Together with the length this
    satisfies ``2*rho == ell + ell_star``.
    """
    check_twisted_involution(spec, w)
    count = 0
    while w:
        s = w[0]
        u = twist(spec, s, w)
        if multiply((s,), u) == multiply(u, (spec.star[s],)):
            count += 1
        w = u
    return count


def bruhat_leq_twisted(spec: CoxeterSpec, y: Word, w: Word) -> bool:
    """Bruhat order restricted to twisted involutions, via twist expressions.

    ``y <= w`` exactly when the reduced twist expression of ``y`` is a
    subsequence of the one of ``w``; this agrees with `bruhat_leq` on pairs
    of twisted involutions.
    """
    return _is_subsequence(twist_expression(spec, y), twist_expression(spec, w))


def enumerate_words(gen_count: int, max_len: int, cap: int = DEFAULT_CAP) -> list[Word]:
    """All reduced words of length <= max_len, in (length, lex) order.

    There are ``n*(n-1)**(L-1)`` words of each length ``L >= 1``.

    >>> [''.join('abc'[s] for s in w) or 'e' for w in enumerate_words(2, 2)]
    ['e', 'a', 'b', 'ab', 'ba']
    """
    out: list[Word] = [IDENTITY]
    level: list[Word] = [IDENTITY]
    for _ in range(max_len):
        nxt = [
            w + (s,)
            for w in level
            for s in range(gen_count)
            if not w or w[-1] != s
        ]
        if len(out) + len(nxt) > cap:
            raise CapExceeded(f"enumeration exceeds cap of {cap} elements")
        out.extend(nxt)
        level = nxt
    return out


def enumerate_twisted_involutions(
    spec: CoxeterSpec, max_rho: int, cap: int = DEFAULT_CAP
) -> list[Word]:
    """All twisted involutions of rank <= max_rho, in (length, lex) order.

    >>> spec = CoxeterSpec.make(2, "(a b)")
    >>> [format_word(w) for w in enumerate_twisted_involutions(spec, 1)]
    ['e', 'ab', 'ba']
    """
    seen: set[Word] = {IDENTITY}
    level: list[Word] = [IDENTITY]
    for _ in range(max_rho):
        nxt: set[Word] = set()
        for w in level:
            for s in range(spec.gen_count):
                u = twist(spec, s, w)
                if len(u) > len(w) and u not in seen:
                    nxt.add(u)
        if len(seen) + len(nxt) > cap:
            raise CapExceeded(f"enumeration exceeds cap of {cap} elements")
        seen |= nxt
        level = sorted(nxt, key=word_key)
    return sorted(seen, key=word_key)


@lru_cache(maxsize=None)
def lower_words(w: Word) -> tuple[Word, ...]:
    """All elements below ``w`` in Bruhat order, in (length, lex) order.

    These are exactly the reductions of subsequences of the reduced word.
    """
    out: set[Word] = {IDENTITY}
    for s in w:
        out |= {multiply(u, (s,)) for u in out}
    return tuple(sorted(out, key=word_key))


@lru_cache(maxsize=None)
def lower_twisted(spec: CoxeterSpec, w: Word) -> tuple[Word, ...]:
    """All twisted involutions below ``w``, in (length, lex) order."""
    expr = twist_expression(spec, w)
    out: set[Word] = {IDENTITY}
    for s in reversed(expr):
        out |= {twist(spec, s, u) for u in out}
    keep = [u for u in out if bruhat_leq_twisted(spec, u, w)]
    return tuple(sorted(keep, key=word_key))


def format_word(w: Word) -> str:
    """Render a word as letters, or ``"e"`` for the identity."""
    return "".join(LETTERS[s] for s in w) or "e"


def parse_word(text: str, gen_count: int) -> Word:
    """Parse a word literal (``"e"`` or a letter string) and reduce it."""
    text = text.strip()
    if text == "e":
        return IDENTITY
    if not text:
        raise GeneratorError("empty word literal; use 'e' for the identity")
    letters = []
    for ch in text:
        idx = LETTERS.find(ch)
        if idx < 0:
            raise GeneratorError(f"invalid letter {ch!r} in word literal")
        letters.append(idx)
    return reduce_word(letters, gen_count)


def format_star(star: tuple[int, ...]) -> str:
    """Render an involution as disjoint transpositions, e.g. ``"(a b)"``."""
    parts = [
        f"({LETTERS[i]} {LETTERS[j]})"
        for i, j in enumerate(star)
        if j > i
    ]
    return "".join(parts) or "id"


def parse_star(text: str, gen_count: int) -> tuple[int, ...]:
    """Parse a star literal: ``"id"`` or transpositions like ``"(a b)(c d)"``."""
    text = text.strip()
    star = list(range(gen_count))
    if text == "id":
        return tuple(star)
    pos = 0
    moved: set[int] = set()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise GeneratorError(f"bad star literal at {text[pos:]!r}")
        close = text.find(")", pos)
        if close < 0:
            raise GeneratorError("unclosed transposition in star literal")
        pair = text[pos + 1 : close].split()
        if len(pair) != 2:
            raise GeneratorError(f"transposition needs two letters: {text[pos:close+1]!r}")
        ij = []
        for ch in pair:
            idx = LETTERS.find(ch) if len(ch) == 1 else -1
            if not 0 <= idx < gen_count:
                raise GeneratorError(f"invalid letter {ch!r} in star literal")
            ij.append(idx)
        i, j = ij
        if i == j or i in moved or j in moved:
            raise GeneratorError("star transpositions must be disjoint")
        moved |= {i, j}
        star[i], star[j] = j, i
        pos = close + 1
    return tuple(star)
