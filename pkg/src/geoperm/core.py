"""Permutations, tagged permutations and patterns, and the symmetry operations on them.

Elements are 0-based integers.  A tagged permutation stores its two tags as
positions: ``zero`` (resp. ``one``) is the number of elements preceding the
``^0`` (resp. ``^1``) tag, so ``2 3 z 0 o 1`` is perm ``(2, 3, 0, 1)`` with
tags ``(2, 3)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

ZERO_TOKEN = "z"
ONE_TOKEN = "o"


class ParseError(ValueError):
    """Malformed pattern text.  ``position`` is the offending character offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_word(word: Sequence[int]) -> None:
    if len(word) < 1:
        raise ValueError("a permutation needs at least one element")
    if sorted(word) != list(range(len(word))):
        raise ValueError(f"{list(word)} is not a permutation of 0..{len(word) - 1}")


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(e) for e in self.word))
        _check_word(self.word)

    @property
    def n(self) -> int:
        return len(self.word)

    def ranks(self) -> tuple[int, ...]:
        """``ranks()[e]`` is the position of element ``e`` in the word."""
        inv = [0] * len(self.word)
        for pos, e in enumerate(self.word):
            inv[e] = pos
        return tuple(inv)

    def __str__(self) -> str:
        return format_word(self.word)


@dataclass(frozen=True, order=True)
class TaggedPermutation:
    perm: Permutation
    zero: int
    one: int

    def __post_init__(self):
        if not 0 <= self.zero <= self.one <= self.perm.n:
            raise ValueError(f"bad tags ({self.zero}, {self.one}) for size {self.perm.n}")

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def tags(self) -> tuple[int, int]:
        return (self.zero, self.one)

    def tokens(self) -> list[str]:
        out = [str(e) for e in self.perm.word]
        out.insert(self.one, ONE_TOKEN)
        out.insert(self.zero, ZERO_TOKEN)
        return out

    def __str__(self) -> str:
        return " ".join(self.tokens())


@dataclass(frozen=True, order=True)
class Triple:
    perms: tuple[Permutation, Permutation, Permutation]

    def __post_init__(self):
        perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in self.perms)
        if len(perms) != 3:
            raise ValueError("a triple has exactly three permutations")
        if len({p.n for p in perms}) != 1:
            raise ValueError("permutations of a triple must have equal size")
        object.__setattr__(self, "perms", perms)

    @classmethod
    def from_words(cls, *words) -> "Triple":
        if len(words) == 1:
            words = tuple(words[0])
        return cls(tuple(Permutation(parse_word(w) if isinstance(w, str) else w) for w in words))

    @property
    def n(self) -> int:
        return self.perms[0].n

    @property
    def words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.word for p in self.perms)

    def __str__(self) -> str:
        return format_pattern(self)


@dataclass(frozen=True, order=True)
class TaggedPattern:
    lines: tuple[TaggedPermutation, TaggedPermutation, TaggedPermutation]

    def __post_init__(self):
        lines = tuple(self.lines)
        if len(lines) != 3:
            raise ValueError("a tagged pattern has exactly three lines")
        if len({t.n for t in lines}) != 1:
            raise ValueError("lines of a tagged pattern must have equal size")
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_parts(cls, words, tags) -> "TaggedPattern":
        return cls(tuple(TaggedPermutation(Permutation(w), z, o) for w, (z, o) in zip(words, tags)))

    @property
    def n(self) -> int:
        return self.lines[0].n

    @property
    def words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(t.perm.word for t in self.lines)

    @property
    def tags(self) -> tuple[tuple[int, int], ...]:
        return tuple(t.tags for t in self.lines)

    @property
    def triple(self) -> Triple:
        return Triple(tuple(t.perm for t in self.lines))

    def sort_key(self):
        """Element-id words first, then tags as (z, o) pairs."""
        return (self.words, self.tags)

    def __str__(self) -> str:
        return format_pattern(self)


# ---------------------------------------------------------------- text I/O

def parse_word(text: str) -> tuple[int, ...]:
    """Digit-word shorthand such as ``"0123"`` (sizes up to 10)."""
    if not text.isdigit():
        raise ParseError(f"not a digit word: {text!r}")
    return tuple(int(c) for c in text)


def format_word(word: Sequence[int]) -> str:
    if len(word) <= 10:
        return "".join(str(e) for e in word)
    return " ".join(str(e) for e in word)


def _parse_line(text: str, offset: int):
    elements, zero, one = [], None, None
    pos = offset
    for raw in text.split():
        pos = offset + text.index(raw, pos - offset)
        if raw == ZERO_TOKEN:
            if zero is not None:
                raise ParseError("duplicate tag z", pos)
            if one is not None:
                raise ParseError("tag o precedes tag z", pos)
            zero = len(elements)
        elif raw == ONE_TOKEN:
            if one is not None:
                raise ParseError("duplicate tag o", pos)
            one = len(elements)
        elif raw.isdigit():
            e = int(raw)
            if e in elements:
                raise ParseError(f"duplicate element {e}", pos)
            elements.append(e)
        else:
            raise ParseError(f"unexpected token {raw!r}", pos)
        pos += len(raw)
    if (zero is None) != (one is None):
        raise ParseError("a tagged line needs both z and o", offset)
    if zero is not None and one < zero:
        raise ParseError("tag o precedes tag z", offset)
    if not elements:
        raise ParseError("empty line", offset)
    missing = set(range(len(elements))) - set(elements)
    if missing:
        raise ParseError(f"missing element {min(missing)}", offset)
    return tuple(elements), (None if zero is None else (zero, one))


def parse_pattern(text: str) -> Union[TaggedPattern, Triple]:
    """Parse ``"0 1 z o | z o 0 1 | z 0 1 o"`` or the shorthand ``"012 210 120"``.

    Untagged input yields a :class:`Triple`, fully tagged input a
    :class:`TaggedPattern`.
    """
    if "|" not in text:
        parts = text.split()
        if len(parts) != 3:
            raise ParseError("expected three digit words or three '|'-separated lines", 0)
        words, pos = [], 0
        for part in parts:
            pos = text.index(part, pos)
            try:
                words.append(parse_word(part))
            except ParseError as exc:
                raise ParseError(str(exc).split(" (at")[0], pos) from None
            if len(set(words[-1])) != len(words[-1]):
                raise ParseError("duplicate element", pos)
            if sorted(words[-1]) != list(range(len(words[-1]))):
                raise ParseError("missing element", pos)
            pos += len(part)
        if len({len(w) for w in words}) != 1:
            raise ParseError("size mismatch across lines", 0)
        return Triple(tuple(Permutation(w) for w in words))

    chunks = text.split("|")
    if len(chunks) != 3:
        raise ParseError(f"expected 3 lines, got {len(chunks)}", 0)
    parsed, offset = [], 0
    for chunk in chunks:
        parsed.append(_parse_line(chunk, offset))
        offset += len(chunk) + 1
    if len({len(w) for w, _ in parsed}) != 1:
        raise ParseError("size mismatch across lines", 0)
    tagged = [t is not None for _, t in parsed]
    if all(tagged):
        return TaggedPattern.from_parts([w for w, _ in parsed], [t for _, t in parsed])
    if any(tagged):
        raise ParseError("either all lines carry tags or none does", 0)
    return Triple(tuple(Permutation(w) for w, _ in parsed))


def format_pattern(p: Union[TaggedPattern, Triple]) -> str:
    if isinstance(p, TaggedPattern):
        return " | ".join(str(t) for t in p.lines)
    if p.n <= 10:
        return " ".join(format_word(w) for w in p.words)
    return " | ".join(" ".join(str(e) for e in w) for w in p.words)


# ---------------------------------------------------------------- symmetries

def reverse(p):
    """Reverse a permutation; tags mirror as (z, o) -> (n - o, n - z)."""
    if isinstance(p, Permutation):
        return Permutation(p.word[::-1])
    if isinstance(p, TaggedPermutation):
        n = p.n
        return TaggedPermutation(Permutation(p.perm.word[::-1]), n - p.one, n - p.zero)
    raise TypeError(f"cannot reverse {type(p).__name__}")


def relabel(p, mapping: Sequence[int]):
    """Rename element ``e`` to ``mapping[e]`` on every line."""
    if isinstance(p, Triple):
        return Triple(tuple(Permutation(tuple(mapping[e] for e in w)) for w in p.words))
    if isinstance(p, TaggedPattern):
        return TaggedPattern.from_parts(
            [tuple(mapping[e] for e in w) for w in p.words], p.tags)
    raise TypeError(f"cannot relabel {type(p).__name__}")


def rotate(p, k: int = 1):
    """Cyclic shift of the three lines: line ``i`` of the result is line ``i + k``."""
    k %= 3
    if isinstance(p, Triple):
        return Triple(p.perms[k:] + p.perms[:k])
    return TaggedPattern(p.lines[k:] + p.lines[:k])


def delete_element(p: TaggedPattern, e: int) -> TaggedPattern:
    """Remove element ``e`` from all lines, keep the tags in place and relabel densely."""
    words, tags = [], []
    for word, (z, o) in zip(p.words, p.tags):
        pos = word.index(e)
        words.append(tuple(x - (x > e) for x in word if x != e))
        tags.append((z - (pos < z), o - (pos < o)))
    return TaggedPattern.from_parts(words, tags)


def restrict(p: TaggedPattern, keep: Sequence[int]) -> TaggedPattern:
    """Sub-pattern on the elements ``keep``, relabelled so that line X reads ``0 1 2 ...``."""
    keep_set = set(keep)
    first = [e for e in p.words[0] if e in keep_set]
    label = {e: i for i, e in enumerate(first)}
    words, tags = [], []
    for word, (z, o) in zip(p.words, p.tags):
        words.append(tuple(label[e] for e in word if e in keep_set))
        tags.append((sum(1 for x in word[:z] if x in keep_set),
                     sum(1 for x in word[:o] if x in keep_set)))
    return TaggedPattern.from_parts(words, tags)


def _identity_first(words, tags):
    label = [0] * len(words[0])
    for i, e in enumerate(words[0]):
        label[e] = i
    return (tuple(tuple(label[e] for e in w) for w in words), tuple(tags))


def class_key_tuple(words, tags):
    """Raw-tuple form of :func:`tagged_class_key` (used on hot paths)."""
    return min(
        _identity_first(words[k:] + words[:k], tags[k:] + tags[:k]) for k in range(3))


def tagged_class_key(p: TaggedPattern) -> TaggedPattern:
    """Lexicographically smallest pattern under relabelling and cyclic shifts of the lines.

    For a fixed shift the smallest relabelling is the one turning the first
    line into the identity, so only three candidates need comparing.
    """
    words, tags = class_key_tuple(tuple(p.words), tuple(p.tags))
    return TaggedPattern.from_parts(words, tags)


def normalize_words(words) -> tuple[tuple[int, ...], ...]:
    """Normal form of three words as used for the size-6 forbidden table.

    Each of the six oriented choices of first permutation is relabelled to the
    identity; the second word is the smallest of the two remaining ones and
    their reverses, the third the smaller of the last one and its reverse.
    """
    n = len(words[0])
    best = None
    for first in range(3):
        rest = [words[k] for k in range(3) if k != first]
        for lead in (words[first], words[first][::-1]):
            label = [0] * n
            for i, e in enumerate(lead):
                label[e] = i
            cands = []
            for w in rest:
                r = tuple(label[e] for e in w)
                cands.append((min(r, r[::-1]), r))
            if cands[0][0] <= cands[1][0]:
                second, third = cands[0][0], cands[1][0]
            else:
                second, third = cands[1][0], cands[0][0]
            cand = (second, third)
            if best is None or cand < best:
                best = cand
    return (tuple(range(n)),) + best


def normalize_triple(t: Triple) -> Triple:
    return Triple(tuple(Permutation(w) for w in normalize_words(t.words)))


# ---------------------------------------------------------------- enumeration

def tag_positions(n: int) -> list[tuple[int, int]]:
    """All (z, o) with 0 <= z <= o <= n, in lexicographic order."""
    return [(z, o) for z in range(n + 1) for o in range(z, n + 1)]


def enumerate_taggings(t: Triple, start: int = 0) -> Iterator[TaggedPattern]:
    """Every tagging of ``t``; line X varies slowest.  ``start`` skips ahead."""
    tags = tag_positions(t.n)
    words = t.words
    for tx, ty, tz in itertools.islice(itertools.product(tags, repeat=3), start, None):
        yield TaggedPattern.from_parts(words, (tx, ty, tz))


def enumerate_normalized_words(n: int, start: int = 0) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Normal forms of all triples of size ``n``, each once, in lexicographic order."""
    ident = tuple(range(n))

    def gen():
        perms = list(itertools.permutations(range(n)))
        for w2 in perms:
            if w2[::-1] < w2:
                continue
            for w3 in perms:
                if w3 < w2 or w3[::-1] < w3:
                    continue
                words = (ident, w2, w3)
                if normalize_words(words) == words:
                    yield words

    return itertools.islice(gen(), start, None)


def enumerate_normalized_triples(n: int, start: int = 0) -> Iterator[Triple]:
    for words in enumerate_normalized_words(n, start):
        yield Triple(tuple(Permutation(w) for w in words))
