import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoperm.core import (
    ParseError, Permutation, TaggedPattern, TaggedPermutation, Triple, class_key_tuple,
    delete_element, enumerate_normalized_triples, enumerate_normalized_words, enumerate_taggings,
    format_pattern, normalize_triple, normalize_words, parse_pattern, relabel, restrict, reverse,
    rotate, tag_positions, tagged_class_key,
)

# brute force: normal forms of every (identity, w2, w3), see test_normalized_counts_brute_force
NORMALIZED_COUNTS = {1: 1, 2: 1, 3: 3, 4: 21, 5: 335, 6: 11043}


@st.composite
def tagged_patterns(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    words = [tuple(draw(st.permutations(range(n)))) for _ in range(3)]
    tags = [draw(st.sampled_from(tag_positions(n))) for _ in range(3)]
    return TaggedPattern.from_parts(words, tags)


def test_parse_tagged_example():
    p = parse_pattern("0 1 z o | z o 0 1 | z 0 1 o")
    assert isinstance(p, TaggedPattern)
    assert p.n == 2
    assert p.tags == ((2, 2), (0, 0), (0, 2))
    assert p.words == ((0, 1), (0, 1), (0, 1))


def test_parse_shorthand():
    t = parse_pattern("012 210 120")
    assert isinstance(t, Triple)
    assert t.words == ((0, 1, 2), (2, 1, 0), (1, 2, 0))


@pytest.mark.parametrize("text, fragment", [
    ("0 0 z o | z o 0 1 | z o 0 1", "duplicate element"),
    ("0 2 z o | z o 0 1 | z o 0 1", "missing element"),
    ("0 1 o z | z o 0 1 | z o 0 1", "o precedes"),
    ("0 1 z o | z o 0 1 2 | z o 0 1", "size mismatch"),
    ("0 1 z o | z o 0 1", "expected 3"),
    ("0 1 z o | z o 0 x | z o 0 1", "unexpected token"),
    ("012 210", "expected three"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_pattern(text)


def test_parse_error_position_points_at_token():
    text = "0 1 z o | z o 0 1 | z o 1 1"
    with pytest.raises(ParseError) as info:
        parse_pattern(text)
    assert text[info.value.position] == "1"
    assert info.value.position > text.rindex("|")


@given(tagged_patterns(max_n=12))
def test_format_parse_round_trip(p):
    assert parse_pattern(format_pattern(p)) == p
    assert parse_pattern(format_pattern(p.triple)) == p.triple


def test_reverse_examples():
    assert reverse(Permutation((0, 1, 2))) == Permutation((2, 1, 0))
    tp = TaggedPermutation(Permutation((0, 1)), 2, 2)
    r = reverse(tp)
    assert r.tags == (0, 0)
    assert " ".join(r.tokens()) == "z o 1 0"


@given(tagged_patterns())
def test_reverse_is_involution(p):
    for tp in p.lines:
        assert reverse(reverse(tp)) == tp
        assert reverse(reverse(tp.perm)) == tp.perm


def test_enumerate_taggings_counts():
    for n, want in [(1, 27), (2, 216), (5, 9261)]:
        t = Triple.from_words(*[tuple(range(n))] * 3)
        items = list(enumerate_taggings(t))
        assert len(items) == want
        assert len(set(items)) == want


def test_enumerate_taggings_order_and_restart():
    t = Triple.from_words("012", "120", "201")
    items = list(enumerate_taggings(t))
    assert [p.tags for p in items] == list(product(tag_positions(3), repeat=3))
    assert list(enumerate_taggings(t, start=123)) == items[123:]


def test_normalize_examples():
    ident = Triple.from_words("012345", "012345", "012345")
    assert normalize_triple(ident) == ident
    t = normalize_triple(Triple.from_words("012345", "210543", "135024"))
    assert t.words[1:] == ((1, 3, 5, 0, 2, 4), (2, 1, 0, 5, 4, 3))


def _random_orbit_member(words, rng):
    n = len(words[0])
    words = list(words)
    rng.shuffle(words)
    words = [w[::-1] if rng.random() < 0.5 else w for w in words]
    label = list(range(n))
    rng.shuffle(label)
    return tuple(tuple(label[e] for e in w) for w in words)


def test_normalize_is_orbit_invariant_and_idempotent():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 7)
        words = tuple(tuple(rng.sample(range(n), n)) for _ in range(3))
        norm = normalize_words(words)
        assert norm[0] == tuple(range(n))
        assert normalize_words(norm) == norm
        assert normalize_words(_random_orbit_member(words, rng)) == norm


def test_class_key_invariance():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 6)
        p = TaggedPattern.from_parts([rng.sample(range(n), n) for _ in range(3)],
                                     [rng.choice(tag_positions(n)) for _ in range(3)])
        key = tagged_class_key(p)
        assert tagged_class_key(key) == key
        assert tagged_class_key(rotate(p, rng.randint(1, 2))) == key
        assert tagged_class_key(relabel(p, rng.sample(range(n), n))) == key


def test_class_key_separates_classes():
    # brute-force the equivalence on size 2: keys agree iff an explicit transformation exists
    pats = [TaggedPattern.from_parts(w, t)
            for w in product(permutations(range(2)), repeat=3)
            for t in product(tag_positions(2), repeat=3)]
    for p in pats[::37]:
        orbit = {relabel(rotate(p, k), m) for k in range(3) for m in permutations(range(2))}
        same = {q for q in pats if tagged_class_key(q) == tagged_class_key(p)}
        assert same == orbit


def test_delete_and_restrict():
    p = parse_pattern("0 z 1 2 o | 2 z o 0 1 | z 1 0 2 o")
    d = delete_element(p, 1)
    assert format_pattern(d) == "0 z 1 o | 1 z o 0 | z 0 1 o"
    r = restrict(p, (0, 2))
    assert r.words[0] == (0, 1)
    assert r.tags == ((1, 2), (1, 1), (0, 2))


def test_class_key_tuple_matches_object_form():
    p = parse_pattern("1 z 0 o | 0 1 z o | z o 1 0")
    key = tagged_class_key(p)
    assert class_key_tuple(p.words, p.tags) == (key.words, key.tags)


def test_normalized_enumeration_small():
    assert [t.words for t in enumerate_normalized_triples(1)] == [((0,), (0,), (0,))]
    assert list(enumerate_normalized_words(2)) == [((0, 1), (0, 1), (0, 1))]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_normalized_counts_brute_force(n):
    ident = tuple(range(n))
    perms = list(permutations(range(n)))
    forms = {normalize_words((ident, a, b)) for a in perms for b in perms}
    listed = list(enumerate_normalized_words(n))
    assert len(listed) == len(set(listed)) == len(forms) == NORMALIZED_COUNTS[n]
    assert set(listed) == forms
    assert listed == sorted(listed)


def test_normalized_count_size6():
    assert sum(1 for _ in enumerate_normalized_words(6)) == NORMALIZED_COUNTS[6]


def test_normalized_enumeration_restart():
    full = list(enumerate_normalized_words(5))
    assert list(enumerate_normalized_words(5, start=100)) == full[100:]


def test_invalid_values_rejected():
    with pytest.raises(ValueError):
        Permutation((0, 2))
    with pytest.raises(ValueError):
        TaggedPermutation(Permutation((0, 1)), 2, 1)
    with pytest.raises(ValueError):
        Triple.from_words("01", "01", "012")
