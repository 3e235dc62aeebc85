import random
from fractions import Fraction

import pytest

from geoperm.core import (
    Triple, delete_element, enumerate_normalized_triples, enumerate_taggings, normalize_triple,
    parse_pattern, rotate,
)
from geoperm.decider import (
    UndecidedOrientationError, SearchStats, Verdict, check_verdict, decide_canonical, decide_full, decide_tagged,
    extract_realization,
)
from geoperm.geometry import verify_certificate
from geoperm.lifting import MID, POS, RepGraph, topological_sort, witness_from_reps
from helpers import random_tagged

FORBIDDEN_SIZE4 = [("0123", "3210", "1032"), ("3210", "0123", "1032"),
            ("0123", "3210", "2301"), ("3210", "0123", "2301")]


def test_forbidden_size2_instance_unrealizable():
    for engine in ("python", "compiled"):
        assert not decide_tagged(parse_pattern("0 1 z o | z o 0 1 | z o 0 1"), engine=engine)


def test_all_size1_patterns_realizable():
    t = Triple.from_words("0", "0", "0")
    for p in enumerate_taggings(t):
        v = decide_tagged(p)
        assert v.realizable and check_verdict(v)


def test_known_certificate():
    v = decide_tagged(parse_pattern("z 0 o 1 | z 0 o 1 | z 0 o 1"))
    assert v.realizable
    cert = v.certificate
    assert cert.x == (Fraction(1, 2), 3)
    assert cert.y == (Fraction(3, 4), 5)
    assert cert.z == (Fraction(5, 6), 7)
    assert verify_certificate(v.pattern, cert)


@pytest.mark.parametrize("words", FORBIDDEN_SIZE4)
def test_fixed_size4_triples_not_canonical(words):
    t = Triple.from_words(*words)
    assert not decide_canonical(t, engine="compiled")


def test_fixed_size4_python_engine_agrees():
    t = Triple.from_words(*FORBIDDEN_SIZE4[0])
    assert not decide_canonical(t, incremental=True)


def test_identity_pair_canonical():
    v = decide_canonical(Triple.from_words("01", "01", "01"))
    assert v.realizable and check_verdict(v)


def test_decide_full_table_entries(filter4):
    for words in [("012345", "013524", "104523"), ("012345", "210543", "135024")]:
        assert not decide_full(Triple.from_words(*words), prefilter=filter4, engine="compiled")


def test_decide_full_realizable_records_mask(filter4):
    t = Triple.from_words("012345", "102345", "012354")
    v = decide_full(t, prefilter=filter4, engine="compiled")
    assert v.realizable and v.reversals is not None and check_verdict(v)
    words = [w[::-1] if v.reversals >> k & 1 else w for k, w in enumerate(t.words)]
    assert v.pattern.words == tuple(words)


def test_extract_realization_examples():
    cfg = extract_realization(RepGraph(1), [POS, POS, POS])
    assert (cfg.x, cfg.y, cfg.z) == ((2,), (3,), (4,))
    # vertex 0 at topological rank 2 (0-based) in MID gets 3/4
    g = RepGraph(1, [0, 1 << 2 | 1, 1])
    order = topological_sort(g)
    assert order.index(0) == 2
    cfg = extract_realization(g, [MID, POS, POS])
    assert cfg.x == (Fraction(3, 4),)
    assert list(cfg.x + cfg.y + cfg.z) == witness_from_reps(order, [MID, POS, POS])


def test_engines_agree():
    rng = random.Random(31)
    for _ in range(60):
        p = random_tagged(rng, rng.randint(2, 4))
        plain = decide_tagged(p)
        inc = decide_tagged(p, incremental=True)
        comp = decide_tagged(p, engine="compiled")
        assert plain.realizable == inc.realizable == comp.realizable
        assert plain.certificate == inc.certificate == comp.certificate
        if plain.realizable:
            assert check_verdict(plain)


def test_unknown_engine_rejected():
    p = parse_pattern("z 0 o | z 0 o | z 0 o")
    with pytest.raises(ValueError):
        decide_tagged(p, engine="gpu")


def test_rotation_symmetry():
    rng = random.Random(32)
    for _ in range(200):
        p = random_tagged(rng, rng.randint(2, 4))
        want = decide_tagged(p, engine="compiled").realizable
        assert decide_tagged(rotate(p, 1), engine="compiled").realizable == want
        assert decide_tagged(rotate(p, 2), engine="compiled").realizable == want


def test_normalization_symmetry():
    rng = random.Random(33)
    for _ in range(10):
        n = 4
        t = Triple.from_words(*[tuple(rng.sample(range(n), n)) for _ in range(3)])
        a = decide_full(t, engine="compiled").realizable
        b = decide_full(normalize_triple(t), engine="compiled").realizable
        assert a == b


def test_deletion_monotonicity():
    rng = random.Random(34)
    checked = 0
    while checked < 100:
        p = random_tagged(rng, rng.randint(2, 5))
        if not decide_tagged(p, engine="compiled"):
            continue
        for e in range(p.n):
            assert decide_tagged(delete_element(p, e), engine="compiled")
        checked += 1


def test_instance_accounting_small():
    stats = SearchStats()
    decide_full(Triple.from_words("01", "01", "10"), short_circuit=False, engine="compiled",
                stats=stats)
    assert stats.tagged_calls == 8 * 6 ** 3
    stats = SearchStats()
    decide_full(Triple.from_words("01", "01", "10"), short_circuit=False, stats=stats)
    assert stats.tagged_calls == 8 * 6 ** 3


def test_short_circuit_returns_first_tagging():
    t = Triple.from_words("012", "120", "201")
    first = decide_canonical(t, engine="compiled")
    taggings = list(enumerate_taggings(t))
    hits = [p for p in taggings if decide_tagged(p, engine="compiled")]
    assert first.pattern == hits[0]
    assert decide_canonical(t, short_circuit=False, engine="compiled").pattern == hits[0]
    assert decide_canonical(t).pattern == hits[0]


def test_prefilter_skips_and_preserves_verdicts(filter4):
    skipped = 0
    for t in list(enumerate_normalized_triples(5))[:40]:
        stats = SearchStats()
        a = decide_full(t, prefilter=filter4, engine="compiled", stats=stats)
        b = decide_full(t, engine="compiled")
        assert a.realizable == b.realizable
        assert check_verdict(a)
        skipped += stats.skipped_by_filter
    assert skipped > 0


def test_guard_fires_when_both_finals_pending():
    from geoperm import decider
    # forbidden pattern: every candidate reaches the final tests for its pair
    inst = decider._Instance(parse_pattern("0 1 z o | z o 0 1 | z o 0 1"))
    size = 3 * inst.n
    for mask in range(1 << len(inst.unknowns)):
        succ = inst.candidate_graph(mask)
        if succ is None:
            continue
        free = [(v, w) for v in range(size) for w in range(v + 1, size)
                if not (succ[v] >> w & 1 or succ[w] >> v & 1)]
        if free:
            v, w = free[0]
            inst._final_pair = lambda i, j, sv: ((1, v, w), (-1, v, w))
            with pytest.raises(UndecidedOrientationError):
                inst.check(succ)
            return
    pytest.fail("no candidate with an unordered pair")


def test_verdict_truthiness():
    assert not Verdict(False)
    assert Verdict(True, None, None)
