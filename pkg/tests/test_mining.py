import random
from itertools import combinations, product

import numpy as np

from geoperm.core import TaggedPattern, class_key_tuple, restrict, tag_positions
from geoperm.decider import decide_tagged
from geoperm.mining import (
    SubpatternFilter, flag_by_table, load_table, mine_minimal_forbidden, restriction_maps,
    save_table,
)


def test_restriction_maps_match_restrict():
    rng = random.Random(51)
    for _ in range(50):
        n = rng.randint(3, 6)
        words = tuple(tuple(rng.sample(range(n), n)) for _ in range(3))
        words = (tuple(range(n)),) + words[1:]
        keep = tuple(sorted(rng.sample(range(n), rng.randint(1, n - 1))))
        key, maps = restriction_maps(words, keep)
        small = tag_positions(len(keep))
        for t in product(range(len(tag_positions(n))), repeat=3):
            tags = [tag_positions(n)[i] for i in t]
            r = restrict(TaggedPattern.from_parts(words, tags), keep)
            assert r.words[1:] == key
            assert tuple(r.tags) == tuple(small[maps[l][t[l]]] for l in range(3))
            break  # one tagging per draw keeps this quick; maps are checked per line below
        for l in range(3):
            for i, (z, o) in enumerate(tag_positions(n)):
                tags = [(0, 0)] * 3
                tags[l] = (z, o)
                r = restrict(TaggedPattern.from_parts(words, tags), keep)
                assert small[maps[l][i]] == r.tags[l]


def test_tables_agree_with_direct_decisions(mined):
    table3, _ = mined[3]
    rng = random.Random(52)
    tags = tag_positions(3)
    for (w2, w3), arr in rng.sample(sorted(table3.items()), 8):
        for a, b, c in rng.sample(list(product(range(len(tags)), repeat=3)), 40):
            p = TaggedPattern.from_parts([(0, 1, 2), w2, w3], [tags[a], tags[b], tags[c]])
            assert bool(arr[a, b, c]) == (not decide_tagged(p, engine="compiled"))


def test_flag_by_table_matches_definition(mined):
    table3, _ = mined[3]
    rng = random.Random(53)
    tags = tag_positions(5)
    T = len(tags)
    for _ in range(3):
        words = ((0, 1, 2, 3, 4),) + tuple(tuple(rng.sample(range(5), 5)) for _ in range(2))
        flags = flag_by_table(words, table3, 3)
        for idx in rng.sample(range(T ** 3), 60):
            a, rest = divmod(idx, T * T)
            b, c = divmod(rest, T)
            p = TaggedPattern.from_parts(words, [tags[a], tags[b], tags[c]])
            want = False
            for keep in combinations(range(5), 3):
                r = restrict(p, keep)
                if table3[r.words[1:]][tuple(tag_positions(3).index(t) for t in r.tags)]:
                    want = True
                    break
            assert bool(flags[idx]) == want


def test_minimal_keys_are_minimal(mined):
    from geoperm.core import delete_element
    _, minimal3 = mined[3]
    for words, tags in sorted(minimal3)[:10]:
        p = TaggedPattern.from_parts(words, tags)
        assert not decide_tagged(p)
        for e in range(3):
            assert decide_tagged(delete_element(p, e))


def test_mine_size2_count_and_keys():
    keys = mine_minimal_forbidden(2)
    assert keys == sorted(set(keys), key=lambda k: (len(k[0][0]), k))
    assert all(class_key_tuple(w, t) == (w, t) for w, t in keys)
    assert len(keys) == 78


def test_save_load_round_trip(tmp_path, mined):
    table, _ = mined[2]
    path = tmp_path / "t2.npz"
    save_table(table, 2, path)
    back = load_table(2, path)
    assert back.keys() == table.keys()
    assert all(np.array_equal(back[k], table[k]) for k in table)


def test_filter_is_inactive_below_its_size(filter4):
    flags = filter4(((0, 1, 2), (2, 1, 0), (1, 2, 0)))
    assert flags.shape == (10 ** 3,) and not flags.any()


def test_filter_flags_known_forbidden(filter4):
    words = ((0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (4, 3, 2, 1, 0))
    flags = filter4(words)
    assert flags.any() and not flags.all()
    assert isinstance(filter4, SubpatternFilter)
