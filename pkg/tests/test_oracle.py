import random

import pytest

from geoperm.core import Triple, enumerate_taggings, parse_pattern
from geoperm.decider import decide_tagged
from geoperm.geometry import verify_certificate
from geoperm.oracle import oracle_decide_tagged
from helpers import random_tagged


def test_size1_all_realizable():
    for p in enumerate_taggings(Triple.from_words("0", "0", "0")):
        v = oracle_decide_tagged(p)
        assert v.realizable and verify_certificate(p, v.certificate)


def test_forbidden_size2_instance():
    assert not oracle_decide_tagged(parse_pattern("0 1 z o | z o 0 1 | z o 0 1"))


def test_matches_decider_on_fixed_instance():
    p = parse_pattern("z 0 o 1 | z 0 o 1 | z 0 o 1")
    assert oracle_decide_tagged(p).realizable == decide_tagged(p).realizable


def test_random_agreement():
    rng = random.Random(41)
    for _ in range(40):
        p = random_tagged(rng, rng.randint(2, 3))
        assert oracle_decide_tagged(p).realizable == decide_tagged(p, engine="compiled").realizable


def test_size_limit():
    with pytest.raises(ValueError):
        oracle_decide_tagged(parse_pattern("z o 0 1 2 3 | z o 0 1 2 3 | z o 0 1 2 3"))
