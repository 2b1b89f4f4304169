import random
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from lauricella.jordan import BlockConfig, is_regular

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5))
nonzero_weights = small_rationals.filter(bool)


@st.composite
def configs(draw, max_n=5, max_block=None):
    n = draw(st.integers(1, max_n))
    sizes, left = [], n
    while left:
        m = draw(st.integers(1, left if max_block is None else min(left, max_block)))
        sizes.append(m)
        left -= m
    weights = [draw(nonzero_weights) for _ in sizes]
    return BlockConfig(tuple(sizes), weights)


@st.composite
def regular_points(draw, config, dual=False):
    pt = draw(st.lists(small_rationals, min_size=config.n, max_size=config.n))
    from hypothesis import assume
    assume(is_regular(config, pt, dual=dual))
    return pt


@st.composite
def config_and_point(draw, max_n=5, dual=False):
    cfg = draw(configs(max_n))
    # a seeded sampler keeps rejection cheap for larger configurations
    rng = random.Random(draw(st.integers(0, 10**6)))
    while True:
        pt = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(cfg.n)]
        if is_regular(cfg, pt, dual=dual):
            return cfg, pt


def sample_point(config, rng, dual=False):
    while True:
        pt = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(config.n)]
        if is_regular(config, pt, dual=dual):
            return pt
