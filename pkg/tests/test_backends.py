"""Parity between the pure-Python kernels and the compiled extension."""

import random
from fractions import Fraction as F

import pytest

from walg import _kernels as pyk
from walg import backend

try:
    from walg import _speedups as cyk
except ImportError:
    cyk = None

needs_ext = pytest.mark.skipif(cyk is None, reason="extension not built")


def sl3_bracket():
    from walg.liealg import make_sln, highest_root_triple, Sl2Triple
    from walg.liealg import ad_h_grading, chi, symplectic_data, make_nilpotent_pair
    from walg.pbw import PBWBasis
    L = make_sln(3)
    e, h, f = highest_root_triple(3)
    t = Sl2Triple(L, e, h, f)
    g = ad_h_grading(L, t)
    ch = chi(L, t)
    symp = symplectic_data(L, t, g, [], ch)
    pair = make_nilpotent_pair(L, g, symp, ch)
    return PBWBasis.adapted(L, g, pair, ch).bracket


def random_terms(rng, nvars=8, n_terms=3, max_len=3):
    out = {}
    for _ in range(n_terms):
        exps = {}
        for _ in range(rng.randint(0, max_len)):
            i = rng.randrange(nvars)
            exps[i] = exps.get(i, 0) + 1
        mono = tuple(sorted(exps.items()))
        c = F(rng.randint(-4, 4), rng.randint(1, 3))
        if c:
            out[mono] = out.get(mono, F(0)) + c
    return {m: c for m, c in out.items() if c}


@needs_ext
def test_straightening_parity():
    bracket = sl3_bracket()
    rng = random.Random(31)
    for _ in range(40):
        t1, t2 = random_terms(rng), random_terms(rng)
        assert pyk.mul_terms(t1, t2, bracket, {}) == \
            cyk.mul_terms(t1, t2, bracket, {})
        assert pyk.mul_terms_rl(t1, t2, bracket, {}) == \
            cyk.mul_terms_rl(t1, t2, bracket, {})


@needs_ext
def test_gen_level_parity():
    bracket = sl3_bracket()
    rng = random.Random(32)
    for _ in range(60):
        mono = tuple(sorted({rng.randrange(8): rng.randint(1, 2)
                             for _ in range(rng.randint(0, 3))}.items()))
        g = rng.randrange(8)
        assert pyk.gen_times_mono(g, mono, bracket, None) == \
            cyk.gen_times_mono(g, mono, bracket, None)
        assert pyk.mono_times_gen(mono, g, bracket, None) == \
            cyk.mono_times_gen(mono, g, bracket, None)


def test_cache_does_not_change_results():
    bracket = sl3_bracket()
    rng = random.Random(33)
    for impl in filter(None, [pyk, cyk]):
        for _ in range(20):
            t1, t2 = random_terms(rng), random_terms(rng)
            with_cache = impl.mul_terms(t1, t2, bracket, {})
            without = impl.mul_terms(t1, t2, bracket, None)
            assert with_cache == without


@needs_ext
def test_rref_parity():
    rng = random.Random(34)
    for _ in range(30):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[F(rng.randint(-5, 5), rng.randint(1, 4))
                 if rng.random() < 0.6 else F(0) for _ in range(ncols)]
                for _ in range(nrows)]
        sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
        got = [pyk.rref_sparse([dict(r) for r in sparse], ncols),
               cyk.rref_sparse([dict(r) for r in sparse], ncols),
               pyk.rref_dense([list(r) for r in rows], ncols),
               cyk.rref_dense([list(r) for r in rows], ncols)]
        assert got.count(got[0]) == len(got)


def test_backend_name_consistent():
    assert backend.backend_name() in ("python", "compiled")
    assert backend.COMPILED == (backend.backend_name() == "compiled")
