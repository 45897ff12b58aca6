"""Shared case fixtures; heavy pipelines are computed once per session."""

from fractions import Fraction

import pytest

from walg.liealg import (highest_root_triple, make_lie_algebra, make_sln,
                         partition_triple)
from walg.context import build_context
from walg.linalg import unit_vec
from walg.whittaker import h_basis


def sl2_algebra():
    F = Fraction
    return make_lie_algebra(
        ["e", "h", "f"],
        {(0, 1): {0: F(-2)}, (0, 2): {1: F(1)}, (1, 2): {2: F(-2)}})


@pytest.fixture(scope="session")
def sl2():
    return sl2_algebra()


@pytest.fixture(scope="session")
def sl2_ctx(sl2):
    return build_context(sl2, (1, 0, 0), "zero", h=(0, 1, 0), f=(0, 0, 1))


@pytest.fixture(scope="session")
def sl2_hb(sl2_ctx):
    return h_basis(16, sl2_ctx)


@pytest.fixture(scope="session")
def sl3():
    return make_sln(3)


@pytest.fixture(scope="session")
def sl3_min_zero(sl3):
    e, h, f = highest_root_triple(3)
    return build_context(sl3, e, "zero", h=h, f=f)


@pytest.fixture(scope="session")
def sl3_min_lag(sl3):
    e, h, f = highest_root_triple(3)
    return build_context(sl3, e, "lagrangian-auto", h=h, f=f)


@pytest.fixture(scope="session")
def sl3_min_lag2(sl3):
    e, h, f = highest_root_triple(3)
    i32 = sl3.labels.index("E32")
    return build_context(sl3, e, [unit_vec(8, i32)], h=h, f=f)


@pytest.fixture(scope="session")
def sl3_hb_zero(sl3_min_zero):
    return h_basis(6, sl3_min_zero)


@pytest.fixture(scope="session")
def sl3_hb_lag(sl3_min_lag):
    return h_basis(6, sl3_min_lag)


@pytest.fixture(scope="session")
def sl3_hb_lag2(sl3_min_lag2):
    return h_basis(6, sl3_min_lag2)


@pytest.fixture(scope="session")
def sl3_principal(sl3):
    e, h, f = partition_triple(3, [3])
    return build_context(sl3, e, "zero", h=h, f=f)


@pytest.fixture(scope="session")
def sl3_hb_principal(sl3_principal):
    return h_basis(10, sl3_principal)


@pytest.fixture(scope="session")
def sl4():
    return make_sln(4)


@pytest.fixture(scope="session")
def sl4_211(sl4):
    e, h, f = partition_triple(4, [2, 1, 1])
    return build_context(sl4, e, "zero", h=h, f=f)
