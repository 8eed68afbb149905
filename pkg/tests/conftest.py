import random

import pytest

from spancalc.corpus import group, regular_rep, rep_system, standard_rep
from spancalc.groupoid import delooping, discrete, disjoint_union, terminal
from spancalc.local_systems import LocalSystem, trivial_system
from spancalc.matrix import RatMatrix

Z2 = ((0, 1), (1, 0))
Z3 = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def pt():
    return terminal()


@pytest.fixture
def bz2():
    return delooping(Z2, label="BZ2")


@pytest.fixture
def bz3():
    return delooping(Z3, label="BZ3")


@pytest.fixture
def bs3():
    return delooping(group("S3").table, label="BS3")


@pytest.fixture
def bz2_plus_pt(bz2):
    return disjoint_union(bz2, terminal())


@pytest.fixture
def sign(bz2):
    return LocalSystem(bz2, [1], [RatMatrix.identity(1), RatMatrix.scalar(-1)])


@pytest.fixture
def regular(bz2):
    return rep_system(bz2, regular_rep(group("Z2")))


@pytest.fixture
def standard(bs3):
    return rep_system(bs3, standard_rep(group("S3")))


def trivial(X, rank=1):
    return trivial_system(X, rank)


def disc(n):
    return discrete(n)
