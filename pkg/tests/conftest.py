from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from hopfgalois.galois import GaloisData, homogeneous
from hopfgalois.linalg import LinMap
from hopfgalois.structures import (
    cyclic_group,
    function_algebra,
    group_algebra,
    symmetric_group_3,
)

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def one(i):
    return {i: Fraction(1)}


@lru_cache(maxsize=None)
def kz2():
    return group_algebra(cyclic_group(2))


@lru_cache(maxsize=None)
def kz4():
    return group_algebra(cyclic_group(4))


@lru_cache(maxsize=None)
def kz2_over_k():
    H = kz2()
    return GaloisData(H.algebra, H.coalgebra, H.comult, H.unit, "kZ2/k")


@lru_cache(maxsize=None)
def kz4_homogeneous():
    return homogeneous(kz4(), [one(0), one(2)], "kZ4/kZ2")


@lru_cache(maxsize=None)
def kz4_over_kz2():
    return kz4_homogeneous().galois


@lru_cache(maxsize=None)
def s3_functions():
    H = function_algebra(symmetric_group_3())
    return GaloisData(H.algebra, H.coalgebra, H.comult, H.unit, "k^S3")


@lru_cache(maxsize=None)
def trivial_coaction():
    """kZ2 with p ↦ p⊗1: invariants are all of P and can is rank deficient."""
    H = kz2()
    return GaloisData(H.algebra, H.coalgebra, LinMap(2, 4, [one(0), one(2)]), one(0), "trivial")


@lru_cache(maxsize=None)
def load_fixture(name):
    from hopfgalois.cli import load

    return load(FIXTURES / f"{name}.struct")


def fixture_extension(name, obj="P"):
    return dict(load_fixture(name).extensions())[obj]


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
