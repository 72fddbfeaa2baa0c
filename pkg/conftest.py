"""
Shared fixtures and hypothesis strategies.
"""

from pathlib import Path
from typing import Dict, List

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from permprofile.matrix_io import read_matrix
from permprofile.perm_core import Permutation
from permprofile.sign_matrix import SignMatrix

settings.register_profile(
    "permprofile", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("permprofile")

ROOT = Path(__file__).parent
MATRIX_DIR = ROOT / "matrices"


def load(name: str) -> SignMatrix:
    return read_matrix(MATRIX_DIR / f"{name}.mat")


W = SignMatrix.from_rows([[1, -1], [-1, 1]])
FIG1 = SignMatrix.from_rows([[1, 1, 0, 0], [1, 0, 1, 1]])
FLOWER = SignMatrix.from_rows(
    [
        [-1, 1, -1, 1, -1, 1],
        [1, -1, 0, 0, 0, 0],
        [0, 0, 1, -1, 0, 0],
        [0, 0, 0, 0, 1, -1],
    ]
)
SHARED_EDGE = SignMatrix.from_rows([[0, 1, 1], [1, 1, 1], [1, 1, 0]])
ONE_MINUS = SignMatrix.from_rows([[1, 1], [1, -1]])
SIX_CYCLE = SignMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])

# small matrices for exhaustive profile-class checks
POOL: Dict[str, SignMatrix] = {
    "w": W,
    "fig1": FIG1,
    "one-minus": ONE_MINUS,
    "six-cycle": SIX_CYCLE,
    "shared-edge": SHARED_EDGE,
    "column-ppm": SignMatrix.column([1, 1, -1]),
    "column-pmp": SignMatrix.column([1, -1, 1]),
    "row-mp": SignMatrix.from_rows([[-1, 1]]),
}


def perm(text: str) -> Permutation:
    return Permutation.parse(text)


def perms_up_to(n: int) -> List[Permutation]:
    """Every nonempty permutation of length at most n."""
    import itertools

    return [
        Permutation(values)
        for k in range(1, n + 1)
        for values in itertools.permutations(range(1, k + 1))
    ]


@st.composite
def permutations(draw, min_size: int = 0, max_size: int = 7) -> Permutation:
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def sign_matrices(draw, max_rows: int = 3, max_cols: int = 3) -> SignMatrix:
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entries = draw(
        st.lists(
            st.lists(st.sampled_from([-1, 0, 1]), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return SignMatrix.from_rows(entries)


sign_vectors = st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=8)


@pytest.fixture
def w_matrix() -> SignMatrix:
    return W


@pytest.fixture
def flower_matrix() -> SignMatrix:
    return FLOWER


@pytest.fixture
def shared_edge_matrix() -> SignMatrix:
    return SHARED_EDGE
