import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import derived_oracles as ref  # noqa: E402

from pencilbvp.bvp import BvpProblem  # noqa: E402
from pencilbvp.matrix import Matrix  # noqa: E402
from pencilbvp.pencil import MatrixPencil  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")


def mat(rows):
    return Matrix.from_rows(rows)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def ex1_pencil():
    return MatrixPencil(mat(ref.EX1_F), mat(ref.EX1_G))


@pytest.fixture
def ex2_pencil():
    return MatrixPencil(mat(ref.EX2_F), mat(ref.EX2_G))


@pytest.fixture
def ex2_problem(ex2_pencil):
    return BvpProblem(ex2_pencil, mat(ref.EX2_A), mat(ref.EX_B), ref.EX2_D, 0, 100)


@pytest.fixture
def ex3_problem(ex2_pencil):
    return BvpProblem(ex2_pencil, mat(ref.EX3_A), mat(ref.EX_B), ref.EX3_D, 0, 100)
