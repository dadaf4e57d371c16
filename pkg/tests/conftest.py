from typing import Generator

import pytest
from helpers import BERNOULLI, GAP_THREE_ATOMS, GAP_TWO_ATOMS

from localmoments import LocalProblem, MomentSequence, MomentSolver


@pytest.fixture(scope="session")
def test_solver() -> Generator[MomentSolver, None, None]:
    yield MomentSolver()


@pytest.fixture(scope="session")
def test_bernoulli() -> Generator[MomentSequence, None, None]:
    # moments of (δ_0 + δ_1) / 2
    yield MomentSequence(BERNOULLI)


@pytest.fixture(scope="session")
def test_gap_sequence() -> Generator[MomentSequence, None, None]:
    # moments of (δ_{-1} + δ_2) / 2
    yield MomentSequence(GAP_TWO_ATOMS)


@pytest.fixture(scope="session")
def test_gap_sequence_n2() -> Generator[MomentSequence, None, None]:
    # moments of δ_{-1} / 2 + (δ_2 + δ_3) / 4
    yield MomentSequence(GAP_THREE_ATOMS)


@pytest.fixture(scope="session")
def test_local_problem() -> Generator[LocalProblem, None, None]:
    yield LocalProblem(MomentSequence([2.0, 1.0, 3.0]), MomentSequence(BERNOULLI), lam=1.0)
