import os
from typing import Iterator, List

from dotenv import load_dotenv

from localmoments.extensions import DiscreteMeasure
from localmoments.moments import MomentSequence
from localmoments.oracle import MeasureSpec, SupportMode, moments_of, random_measure

load_dotenv(".env", override=True)


TEST_SEEDS = int(os.getenv("LOCALMOMENTS_TEST_SEEDS") or "100")
TEST_SEED_OFFSET = int(os.getenv("LOCALMOMENTS_TEST_SEED_OFFSET") or "0")
TEST_ROUNDTRIP_SEEDS = int(os.getenv("LOCALMOMENTS_TEST_ROUNDTRIP_SEEDS") or "200")

# Tests comparing atoms or determinant formulas draw well separated atoms; round trips use the generator defaults.
TEST_MIN_SEPARATION = 0.1
TEST_MIN_MASS = 0.05

# Sequences used across the test modules.
BERNOULLI = [1.0, 0.5, 0.5]
GAP_TWO_ATOMS = [1.0, 0.5, 2.5]
GAP_THREE_ATOMS = [1.0, 0.75, 3.75, 8.25, 24.75]
POINT_MASS_HALF = [1.0, 0.5, 0.25, 0.125, 0.0625]


def seeds(count: int = TEST_SEEDS) -> Iterator[int]:
    return iter(range(TEST_SEED_OFFSET, TEST_SEED_OFFSET + count))


def sample(mode: SupportMode, atom_count: int, seed: int, lam: float = 1.0) -> DiscreteMeasure:
    """Random measure with the test separation and mass bounds."""
    spec = MeasureSpec(
        support_mode=mode,
        atom_count=atom_count,
        seed=seed,
        lam=lam,
        min_separation=TEST_MIN_SEPARATION,
        min_mass=TEST_MIN_MASS,
    )
    return random_measure(spec)


def sample_moments(mode: SupportMode, atom_count: int, seed: int, lam: float = 1.0) -> MomentSequence:
    """Moments ``s_0, ..., s_{2(atom_count - 1)}`` of `sample`, a sequence with a positive definite Hankel matrix."""
    return moments_of(sample(mode, atom_count, seed, lam), 2 * (atom_count - 1), lam=lam)


def relative_errors(computed: List[float], expected: List[float]) -> List[float]:
    return [abs(a - b) / max(1.0, abs(b)) for a, b in zip(computed, expected)]


def roundtrip_moments(mode: SupportMode, m: int, seed: int, lam: float = 1.0) -> MomentSequence:
    """Moments ``s_0, ..., s_{2m}`` of ``m + 1`` atoms drawn with the generator defaults."""
    measure = random_measure(MeasureSpec(support_mode=mode, atom_count=m + 1, seed=seed, lam=lam))
    return moments_of(measure, 2 * m, lam=lam)
