import pytest

from qchan import random_bistochastic, random_cptp, rng_substream

CPTP_SEED = 101
BISTOCHASTIC_SEED = 202


@pytest.fixture(scope="session")
def cptp_ensemble():
    """10^4 random CP-TP qubit channels with environment dims 2 and 4."""
    return [
        random_cptp(2, 2 if i % 2 == 0 else 4, rng_substream(CPTP_SEED, i))
        for i in range(10_000)
    ]


@pytest.fixture(scope="session")
def bistochastic_ensemble():
    """10^4 random unitary mixtures (1 to 4 terms)."""
    return [
        random_bistochastic(2, i % 4 + 1, rng_substream(BISTOCHASTIC_SEED, i))
        for i in range(10_000)
    ]
