import random

import pytest

from bplocal import CCM, INF, ModuleSum, RingDescriptor


def random_ccm(rng, N, susp=(0, 0, 2, -4, 6)):
    exps, inv = {}, set()
    for i in range(N + 1):
        x = rng.random()
        if x < 0.3:
            exps[i] = rng.choice([1, 2, 3, INF])
        elif x < 0.45:
            exps[i] = INF
        elif x < 0.55:
            inv.add(i)
    return CCM.make(rng.choice(susp), exps, inv)


def random_sum(rng, ring, max_terms=3):
    return ModuleSum.of(ring, [random_ccm(rng, ring.truncation)
                               for _ in range(rng.randint(1, max_terms))])


def random_corpus(count=1000, seed=20240611, N=6):
    """(module, n) pairs over p in {2, 3} with n <= N."""
    rng = random.Random(seed)
    rings = {p: RingDescriptor(p, N) for p in (2, 3)}
    out = []
    for _ in range(count):
        ring = rings[rng.choice((2, 3))]
        out.append((random_sum(rng, ring), rng.randint(0, N)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture
def R2():
    return RingDescriptor(2, 3)
