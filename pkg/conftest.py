# Ensures the repository root is importable by tests (so `import app`,
# `engine_config.config` and `whitefact.*` resolve), and provides the factor
# systems most tests run against.
import pytest

from whitefact.factor_groups import CyclicGroup, FactorSystem, TableGroup, cyclic_system, derive_inverses

# images of (1, 2, 3): e, (12), (13), (23), (123), (132)
S3_PERMUTATIONS = [(1, 2, 3), (2, 1, 3), (3, 2, 1), (1, 3, 2), (2, 3, 1), (3, 1, 2)]
S3_LABELS = ('e', '(12)', '(13)', '(23)', '(123)', '(132)')


def s3_table():
    # product p.q applies q first
    index = {p: k for k, p in enumerate(S3_PERMUTATIONS)}
    return tuple(tuple(index[tuple(p[q[x] - 1] for x in range(3))] for q in S3_PERMUTATIONS)
                 for p in S3_PERMUTATIONS)


def s3_group(index: int = 1) -> TableGroup:
    table = s3_table()
    return TableGroup(index, S3_LABELS, table, 0, derive_inverses(table, 0))


@pytest.fixture
def k3():
    return cyclic_system(2, 2, 2)


@pytest.fixture
def z3z4z2():
    return cyclic_system(3, 4, 2)


@pytest.fixture
def s3_system():
    return FactorSystem((s3_group(1), CyclicGroup(2, 2), CyclicGroup(3, 3)))
