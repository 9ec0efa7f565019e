import os

import numpy as np
import pytest

import gramlab as gl
from gramlab.zeros import ZeroCensus

THREADS = int(os.environ.get("GRAMLAB_TEST_THREADS", "4"))


def synthetic_census(zeros, t_lo, t_hi, audit=True, flags=None):
    """A hand-built census for classification/moment unit tests."""
    z = np.asarray(zeros, dtype=np.float64)
    return ZeroCensus(
        t_lo=t_lo,
        t_hi=t_hi,
        zeros=z,
        bracket_lo=z - 1e-10,
        bracket_hi=z + 1e-10,
        flags=np.zeros(len(z), dtype=np.uint8) if flags is None
        else np.asarray(flags, dtype=np.uint8),
        expected_count=len(z),
        audit_passed=audit,
        flagged_intervals=(),
        anchor_n=-1,
        anchor_t=float("nan"),
        s_boundary_lo=float("nan"),
        s_boundary_hi=float("nan"),
    )


@pytest.fixture(scope="session")
def census_low():
    """Zeros on (10, 300]; covers the first Gram's Law failures."""
    return gl.scan_zeros(10.0, 300.0, threads=THREADS)


@pytest.fixture(scope="session")
def grange_low():
    return gl.gram_range(17.0, 300.0)


@pytest.fixture(scope="session")
def census_1e4():
    return gl.scan_zeros(1e4, 2e4 + 2.0, threads=THREADS)


@pytest.fixture(scope="session")
def census_1e5():
    """The heavy fixture: every zero in (1e5, 2e5 + 3]."""
    return gl.scan_zeros(1e5, 2e5 + 3.0, threads=THREADS)


@pytest.fixture(scope="session")
def grange_1e5():
    return gl.gram_range(1e5, 2e5)


@pytest.fixture(scope="session")
def census_1e6():
    """Short strip above 1e6 for the high-T moment checks."""
    return gl.scan_zeros(1e6, 1e6 + 4001.0, threads=THREADS)
