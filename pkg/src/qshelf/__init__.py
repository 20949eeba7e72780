"""Exact q-series verification of a family of shelf-indexed partition identities.

Everything is integer arithmetic on truncated Laurent series: no floats,
no symbolic algebra.  The subpackages split as

* :mod:`qshelf.series` -- dense truncated Laurent series and polynomials;
* :mod:`qshelf.shelves` -- the series family, its closed forms, and the
  recursion that climbs from one shelf to the next;
* :mod:`qshelf.matrices` -- elimination/descent matrices and the combiner
  matrices built from them;
* :mod:`qshelf.partitions` -- brute-force counting oracles (partitions
  and overpartitions) for every series with a combinatorial meaning;
* :mod:`qshelf.axq` -- the trivariate engine behind the dictionary that
  defines the one series the recursions cannot reach;
* :mod:`qshelf.suites` / :mod:`qshelf.cli` -- named check suites and the
  ``verify`` command.
"""

from .report import FAIL, PASS, SKIPPED, CheckRecord, VerificationReport
from .series import (
    LaurentPoly,
    MismatchError,
    NotDivisibleError,
    PrecisionExhaustedError,
    SeriesError,
    TruncatedLaurentSeries,
    assert_agree,
    f_inverse,
    jacobi_triple_product_check,
    pochhammer,
)
from .shelves import (
    EmpiricalResult,
    ShelfPair,
    closed_ghost,
    closed_official,
    empirical_hypothesis_check,
    ghost0_closed,
    ghost_position1,
    next_shelf,
    product_side,
    required_truncation,
    shelf0,
    shelf0_sum_form,
)
from .suites import ConfigError, SuiteConfig, run_suite

__all__ = [
    "FAIL",
    "PASS",
    "SKIPPED",
    "CheckRecord",
    "VerificationReport",
    "LaurentPoly",
    "MismatchError",
    "NotDivisibleError",
    "PrecisionExhaustedError",
    "SeriesError",
    "TruncatedLaurentSeries",
    "assert_agree",
    "f_inverse",
    "jacobi_triple_product_check",
    "pochhammer",
    "EmpiricalResult",
    "ShelfPair",
    "closed_ghost",
    "closed_official",
    "empirical_hypothesis_check",
    "ghost0_closed",
    "ghost_position1",
    "next_shelf",
    "product_side",
    "required_truncation",
    "shelf0",
    "shelf0_sum_form",
    "ConfigError",
    "SuiteConfig",
    "run_suite",
]

__version__ = "0.1.0"
