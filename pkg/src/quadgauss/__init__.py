"""Gauss sums whose powers land in a quadratic field: classification and checks."""

from .classifier import ClassificationRecord, OracleMismatch, classify, classify_odd_f
from .stickelberger import is_pure, quadratic_partition

__all__ = [
    "ClassificationRecord",
    "OracleMismatch",
    "classify",
    "classify_odd_f",
    "is_pure",
    "quadratic_partition",
]
