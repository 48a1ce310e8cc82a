"""Tatra association schemes and the directed strongly regular and divisible design graphs they fuse to."""

from .designs import DifferenceSet, paley_ds, singer_ds, verify_ds
from .field import FiniteField, make_field
from .graphs import build_ddg, build_dsrg, distance_regular_check, verify_ddg, verify_dsrg
from .manifest import VERSION as __version__
from .scheme import Scheme, verify_scheme
from .tatra import Omega, tatra_omega, tatra_scheme

__all__ = [
    "DifferenceSet",
    "FiniteField",
    "Omega",
    "Scheme",
    "__version__",
    "build_ddg",
    "build_dsrg",
    "distance_regular_check",
    "make_field",
    "paley_ds",
    "singer_ds",
    "tatra_omega",
    "tatra_scheme",
    "verify_ddg",
    "verify_ds",
    "verify_dsrg",
    "verify_scheme",
]
