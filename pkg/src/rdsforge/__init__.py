"""Relative difference sets from 2-to-1 APN functions over GF(2^n)."""

from .field import FieldSpec, make_field
from .functions import Family, FamilyParams, ValueTable, build
from .rds import RdsParams, RdsReport, check_rds, detect_forbidden

__version__ = "0.1.0"

__all__ = [
    "Family",
    "FamilyParams",
    "FieldSpec",
    "RdsParams",
    "RdsReport",
    "ValueTable",
    "build",
    "check_rds",
    "detect_forbidden",
    "make_field",
]
