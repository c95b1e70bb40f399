"""Exact computations in Matsuo algebras of Fischer spaces."""

from .scalars import (
    ALPHA,
    QQ,
    QQa,
    DivisionByZero,
    MixedFieldVariant,
    PoleAtValue,
    RationalFunction,
    format_scalar,
    parse_scalar,
    specialize,
)
from .polynomial import Polynomial

__version__ = "0.1.0"
