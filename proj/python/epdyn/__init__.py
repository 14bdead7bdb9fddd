"""Exceptional-point dynamics of an impurity coupled to a semi-infinite tight-binding chain."""

from ._core import (
    EpdynError,
    NumericalError,
    ValidationError,
    approximation,
    encircle_once,
    ep2b_location,
    ep_location,
    finite_chain,
    resolvent_identity,
    revolution_cycle,
    spectrum_one,
    spectrum_two,
    survival,
    timescales,
    trace_lambda_loop,
)

__version__ = "0.1.0"
