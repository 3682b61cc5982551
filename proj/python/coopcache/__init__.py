"""Coded caching with user cooperation.

Rational inputs (cache sizes) accept ints, strings such as "7/2" or
fractions.Fraction; rational outputs are fractions.Fraction.
"""

from fractions import Fraction

from . import _core
from ._core import DecodeError, FormatError, SchedulerError, ValidationError, check_schedule, optimal_alpha

__all__ = [
    "DecodeError",
    "FormatError",
    "SchedulerError",
    "ValidationError",
    "allocate_loads",
    "check_schedule",
    "lower_bound",
    "optimal_alpha",
    "rate_rc",
    "rates",
    "report",
    "simulate",
    "sweep_csv",
    "verify_gap",
]


def _q(value):
    return str(Fraction(value))


def _frac(pair):
    return None if pair is None else Fraction(*pair)


def rate_rc(files, users, cache, alpha_max):
    return _frac(_core.rate_rc(files, users, _q(cache), alpha_max))


def lower_bound(files, users, cache, alpha_max):
    return _frac(_core.lower_bound(files, users, _q(cache), alpha_max))


def allocate_loads(files, users, cache, alpha_max, alpha):
    return _core.allocate_loads(files, users, _q(cache), alpha_max, alpha)


def rates(files, users, cache, alpha_max, alpha, loads):
    """(R1, R2) for an explicit layer split (L1, L2)."""
    server, users_rate = _core.rates(files, users, _q(cache), alpha_max, alpha, tuple(loads))
    return _frac(server), _frac(users_rate)


def report(files, users, cache, alpha_max):
    raw = _core.report(files, users, _q(cache), alpha_max)
    return {k: _frac(v) if isinstance(v, tuple) and k != "loads" else v for k, v in raw.items()}


def simulate(files, users, cache, alpha_max, seed=1, file_bits=8192, alpha=None, loads=None):
    return _core.simulate(files, users, _q(cache), alpha_max, seed, file_bits, alpha,
                          None if loads is None else tuple(loads))


def sweep_csv(files, users, alpha_max, samples_between=0):
    return _core.sweep_csv(files, users, alpha_max, samples_between)


def verify_gap(files_min=4, files_max=40, users_min=2, users_max=12):
    out = _core.verify_gap(files_min, files_max, users_min, users_max)
    out["max_ratio"] = _frac(out["max_ratio"])
    return out
