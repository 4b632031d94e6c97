"""Python access to the exact toric functionals.

All values cross the boundary as JSON; rationals come back as Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, InvariantViolation

__all__ = [
    "InputError",
    "InvariantViolation",
    "classify",
    "components",
    "dh",
    "dh_csv",
    "in_integral_closure",
    "rees",
    "report",
    "scan",
    "verify",
    "weights",
]


def _rat(value):
    if isinstance(value, str) and value.lstrip("-").replace("/", "", 1).isdigit():
        return Fraction(value)
    return value


def _decode(obj):
    if isinstance(obj, dict):
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return _rat(obj)


def _source(metric):
    return metric if isinstance(metric, str) else json.dumps(metric)


def report(metric, pair="trivial"):
    """Functional report; `metric` is a catalog name or a metric dict."""
    doc = json.loads(_core.report(_source(metric), _source(pair)))
    return _decode(doc["report"])


def dh(metric):
    return _decode(json.loads(_core.dh(_source(metric))))


def dh_csv(metric):
    return _core.dh_csv(_source(metric))


def components(metric, pair="trivial"):
    return _decode(json.loads(_core.components(_source(metric), _source(pair))))


def weights(metric, m):
    """Sorted (weight, multiplicity) pairs of the filtration on H^0(mL)."""
    return [tuple(e) for e in json.loads(_core.weights(_source(metric), m))]


def rees(ideal, nvars=0):
    return _core.rees(ideal, nvars)


def in_integral_closure(u, ideal, m=1):
    return _core.in_integral_closure(list(u), ideal, m)


def classify(polytope, pair):
    return _decode(json.loads(_core.classify(polytope, _source(pair))))


def scan(polytope, pair="trivial", delta="0", samples=100, seed=42):
    """Coercivity scan over random metrics on a catalog polytope."""
    return _decode(json.loads(_core.scan(polytope, _source(pair), str(delta), samples, seed)))


def verify(suite="all", seed=42, cases=None):
    return _core.verify(suite, seed, cases)
