"""Symmetric finite index sums of Bessel and hypergeometric functions."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DomainError,
    PoleError,
    UsageError,
    bessel_j,
    bessel_k,
    bessel_k_log,
    bessel_y,
    binomial,
    factorial,
    gauss_2f1,
    hyp_3f2,
    identities,
    lngamma,
    tricomi_u,
    verify_eq19,
    verify_eq22,
    verify_lemma1,
    whittaker_w,
)


def f_eval(n, p, q):
    return Fraction(*_core.f_eval(n, p, q))


def verify_eq18(m, n, a):
    return _core.verify_eq18(m, n, str(a))


def evaluate(identity, tol=None, **params):
    """Residual for one instance, e.g. evaluate("theorem1", m=2, n=5, z=1.0).

    Use lam= for the lambda parameter. `a` may be a string like "7/3".
    """
    if "lambda" in params:
        params["lam"] = params.pop("lambda")
    if "a" in params and params["a"] is not None:
        params["a"] = str(params["a"])
    return _core.evaluate(identity, tol=tol, **params)


def run_sweep(format="json", **settings):
    """Runs a parameter sweep. Keyword names follow the CLI flags."""
    flat = {k: _flag(v) for k, v in settings.items() if v is not None}
    text = _core.run_sweep(flat, format)
    return json.loads(text) if format == "json" else text


def _flag(value):
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    if isinstance(value, range):
        return f"{value.start}..{value.stop - 1}..{value.step}"
    return str(value)


__all__ = [name for name in dir() if not name.startswith("_")]
