"""Transfer operators and stability experiments for skew products over expanding circle maps."""

import json

from . import _core
from ._core import (
    NumericError,
    ValidationError,
    dyadic_local_exponent,
    run_cli,
    stability_bound,
    w1_norm,
)

__version__ = _core.__version__


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def norm_report(measure, p=1.0, A=0.5):
    return _core.norm_report(_text(measure), p, A)


def transfer_step(system, measure):
    return json.loads(_core.transfer_step(_text(system), _text(measure)))


def invariant_measure(system, n_cells=256, tol=1e-6, n_max=1000):
    out = _core.invariant_measure(_text(system), n_cells, tol, n_max)
    out["measure"] = json.loads(out["measure"])
    return out


def decay(system, n_cells=256, n_max=100):
    return _core.decay(_text(system), n_cells, n_max)


def type_estimate(theta, depth=10**6):
    return _core.type_estimate(theta, str(depth))


__all__ = [
    "NumericError",
    "ValidationError",
    "decay",
    "dyadic_local_exponent",
    "invariant_measure",
    "norm_report",
    "run_cli",
    "stability_bound",
    "transfer_step",
    "type_estimate",
    "w1_norm",
]
