"""Riesz bases, Gram matrices and duals in finite-dimensional Krein spaces."""

import json

from ._core import (
    Family,
    KreinError,
    Space,
    absolute_sum_bound,
    analyze_json,
    biorthogonality_residual,
    certify,
    certify_json,
    construct_riesz,
    dual_sequence,
    factor_riesz,
    frame_inequality_bounds,
    generate,
    gram,
    optimal_frame_bounds,
    reconstruct,
    riesz_via_gram,
    riesz_via_inequalities,
    verify_json,
)

__version__ = "0.1.0"


def analyze(instance):
    """Analyze an instance given as JSON text or a dict; returns the report dict."""
    if not isinstance(instance, str):
        instance = json.dumps(instance)
    return json.loads(analyze_json(instance))


def certify_instance(instance, seed=0, samples=100):
    if not isinstance(instance, str):
        instance = json.dumps(instance)
    return json.loads(certify_json(instance, seed, samples))


def verify(trials=200, seed=0, dim_min=1, dim_max=12, threads=1):
    return json.loads(verify_json(trials, seed, dim_min, dim_max, threads))


__all__ = [
    "Family",
    "KreinError",
    "Space",
    "absolute_sum_bound",
    "analyze",
    "analyze_json",
    "biorthogonality_residual",
    "certify",
    "certify_instance",
    "certify_json",
    "construct_riesz",
    "dual_sequence",
    "factor_riesz",
    "frame_inequality_bounds",
    "generate",
    "gram",
    "optimal_frame_bounds",
    "reconstruct",
    "riesz_via_gram",
    "riesz_via_inequalities",
    "verify",
    "verify_json",
]
