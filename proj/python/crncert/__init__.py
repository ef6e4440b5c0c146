"""Certification toolkit for mass-action reaction networks."""

import json

try:
    from crncert._crncert import (
        analyze,
        certify_json,
        roundtrip,
        simulate,
        siphons,
        strata,
    )
except ImportError:  # build-tree layout
    from _crncert import (
        analyze,
        certify_json,
        roundtrip,
        simulate,
        siphons,
        strata,
    )


def certify(text, exhaustive_decomposition=False, max_species=20, max_complexes=10):
    """Stability certificate as a dict (see certify_json for the raw form)."""
    return json.loads(
        certify_json(text, exhaustive_decomposition, max_species, max_complexes)
    )


__all__ = [
    "analyze",
    "certify",
    "certify_json",
    "roundtrip",
    "simulate",
    "siphons",
    "strata",
]
