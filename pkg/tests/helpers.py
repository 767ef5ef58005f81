"""Shared construction cache so expensive Groebner bases are computed once
per test session."""

from nilmoduli import CoefficientField, construct_space, groebner_basis

_CACHE = {}


def cached_space(space, r, char):
    key = (space, r, char)
    if key not in _CACHE:
        ideal = construct_space(space, r, CoefficientField(char))
        groebner_basis(ideal)
        _CACHE[key] = ideal
    return _CACHE[key]


def cached_keys():
    return sorted(_CACHE)
