"""Shared helpers for exercising realized fields against the abstract algebra."""

from crprolong.realize import BRACKET_SIGN, realize_element
from crprolong.verify import verify_hol


def abstract_bracket(alg, d1, a1, d2, a2):
    """Bracket of two abstract basis elements: (total degree, coeff tuple or None).

    None means the bracket is identically zero (it lands outside the computed
    range or in a vanishing piece).
    """
    if d1 > d2:
        total, v = abstract_bracket(alg, d2, a2, d1, a1)
        return total, (None if v is None else tuple(-x for x in v))
    block = alg.structure_constants().get((d1, d2))
    total = d1 + d2
    if block is None:
        return total, None
    return total, block[a1][a2]


def basis_index(alg):
    return [(d, a) for d in alg.degrees() if alg.dims[d] for a in range(alg.dims[d])]


def realized_basis_map(alg):
    out = {}
    for d, a in basis_index(alg):
        unit = [0] * alg.dims[d]
        unit[a] = 1
        out[(d, a)] = realize_element(alg, d, unit)
    return out


def sigma_sweep(alg, pairs=None):
    """Check field_bracket(realize A, realize B) == sign * realize([A, B]) with
    the single global sign on the given (or all) basis pairs.  Returns the
    number of pairs checked; raises AssertionError on the first violation."""
    fields = realized_basis_map(alg)
    idx = basis_index(alg)
    if pairs is None:
        pairs = [(x, y) for i, x in enumerate(idx) for y in idx[i:]]
    checked = 0
    for (d1, a1), (d2, a2) in pairs:
        got = fields[(d1, a1)].bracket(fields[(d2, a2)])
        total, coeffs = abstract_bracket(alg, d1, a1, d2, a2)
        if coeffs is None or not any(coeffs):
            assert got.is_zero(), f"nonzero field bracket for zero abstract bracket {(d1, a1, d2, a2)}"
        else:
            want = realize_element(alg, total, coeffs) * BRACKET_SIGN
            assert got == want, f"bracket compatibility failed on {(d1, a1, d2, a2)}"
        checked += 1
    return checked


def tangency_sweep(result):
    """verify_hol for every realized basis field of every degree; returns count."""
    alg = result.algebra
    checked = 0
    for d, a in basis_index(alg):
        unit = [0] * alg.dims[d]
        unit[a] = 1
        field = realize_element(alg, d, unit)
        cert = verify_hol(field, result.model)
        assert cert.verdict, f"realized basis field (degree {d}, index {a}) not tangent"
        assert field.weighted_degree() == d
        checked += 1
    return checked
