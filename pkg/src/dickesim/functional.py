"""Generating-polynomial route to the correlation functions.

For a fully excited register the generating object for all normally
ordered correlations factorizes into N quadratic factors, one per
emitter, in formal detector variables f_l and their conjugates.  The
product is a finite polynomial, so derivatives reduce to exact
coefficient readout: no numerics beyond complex accumulation enter.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import factorial
from types import MappingProxyType
from typing import Mapping, Sequence

from .core import EmitterGeometry

MAX_DISTINCT_ANGLES = 4

ExponentKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class FormalPolynomial:
    """Polynomial in f_1..f_K and conjugates, keyed by exponent tuples.

    terms maps ((a_1..a_K), (b_1..b_K)) -> coefficient of
    prod f_l^{a_l} * prod fstar_l^{b_l}.
    """

    terms: Mapping[ExponentKey, complex]
    n_vars: int

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))

    def coefficient(self, powers_f: Sequence[int], powers_fstar: Sequence[int]) -> complex:
        key = (tuple(powers_f), tuple(powers_fstar))
        return self.terms.get(key, 0.0 + 0.0j)


def _multiply(
    terms: dict[ExponentKey, complex], factor: dict[ExponentKey, complex]
) -> dict[ExponentKey, complex]:
    out: dict[ExponentKey, complex] = {}
    for (ta, tb), tc in terms.items():
        for (fa, fb), fc in factor.items():
            key = (
                tuple(x + y for x, y in zip(ta, fa)),
                tuple(x + y for x, y in zip(tb, fb)),
            )
            out[key] = out.get(key, 0.0 + 0.0j) + tc * fc
    return out


def build_functional(
    geometry: EmitterGeometry, distinct_angles: Sequence[float]
) -> FormalPolynomial:
    """Expand the per-emitter product form over K distinct detector angles.

    Each emitter j contributes a factor 1 - |sum_l c_{l,j} f_l|^2 with
    c_{l,j} the far-field phase from emitter j toward angle l.
    """
    angles = [float(a) for a in distinct_angles]
    k = len(angles)
    if not 1 <= k <= MAX_DISTINCT_ANGLES:
        raise ValueError(
            f"supported detector-angle counts are 1..{MAX_DISTINCT_ANGLES}, got {k}"
        )
    n = geometry.n_emitters
    zero = (0,) * k

    def unit(i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(k))

    terms: dict[ExponentKey, complex] = {(zero, zero): 1.0 + 0.0j}
    for j in range(1, n + 1):
        c = [cmath.exp(-1j * geometry.phase_of(j, theta)) for theta in angles]
        factor: dict[ExponentKey, complex] = {(zero, zero): 1.0 + 0.0j}
        for l in range(k):
            for lp in range(k):
                key = (unit(l), unit(lp))
                factor[key] = factor.get(key, 0.0 + 0.0j) - c[l] * c[lp].conjugate()
        terms = _multiply(terms, factor)
    return FormalPolynomial(terms, k)


def extract_gm(poly: FormalPolynomial, multiplicities: Sequence[int]) -> float:
    """Read off G(m) for detector l repeated multiplicities[l] times.

    Merged repeated variables contribute (prod mult!)^2 from the repeated
    derivatives; a missing coefficient means the detection pattern is
    impossible and yields 0.
    """
    mults = tuple(int(x) for x in multiplicities)
    if len(mults) != poly.n_vars:
        raise ValueError(
            f"expected {poly.n_vars} multiplicities, got {len(mults)}"
        )
    if any(x < 0 for x in mults):
        raise ValueError(f"multiplicities must be nonnegative, got {mults}")
    m = sum(mults)
    if m < 1:
        raise ValueError("total detection order must be at least 1")

    coeff = poly.coefficient(mults, mults)
    scale = 1.0
    for x in mults:
        scale *= factorial(x)
    value = (-1.0) ** m * scale**2 * coeff
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        raise ValueError(f"extracted value is not real: {value}")
    if value.real < -1e-12 * max(1.0, scale**2):
        raise ValueError(f"extracted value is negative: {value.real}")
    return max(value.real, 0.0)
