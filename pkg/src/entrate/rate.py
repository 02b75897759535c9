"""Entanglement rate Gamma(t) = dE/dt by three independent routes.

Routes:
  * rate_numeric  -- central difference of E along an integrated trajectory;
                     the ground-truth oracle for the other two.
  * rate_chain    -- sum over independent matrix elements of
                     (dE/d rho_ij) (d rho_ij / dt), gradients by finite
                     differences.
  * rate_werner / rate_xy -- closed forms for the two parametric families,
                     exact chain rules of the family concurrences.

Closed-form conventions: with u = sqrt(1 - c^2), the measure derivative is
dE/dc = c * atanh(u) / (u ln 2), approaching 1/ln 2 as c -> 1.  For the XY
family the concurrence is G = 2|q| and stays exactly 2|q(t)| along the
damped-XY flow, giving
    Gamma = [2 G atanh(u) / (u ln 2)] * (g qI (2p-1) - gamma |q|^2) / |q|
with prefactor limit 2/ln2 at G = 1.  Gamma is positive exactly when
g/gamma exceeds |q|^2 / (qI (2p-1)).
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entanglement import eof, eof_gradient
from .errors import (
    DegenerateDirectionError,
    DomainError,
    IndexOutOfRangeError,
    SeparableRegionError,
)
from .lindblad import ModelParams, Trajectory
from .qstate import DensityMatrix, WernerParams, XYFamilyParams

SEPARABLE_TOL = 1e-6
XY_SEPARABLE_TOL = 1e-8
LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class RateBreakdown:
    """Total rate plus its per-element (dE term, d rho term) contributions."""

    gamma_total: float
    terms: Sequence[tuple[str, float, float]]


def rate_numeric(trajectory: Trajectory, index: int) -> float:
    """Central difference of the entanglement of formation at a trajectory index."""
    n = len(trajectory)
    if not 1 <= index <= n - 2:
        raise IndexOutOfRangeError(
            f"index {index} has no neighbours in a trajectory of length {n}"
        )
    e_plus = eof(trajectory.states[index + 1])
    e_minus = eof(trajectory.states[index - 1])
    return (e_plus - e_minus) / (trajectory.times[index + 1] - trajectory.times[index - 1])


def rate_chain(rho: DensityMatrix, rho_dot: np.ndarray) -> RateBreakdown:
    """Pair the measure gradient with the element derivatives.

    Diagonal elements contribute dE/d(rho_ii) * Re(drho_ii/dt); each
    off-diagonal element contributes real and imaginary parts separately.
    Propagates KinkRegionError where the gradient is undefined.
    """
    grad = eof_gradient(rho)
    rho_dot = np.asarray(rho_dot, dtype=complex)
    terms = []
    total = 0.0
    for i in range(4):
        for j in range(i, 4):
            if i == j:
                de, dr = grad.dE_dRe[i, i], rho_dot[i, i].real
                terms.append((f"rho{i + 1}{j + 1}", de, dr))
                total += de * dr
            else:
                de, dr = grad.dE_dRe[i, j], rho_dot[i, j].real
                terms.append((f"Re rho{i + 1}{j + 1}", de, dr))
                total += de * dr
                de, dr = grad.dE_dIm[i, j], rho_dot[i, j].imag
                terms.append((f"Im rho{i + 1}{j + 1}", de, dr))
                total += de * dr
    return RateBreakdown(gamma_total=total, terms=tuple(terms))


def _measure_slope(c: float) -> float:
    """dE/dc = c atanh(u)/(u ln2) with u = sqrt(1-c^2); limit 1/ln2 at c=1."""
    u = np.sqrt(max(0.0, 1.0 - c * c))
    if u == 0.0:
        return c / LN2
    return float(c * np.arctanh(u) / (u * LN2))


def rate_werner(w: WernerParams, params: ModelParams) -> float:
    """Closed-form instantaneous rate for a Bell-diagonal initial state.

    With F = a - b - c - d > 0 the concurrence is F and evolves as
        dF/dt = gamma (c + d) - 2 gamma a          for c + d > 0,
        dF/dt = -gamma F                           on the c + d = 0 edge,
    where on the edge rho11*rho44 stays identically zero and the noise
    floor sqrt(rho11 rho44) never bites.  Gamma = dE/dF * dF/dt; always
    nonpositive, so Bell-diagonal states cannot gain entanglement here.
    """
    f = w.a - w.b - w.c - w.d
    if f <= SEPARABLE_TOL:
        raise SeparableRegionError(
            f"closed form needs F = a-b-c-d > {SEPARABLE_TOL}, got {f!r}"
        )
    s = w.c + w.d
    gam = params.gamma
    if s > 0.0:
        f_dot = gam * s - 2.0 * gam * w.a
    else:
        f_dot = -gam * f
    return _measure_slope(f) * f_dot


def rate_xy_value(p: float, q: complex, g: float, gamma: float) -> float:
    """Raw closed-form rate for population p and coherence q.

    Defined wherever 0 < |q| <= 1/2, independent of whether (p, q) jointly
    satisfies the state positivity condition; sweep commands rely on this
    to evaluate the formula on the full coherence disk.
    """
    aq = abs(q)
    if aq <= XY_SEPARABLE_TOL:
        raise SeparableRegionError(f"closed form needs |q| > {XY_SEPARABLE_TOL}, got {aq!r}")
    big_g = 2.0 * aq
    if big_g > 1.0 + 1e-12:
        raise DomainError(f"concurrence 2|q| = {big_g!r} exceeds 1")
    bracket = g * q.imag * (2.0 * p - 1.0) - gamma * aq * aq
    return 2.0 * _measure_slope(min(big_g, 1.0)) * bracket / aq


def rate_xy(x: XYFamilyParams, params: ModelParams) -> float:
    """Closed-form instantaneous rate for the XY family.

    The sign always matches the sign of g qI (2p-1) - gamma |q|^2.
    """
    return rate_xy_value(x.p, x.q, params.g, params.gamma)


def criterion_threshold_value(p: float, q: complex) -> float:
    """Raw threshold |q|^2 / (qI (2p-1)), without family validation."""
    denom = q.imag * (2.0 * p - 1.0)
    if denom == 0.0:
        raise DegenerateDirectionError(
            "qI (2p-1) = 0: no entangling direction, the rate has the sign of -gamma |q|^2"
        )
    return abs(q) ** 2 / denom


def criterion_threshold(x: XYFamilyParams) -> float:
    """Threshold |q|^2 / (qI (2p-1)): the rate is positive iff g/gamma exceeds it."""
    return criterion_threshold_value(x.p, x.q)
