"""Wootters concurrence, entanglement of formation, and element-wise gradients.

The concurrence of a two-qubit state is
    c = max(0, l1 - l2 - l3 - l4),
with l_i the decreasingly sorted square roots of the eigenvalues of
rho * rho_tilde and rho_tilde = (sy x sy) conj(rho) (sy x sy).
The entanglement of formation is E = h((1 + sqrt(1 - c^2)) / 2) with h
the binary entropy.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainError,
    EigenFailureError,
    KinkRegionError,
)
from .qstate import DensityMatrix, WernerParams

KINK_TOL = 1e-6
GRADIENT_STEP = 1e-6
# Raw-path inputs may carry finite-difference perturbations or short
# backward-extrapolation residue (about gamma * dt); anything more negative
# than this is a genuinely bad matrix.
INPUT_PSD_FLOOR = 1e-3

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SYY = np.kron(_SY, _SY).real  # sy x sy is a real signed permutation


@dataclass(frozen=True)
class ConcurrenceResult:
    c: float
    lambdas: np.ndarray  # four values, sorted decreasing


@dataclass(frozen=True)
class MeasureGradient:
    """Partials of E with respect to the independent elements rho_ij, j >= i.

    dE_dRe[i, j] is the derivative with respect to Re(rho_ij) (the diagonal
    carries the plain real derivative); dE_dIm[i, j] with respect to
    Im(rho_ij).  Entries with j < i and diagonal dE_dIm entries are zero.
    """

    dE_dRe: np.ndarray
    dE_dIm: np.ndarray


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """Return rho_tilde = (sy x sy) conj(rho) (sy x sy)."""
    if rho.dim != 4:
        raise DimensionMismatchError(f"spin flip needs dim 4, got {rho.dim}")
    return _spin_flip_raw(rho.elements)


def _spin_flip_raw(mat: np.ndarray) -> np.ndarray:
    return _SYY @ mat.conj() @ _SYY


def _concurrence_raw(mat: np.ndarray) -> tuple[float, np.ndarray]:
    """Concurrence via the Hermitian-route spectrum, evaluated stably.

    With B = sqrt(rho) (sy x sy) sqrt(rho)^T one has
    B B^dagger = sqrt(rho) rho_tilde sqrt(rho), whose spectrum equals that
    of rho * rho_tilde; the lambda_i are therefore the singular values of
    B.  Taking singular values directly avoids squaring and keeps the
    lambdas accurate near rank-deficient (pure) states.
    """
    try:
        w, v = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenFailureError(f"eigensolver failed: {exc}") from exc
    if w.min() < -INPUT_PSD_FLOOR:
        raise EigenFailureError(
            f"input has eigenvalue {w.min()!r}, far outside the positive cone"
        )
    sq = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    b = sq @ _SYY @ sq.T
    try:
        lam = np.linalg.svd(b, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigenFailureError(f"singular value decomposition failed: {exc}") from exc
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0)), lam


def concurrence(rho: DensityMatrix) -> ConcurrenceResult:
    """Wootters concurrence of a two-qubit state."""
    if rho.dim != 4:
        raise DimensionMismatchError(f"concurrence needs dim 4, got {rho.dim}")
    c, lam = _concurrence_raw(rho.elements)
    lam = lam.copy()
    lam.setflags(write=False)
    return ConcurrenceResult(c=c, lambdas=lam)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0."""
    if x < 0.0 or x > 1.0:
        raise DomainError(f"binary entropy needs x in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def _eof_from_c(c: float) -> float:
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def _eof_raw(mat: np.ndarray) -> float:
    c, _ = _concurrence_raw(mat)
    return _eof_from_c(c)


def eof(rho: DensityMatrix) -> float:
    """Entanglement of formation E = h((1 + sqrt(1 - c^2)) / 2)."""
    if rho.dim != 4:
        raise DimensionMismatchError(f"eof needs dim 4, got {rho.dim}")
    return _eof_raw(rho.elements)


def eof_gradient(rho: DensityMatrix) -> MeasureGradient:
    """Central-difference gradient of eof over the independent elements.

    Each independent element rho_ij (j >= i) is perturbed by +-h with its
    Hermitian partner rho_ji following along; no trace constraint is
    enforced.  Step h = 1e-6.

    Raises KinkRegionError when c <= 1e-6: the concurrence has a kink at
    c = 0 and one-sided derivatives there are direction-dependent.
    Accuracy also degrades within ~h of the opposite boundary c = 1,
    where perturbations leave the state space and the measure saturates.
    """
    if rho.dim != 4:
        raise DimensionMismatchError(f"eof gradient needs dim 4, got {rho.dim}")
    c, _ = _concurrence_raw(rho.elements)
    if c <= KINK_TOL:
        raise KinkRegionError(
            f"concurrence {c!r} is within {KINK_TOL} of the c = 0 kink"
        )

    h = GRADIENT_STEP
    base = rho.elements
    d_re = np.zeros((4, 4))
    d_im = np.zeros((4, 4))
    for i in range(4):
        for j in range(i, 4):
            plus = np.array(base)
            minus = np.array(base)
            if i == j:
                plus[i, i] += h
                minus[i, i] -= h
            else:
                plus[i, j] += h
                plus[j, i] += h
                minus[i, j] -= h
                minus[j, i] -= h
            d_re[i, j] = (_eof_raw(plus) - _eof_raw(minus)) / (2 * h)
            if i != j:
                plus = np.array(base)
                minus = np.array(base)
                plus[i, j] += 1j * h
                plus[j, i] -= 1j * h
                minus[i, j] -= 1j * h
                minus[j, i] += 1j * h
                d_im[i, j] = (_eof_raw(plus) - _eof_raw(minus)) / (2 * h)
    d_re.setflags(write=False)
    d_im.setflags(write=False)
    return MeasureGradient(dE_dRe=d_re, dE_dIm=d_im)


def concurrence_werner(w: WernerParams) -> float:
    """Closed form for Bell-diagonal states: max(0, 2 max(a,b,c,d) - 1).

    The largest weight plays the distinguished role; smaller weights are
    relabelled implicitly by taking the max.
    """
    return max(0.0, 2.0 * max(w.a, w.b, w.c, w.d) - 1.0)
