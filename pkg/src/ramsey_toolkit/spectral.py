"""Dense spectral kernel: matrix exponentials, eigendecompositions, dilations.

Everything here is deterministic and desk-scale: matrices are plain numpy
arrays, no sparsity, no iterative eigensolvers beyond the power iteration
used for the spectral norm.  Log-domain trace evaluation lives here too so
that downstream witnesses can quote traces far below 1e-300 without
underflow.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Spectrum",
    "PowerIterationError",
    "mat_exp",
    "eig_general",
    "dilation_spectrum",
    "spectral_norm",
    "log_trace_exp",
]

# Smallest tolerance the Pade-13 scaling-and-squaring kernel can honour in
# double precision.  Requests below this are capped with a warning.
_TOL_FLOOR = 1e-13

#: Pade-13 numerator/denominator coefficients (Higham's scaling-and-squaring).
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)

#: 1-norm threshold below which the order-13 approximant needs no scaling.
_THETA13 = 4.25


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues, singular values and a condition estimate of one matrix.

    ``eigenvalues`` is sorted by (real part, imaginary part) ascending so the
    multiset has a stable presentation; ``singular_values`` is descending.
    ``condition`` is ``sigma_max / sigma_min`` and infinite for singular input.
    """

    eigenvalues: np.ndarray
    singular_values: np.ndarray
    condition: float = field(default=float("inf"))


class PowerIterationError(RuntimeError):
    """Power iteration ran out of iterations; carries the last estimate."""

    def __init__(self, message: str, last_estimate: float):
        super().__init__(message)
        self.last_estimate = last_estimate


def _as_square_matrix(M, name: str = "M") -> np.ndarray:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {A.shape}")
    if A.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A.astype(np.complex128 if np.iscomplexobj(A) else np.float64)


def mat_exp(M, tol: float = 1e-10) -> np.ndarray:
    """Matrix exponential via Pade-13 scaling and squaring.

    ``tol`` must lie in (0, 1e-6].  Values below the double-precision floor
    of 1e-13 are capped to it with a warning; the approximant itself delivers
    backward error near machine precision, so the cap is about honesty of the
    advertised bound rather than a change of algorithm.
    """
    A = _as_square_matrix(M)
    if not (0.0 < tol <= 1e-6):
        raise ValueError(f"tol must be in (0, 1e-6], got {tol}")
    if tol < _TOL_FLOOR:
        warnings.warn(
            f"tol={tol:g} is below the attainable floor {_TOL_FLOOR:g}; capped",
            RuntimeWarning,
            stacklevel=2,
        )

    d = A.shape[0]
    norm1 = float(np.linalg.norm(A, 1))
    squarings = 0
    if norm1 > _THETA13:
        squarings = max(0, int(math.ceil(math.log2(norm1 / _THETA13))))
        A = A / (2.0**squarings)

    b = _PADE13
    ident = np.eye(d, dtype=A.dtype)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A2 @ A4
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
         + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
    E = np.linalg.solve(V - U, V + U)
    for _ in range(squarings):
        E = E @ E
    return E


def eig_general(M) -> Spectrum:
    """Full eigendecomposition of a general square matrix.

    Uses the dense LAPACK route (Hessenberg reduction plus shifted QR).
    Trace and determinant consistency of the returned multiset are part of
    the contract and are what the unit tests pin down.
    """
    A = _as_square_matrix(M)
    eigenvalues = np.linalg.eigvals(A)
    order = np.lexsort((eigenvalues.imag, eigenvalues.real))
    eigenvalues = eigenvalues[order]
    singular = np.linalg.svd(A, compute_uv=False)
    smin = float(singular[-1])
    condition = float(singular[0] / smin) if smin > 0.0 else float("inf")
    return Spectrum(eigenvalues=eigenvalues, singular_values=singular,
                    condition=condition)


def dilation_spectrum(A) -> tuple[np.ndarray, Spectrum]:
    """Hermitian dilation ``H = [[0, A], [A^H, 0]]`` and its spectrum.

    Accepts any rectangular ``A``.  The dilation's eigenvalues are the
    singular values of ``A`` with both signs, which is how a non-Hermitian
    norm problem is handed to Hermitian-only machinery downstream.
    """
    B = np.asarray(A)
    if B.ndim != 2 or B.size == 0:
        raise ValueError(f"A must be a non-empty matrix, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        raise ValueError("A contains non-finite entries")
    r, c = B.shape
    dtype = np.complex128 if np.iscomplexobj(B) else np.float64
    H = np.zeros((r + c, r + c), dtype=dtype)
    H[:r, r:] = B
    H[r:, :r] = B.conj().T
    eigenvalues = np.linalg.eigvalsh(H)
    singular = np.linalg.svd(B, compute_uv=False)
    smin = float(singular[-1]) if singular.size else 0.0
    condition = float(singular[0] / smin) if smin > 0.0 else float("inf")
    spectrum = Spectrum(eigenvalues=eigenvalues.astype(np.complex128),
                        singular_values=singular, condition=condition)
    return H, spectrum


def spectral_norm(A, tol: float = 1e-8, max_iter: int = 500) -> float:
    """Largest singular value by power iteration on the Hermitian dilation.

    The dilation spectrum is symmetric about zero, so a single-step
    iteration can oscillate between the +sigma and -sigma eigenvectors;
    applying H twice per step targets H^2 whose top eigenvalue is sigma^2
    and restores convergence.  Failure to converge within ``max_iter``
    raises :class:`PowerIterationError` carrying the last estimate.
    """
    B = np.asarray(A, dtype=np.complex128 if np.iscomplexobj(A) else np.float64)
    if B.ndim != 2 or B.size == 0:
        raise ValueError(f"A must be a non-empty matrix, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        raise ValueError("A contains non-finite entries")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")

    r, c = B.shape
    n = r + c

    def apply_h(x: np.ndarray) -> np.ndarray:
        top = B @ x[r:]
        bot = B.conj().T @ x[:r]
        return np.concatenate([top, bot])

    # Fixed pseudo-random start; a deterministic seed keeps runs bit-stable
    # while avoiding accidental orthogonality to the top singular subspace.
    x = np.random.default_rng(0x5EED).standard_normal(n)
    x = x.astype(B.dtype) / np.linalg.norm(x)

    estimate = 0.0
    for _ in range(max_iter):
        y = apply_h(x)
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0
        z = apply_h(y / ny)
        nz = float(np.linalg.norm(z))
        if nz == 0.0:
            return 0.0
        # nz approximates sigma after the normalised double step.
        new_estimate = nz
        x = z / nz
        if abs(new_estimate - estimate) <= tol * max(1.0, new_estimate):
            return new_estimate
        estimate = new_estimate
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} iterations; "
        f"last estimate {estimate:.12g}",
        last_estimate=estimate,
    )


def log_trace_exp(eigenvalues, alpha: float) -> float:
    """log10 of ``sum_i exp(-alpha * lambda_i)`` via shifted log-sum-exp.

    Works entirely in the log domain so traces as small as 1e-10000 are
    representable.  For Hermitian positive semidefinite input the sum is a
    positive real and the returned value is exact up to rounding; for
    complex spectra the magnitude of the (complex) sum is reported.
    """
    lam = np.asarray(eigenvalues, dtype=np.complex128).ravel()
    if lam.size == 0:
        raise ValueError("eigenvalues must be non-empty")
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    exponents = -alpha * lam
    shift = float(np.max(exponents.real))
    scaled = np.exp(exponents - shift)
    total = complex(np.sum(scaled))
    magnitude = abs(total)
    if magnitude == 0.0:
        return float("-inf")
    return (shift + math.log(magnitude)) / math.log(10.0)
