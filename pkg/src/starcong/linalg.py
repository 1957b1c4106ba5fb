"""Complex 2x2 and small dense real linear algebra primitives.

Everything here is exact-intent: closed-form 2x2 arithmetic, a numerically
stable quadratic-formula eigensolver, row-reduction rank over the reals, and
the inertia of a 2x2 Hermitian matrix.  All entry points reject NaN/Inf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotHermitian, SingularMatrix

EPS = float(np.finfo(np.float64).eps)

#: Relative determinant floor (vs ||A||_F^2) below which inverse2 refuses.
TOL_SINGULAR = 1e-12


def as_mat2(A) -> np.ndarray:
    """Validate and return a 2x2 complex128 copy of ``A``."""
    M = np.asarray(A, dtype=np.complex128)
    if M.shape != (2, 2):
        raise InvalidInput(f"expected a 2x2 matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M.view(np.float64))):
        raise InvalidInput("matrix contains NaN or Inf entries")
    return M.copy()


def _check_scalar(z: complex, name: str = "value") -> complex:
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise InvalidInput(f"{name} is not finite")
    return z


def frob(A) -> float:
    return float(np.linalg.norm(np.asarray(A, dtype=np.complex128)))


def det2(A) -> complex:
    A = np.asarray(A, dtype=np.complex128)
    return complex(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_mat2(A).conj().T.copy()


def star_congruence(S, A) -> np.ndarray:
    """S* A S.  S need not be nonsingular for the raw product."""
    S = as_mat2(S)
    A = as_mat2(A)
    return S.conj().T @ A @ S


def eigenvalues2(A) -> tuple[complex, complex]:
    """Both roots of det(A - xI) = 0.

    Uses the quadratic formula with the stable branch: the larger-magnitude
    root is computed first and the other recovered as det/root when possible.
    Returned sorted by (|.| desc, Re desc, Im desc).
    """
    A = as_mat2(A)
    a, b, c, d = complex(A[0, 0]), complex(A[0, 1]), complex(A[1, 0]), complex(A[1, 1])
    return _eig2_scalars(a, b, c, d)


def _eig2_scalars(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex]:
    tr = a + d
    det = a * d - b * c
    # (a+d)^2 - 4(ad-bc) written as (a-d)^2 + 4bc to avoid one cancellation
    disc = (a - d) * (a - d) + 4.0 * b * c
    sq = np.sqrt(complex(disc))
    if (tr.real * sq.real + tr.imag * sq.imag) < 0.0:
        sq = -sq
    r1 = (tr + sq) / 2.0
    r2 = det / r1 if r1 != 0 else (tr - sq) / 2.0
    return _sort_eig_pair(complex(r1), complex(r2))


def _sort_eig_pair(p: complex, q: complex) -> tuple[complex, complex]:
    kp = (-abs(p), -p.real, -p.imag)
    kq = (-abs(q), -q.real, -q.imag)
    return (p, q) if kp <= kq else (q, p)


def inverse2(A) -> np.ndarray:
    """Closed-form 2x2 inverse; refuses when |det| <= TOL_SINGULAR * ||A||_F^2."""
    A = as_mat2(A)
    det = det2(A)
    nrm2 = float(np.linalg.norm(A)) ** 2
    if abs(det) <= TOL_SINGULAR * nrm2:
        raise SingularMatrix(f"|det| = {abs(det):.3e} <= {TOL_SINGULAR:.0e} * ||A||^2")
    inv = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=np.complex128)
    return inv / det


def cosquare(A) -> np.ndarray:
    """(A^{-1})* A.  Its eigenvalues occur in reciprocal-conjugate pairs."""
    A = as_mat2(A)
    return inverse2(A).conj().T @ A


def real_rank(M, tol: float) -> int:
    """Rank over R by row reduction with partial pivoting.

    A pivot counts iff its magnitude exceeds ``tol`` times the largest entry
    magnitude of the initial matrix, so the result is scale-free.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    W = np.array(M, dtype=np.float64, copy=True)
    if W.ndim != 2:
        raise InvalidInput("expected a 2-d real matrix")
    if not np.all(np.isfinite(W)):
        raise InvalidInput("matrix contains NaN or Inf entries")
    rows, cols = W.shape
    threshold = tol * (np.max(np.abs(W)) if W.size else 0.0)
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = row + int(np.argmax(np.abs(W[row:, col])))
        if abs(W[pivot, col]) <= threshold:
            continue
        if pivot != row:
            W[[row, pivot]] = W[[pivot, row]]
        W[row + 1:] -= np.outer(W[row + 1:, col] / W[row, col], W[row])
        rank += 1
        row += 1
    return rank


@dataclass(frozen=True)
class Inertia:
    """Counts of positive / zero / negative eigenvalues of a Hermitian matrix."""

    n_plus: int
    n_zero: int
    n_minus: int

    def __iter__(self):
        return iter((self.n_plus, self.n_zero, self.n_minus))


def inertia2(H, tol: float = 1e-9) -> Inertia:
    """Inertia of a 2x2 Hermitian matrix.

    ``H`` must satisfy ||H - H*|| <= tol * ||H||; eigenvalues within
    tol * ||H|| of zero are counted as zero.
    """
    H = as_mat2(H)
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    nrm = frob(H)
    if nrm == 0.0:
        return Inertia(0, 2, 0)
    herm_resid = frob(H - H.conj().T)
    if herm_resid > tol * nrm:
        raise NotHermitian(f"||H - H*|| = {herm_resid:.3e} > tol * ||H||")
    Hs = (H + H.conj().T) / 2.0
    h11 = float(Hs[0, 0].real)
    h22 = float(Hs[1, 1].real)
    mid = (h11 + h22) / 2.0
    rad = float(np.hypot((h11 - h22) / 2.0, abs(Hs[0, 1])))
    eigs = (mid - rad, mid + rad)
    cut = tol * nrm
    n_plus = sum(1 for e in eigs if e > cut)
    n_minus = sum(1 for e in eigs if e < -cut)
    return Inertia(n_plus, 2 - n_plus - n_minus, n_minus)
