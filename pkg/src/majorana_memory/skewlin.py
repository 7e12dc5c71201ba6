"""Linear algebra over real antisymmetric (skew-symmetric) matrices.

Every quadratic Majorana Hamiltonian and every fermionic covariance matrix in
this package is a real antisymmetric matrix ``A`` of even dimension.  The three
workhorses implemented here are

* :func:`williamson` -- the canonical (Williamson) normal form
  ``A = W^T diag(lambda_j * J) W`` with ``J = [[0, 1], [-1, 0]]``, orthogonal
  ``W`` and ``lambda_j >= 0``,
* :func:`expm_skew` -- the orthogonal one-parameter group ``exp(A t)`` computed
  through the normal form (a rotation by ``lambda_j t`` in each canonical
  plane),
* :func:`pfaffian` / :func:`det_skew` -- the Pfaffian by Parlett--Reid
  tridiagonalization with partial pivoting, and the determinant as its square.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NumericalConsistencyError",
    "SkewMatrix",
    "WilliamsonForm",
    "OrthogonalMatrix",
    "williamson",
    "expm_skew",
    "pfaffian",
    "det_skew",
]

#: eigenvalues closer than this are treated as one degenerate cluster
CLUSTER_TOL = 1e-10
#: reporting threshold below which a canonical eigenvalue counts as a zero mode
ZERO_MODE_TOL = 1e-12


class NumericalConsistencyError(RuntimeError):
    """An internal numerical invariant failed beyond tolerance.

    Carries the offending residual in :attr:`residual` when available.
    """

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual


def _check_skew(mat: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate shape/antisymmetry and return a float (or complex) array."""
    a = np.asarray(mat)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] % 2 != 0:
        raise ValueError(f"expected even dimension, got {a.shape[0]}")
    if not np.issubdtype(a.dtype, np.complexfloating):
        a = a.astype(float, copy=False)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    defect = float(np.max(np.abs(a + a.T))) if a.size else 0.0
    if defect > tol * scale:
        raise ValueError(f"matrix is not antisymmetric (defect {defect:.3e})")
    return a


@dataclass(frozen=True)
class SkewMatrix:
    """A validated real antisymmetric matrix of even dimension."""

    mat: np.ndarray

    def __post_init__(self):
        a = _check_skew(self.mat)
        if np.iscomplexobj(a):
            raise ValueError("SkewMatrix holds real matrices only")
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class OrthogonalMatrix:
    """A validated orthogonal matrix with determinant +1."""

    mat: np.ndarray
    tol: float = field(default=1e-8, repr=False)

    def __post_init__(self):
        r = np.asarray(self.mat, dtype=float)
        object.__setattr__(self, "mat", r)
        n = r.shape[0]
        defect = float(np.max(np.abs(r.T @ r - np.eye(n))))
        if defect > self.tol:
            raise NumericalConsistencyError(
                "matrix is not orthogonal", residual=defect
            )
        sign, _ = np.linalg.slogdet(r)
        if sign <= 0:
            raise NumericalConsistencyError(
                "orthogonal matrix must have determinant +1"
            )

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class WilliamsonForm:
    """Canonical form of a real antisymmetric matrix.

    Attributes
    ----------
    lambdas : (N,) ndarray
        Canonical eigenvalues, ascending, all >= 0.
    modes : (2N, 2N) ndarray
        Real orthogonal matrix; row pair ``(2j, 2j+1)`` (0-based) holds the
        canonical basis vectors of the j-th plane, so that
        ``A = modes.T @ blockdiag(lambda_j * J) @ modes``.
    """

    lambdas: np.ndarray
    modes: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.lambdas.shape[0]

    @property
    def dim(self) -> int:
        return self.modes.shape[0]

    def n_zero_modes(self, tol: float = ZERO_MODE_TOL) -> int:
        """Number of canonical eigenvalues reported as exact zeros."""
        return int(np.sum(self.lambdas < tol))

    def blockdiag(self, t: float = 1.0) -> np.ndarray:
        """The canonical middle factor ``blockdiag(t * lambda_j * J)``."""
        n2 = self.dim
        b = np.zeros((n2, n2))
        lt = t * self.lambdas
        b[0::2, 1::2] = np.diag(lt)
        b[1::2, 0::2] = -np.diag(lt)
        return b

    def reconstruct(self) -> np.ndarray:
        """Rebuild the original matrix from the normal form."""
        return self.modes.T @ self.blockdiag() @ self.modes

    def rotation(self, t: float) -> np.ndarray:
        """``exp(A t)`` as a dense orthogonal matrix (no re-validation)."""
        theta = self.lambdas * t
        c = np.cos(theta)[:, None]
        s = np.sin(theta)[:, None]
        u = self.modes[0::2]  # first vector of each plane
        v = self.modes[1::2]
        rotated = np.empty_like(self.modes)
        rotated[0::2] = c * u + s * v
        rotated[1::2] = -s * u + c * v
        return self.modes.T @ rotated


def _clusters(lam: np.ndarray, tol: float) -> list[tuple[int, int]]:
    """Split ascending eigenvalues into maximal runs with gaps < tol."""
    bounds = []
    start = 0
    for j in range(1, lam.size):
        if lam[j] - lam[j - 1] >= tol:
            bounds.append((start, j))
            start = j
    if lam.size:
        bounds.append((start, lam.size))
    return bounds


def _zero_cluster_basis(w: np.ndarray, vecs: np.ndarray, edge: float,
                        count: int) -> np.ndarray:
    """Orthonormal real basis (rows) of the invariant subspace at |w| ~ 0.

    Near lambda = 0 the +/- eigenspaces merge numerically and the complex
    eigenvectors lose their conjugation pairing, so the real subspace is
    recovered from *all* eigencolumns with |eigenvalue| inside the cluster.
    """
    cols = np.flatnonzero(np.abs(w) <= edge + 0.5 * CLUSTER_TOL)
    if cols.size != 2 * count:
        raise NumericalConsistencyError(
            f"zero cluster of {count} planes matched {cols.size} eigencolumns"
        )
    v = vecs[:, cols]
    stacked = np.concatenate([v.real, v.imag], axis=1)
    q, sv, _ = np.linalg.svd(stacked, full_matrices=False)
    if sv[2 * count - 1] < 1e-8 * sv[0]:
        raise NumericalConsistencyError(
            "rank-deficient zero-mode subspace", residual=float(sv[2 * count - 1])
        )
    return q[:, : 2 * count].T


def _gram_schmidt_rows(block: np.ndarray) -> np.ndarray:
    """In-place modified Gram-Schmidt on the rows of ``block``."""
    for i in range(block.shape[0]):
        for k in range(i):
            block[i] -= (block[i] @ block[k]) * block[k]
        nrm = np.linalg.norm(block[i])
        if nrm < 1e-8:
            raise NumericalConsistencyError(
                "Gram-Schmidt breakdown in degenerate cluster", residual=float(nrm)
            )
        block[i] /= nrm
    return block


def williamson(a: np.ndarray | SkewMatrix, *, check: bool = True) -> WilliamsonForm:
    """Canonical normal form of a real antisymmetric matrix.

    Parameters
    ----------
    a : (2N, 2N) array_like or SkewMatrix
        Real antisymmetric matrix.
    check : bool
        Verify the reconstruction and orthogonality residuals (default True).

    Returns
    -------
    WilliamsonForm

    Raises
    ------
    NumericalConsistencyError
        If the eigensolver fails to converge or a residual check fails.
    """
    mat = a.mat if isinstance(a, SkewMatrix) else _check_skew(a)
    if np.iscomplexobj(mat):
        raise ValueError("williamson requires a real antisymmetric matrix")
    n2 = mat.shape[0]
    n = n2 // 2
    try:
        w, vecs = np.linalg.eigh(-1j * mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalConsistencyError(f"eigensolver failed: {exc}") from exc

    lam = np.maximum(w[n:], 0.0)
    modes = np.empty((n2, n2))
    for i0, i1 in _clusters(lam, CLUSTER_TOL):
        if lam[i0] < CLUSTER_TOL:
            modes[2 * i0 : 2 * i1] = _zero_cluster_basis(
                w, vecs, float(lam[i1 - 1]), i1 - i0
            )
            continue
        for j in range(i0, i1):
            psi = vecs[:, n + j]
            u = np.sqrt(2.0) * psi.real
            v = np.sqrt(2.0) * psi.imag
            # re-orthonormalize the pair: fixes the O(eps/lambda) frame skew
            # of nearly degenerate +/- pairs without moving the plane
            u /= np.linalg.norm(u)
            v -= (v @ u) * u
            v /= np.linalg.norm(v)
            modes[2 * j] = u
            modes[2 * j + 1] = v
        if i1 - i0 > 1:
            _gram_schmidt_rows(modes[2 * i0 : 2 * i1])

    form = WilliamsonForm(lambdas=lam, modes=modes)
    if check:
        scale = float(np.max(np.abs(mat))) if n2 else 0.0
        resid = float(np.max(np.abs(form.reconstruct() - mat)))
        if resid > 1e-9 * max(scale, 1e-300):
            raise NumericalConsistencyError(
                "williamson reconstruction failed", residual=resid
            )
        ortho = float(np.max(np.abs(modes @ modes.T - np.eye(n2))))
        if ortho > 1e-10 * max(n2, 100):
            raise NumericalConsistencyError(
                "williamson modes not orthogonal", residual=ortho
            )
    return form


def expm_skew(a: np.ndarray | SkewMatrix, t: float = 1.0) -> OrthogonalMatrix:
    """Matrix exponential ``exp(A t)`` of a real antisymmetric matrix.

    Computed spectrally through :func:`williamson`, so the result is
    orthogonal with determinant +1 by construction; the constructor enforces
    an orthogonality defect below ``1e-10 * dim``.
    """
    form = williamson(a)
    return OrthogonalMatrix(form.rotation(t), tol=1e-10 * form.dim)


def pfaffian(a: np.ndarray | SkewMatrix, *, overwrite: bool = False) -> float | complex:
    """Pfaffian of an antisymmetric matrix (real or complex).

    Parlett--Reid tridiagonalization with partial pivoting on column
    magnitude; each two-row elimination step contributes one pivot factor and
    each row/column swap flips the sign.  A singular input returns exactly
    ``0.0``.
    """
    mat = a.mat if isinstance(a, SkewMatrix) else _check_skew(a)
    n = mat.shape[0]
    if n == 0:
        return 1.0
    m = np.array(mat, copy=not overwrite)
    complex_input = np.iscomplexobj(m)
    pf = complex(1.0) if complex_input else 1.0
    for k in range(0, n - 2, 2):
        col = np.abs(m[k + 1 :, k])
        kp = k + 1 + int(np.argmax(col))
        if m[kp, k] == 0.0:
            return 0.0 + 0.0j if complex_input else 0.0
        if kp != k + 1:
            m[[k + 1, kp], :] = m[[kp, k + 1], :]
            m[:, [k + 1, kp]] = m[:, [kp, k + 1]]
            pf = -pf
        pivot = m[k, k + 1]
        pf *= pivot
        tau = m[k, k + 2 :] / pivot
        srow = m[k + 1, k + 2 :]
        m[k + 2 :, k + 2 :] += np.outer(srow, tau) - np.outer(tau, srow)
    pf *= m[n - 2, n - 1]
    return pf


def det_skew(a: np.ndarray | SkewMatrix) -> float:
    """Determinant of a real antisymmetric matrix, as ``pfaffian(a) ** 2``.

    Squaring the Pfaffian avoids the sign/branch issues of taking a square
    root later: the result is exactly non-negative.
    """
    mat = a.mat if isinstance(a, SkewMatrix) else a
    if np.iscomplexobj(np.asarray(mat)):
        raise ValueError("det_skew is defined for real antisymmetric matrices")
    pf = pfaffian(mat)
    return float(pf * pf)
