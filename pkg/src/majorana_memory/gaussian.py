"""Fermionic Gaussian states of the chain: covariance-matrix simulation.

A pure Gaussian state of 2N Majorana modes is represented by its real
antisymmetric covariance matrix M_pq = (-i/2) <[c_p, c_q]>.  This module
implements the four primitives the storage simulation is built from:

* the two sector ground states of the unperturbed chain (closed form),
* orthogonal evolution M -> R M R^T,
* sequential stabilizer measurement (syndrome sampling) by the chain rule,
  with a rank-two covariance update per measured bond -- O(N^3) per sample,
* syndrome probabilities and Wick-expansion expectation values of products
  of linear forms, both through Pfaffians.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .skewlin import NumericalConsistencyError, det_skew, pfaffian

__all__ = [
    "GaussianState",
    "Syndrome",
    "ground_state",
    "syndrome_covariance",
    "evolve",
    "sample_syndrome",
    "forced_syndrome_probability",
    "syndrome_probability",
    "wick_expectation",
]

#: conditional probabilities within this margin of 0/1 take the deterministic branch
DEGENERATE_TOL = 1e-12
#: conditional probabilities outside [-PROB_TOL, 1 + PROB_TOL] are fatal
PROB_TOL = 1e-9


@dataclass(frozen=True)
class GaussianState:
    """Covariance matrix plus the parity sector it lives in.

    ``parity`` is 0 or 1 for the even/odd sector of a parity eigenstate and
    None when unknown/mixed.  Pure states satisfy M^T M = I.
    """

    m: np.ndarray
    parity: int | None = None

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        object.__setattr__(self, "m", m)
        if self.parity not in (0, 1, None):
            raise ValueError(f"parity must be 0, 1 or None, got {self.parity}")

    @property
    def n_sites(self) -> int:
        return self.m.shape[0] // 2

    def purity_defect(self) -> float:
        """max |M^T M - I|; zero for a pure state."""
        n2 = self.m.shape[0]
        return float(np.max(np.abs(self.m.T @ self.m - np.eye(n2))))

    def require_pure(self, tol: float = 1e-8):
        defect = self.purity_defect()
        if defect > tol:
            raise NumericalConsistencyError("state is not pure", residual=defect)


@dataclass(frozen=True)
class Syndrome:
    """Measured stabilizer bits s_1..s_{N-1} and their joint probability."""

    bits: np.ndarray
    prob: float

    def __post_init__(self):
        object.__setattr__(self, "bits", np.asarray(self.bits, dtype=np.uint8))
        if not 0.0 < self.prob <= 1.0 + PROB_TOL:
            raise ValueError(f"syndrome probability {self.prob} outside (0, 1]")

    @property
    def weight(self) -> int:
        return int(np.sum(self.bits))


def ground_state(n_sites: int, parity: int) -> GaussianState:
    """Ground state of the unperturbed chain in the given parity sector.

    Nonzero covariance entries (1-based): M_{2j,2j+1} = 1 on every bond and
    M_{1,2N} = (-1)^sigma on the boundary pair.
    """
    if parity not in (0, 1):
        raise ValueError("parity sector must be 0 or 1")
    n2 = 2 * n_sites
    m = np.zeros((n2, n2))
    sign = 1.0 if parity == 0 else -1.0
    m[0, n2 - 1] = sign
    m[n2 - 1, 0] = -sign
    j = np.arange(n_sites - 1)
    m[2 * j + 1, 2 * j + 2] = 1.0
    m[2 * j + 2, 2 * j + 1] = -1.0
    return GaussianState(m=m, parity=parity)


def syndrome_covariance(n_sites: int, bits, parity: int) -> np.ndarray:
    """Covariance of the joint stabilizer/parity eigenstate labeled (s, sigma).

    Nonzero above-diagonal entries: M_{2j,2j+1} = (-1)^{s_j} and
    M_{1,2N} = (-1)^{sigma + sum(s)}.
    """
    s = np.asarray(bits, dtype=np.uint8)
    if s.shape != (n_sites - 1,):
        raise ValueError(f"expected {n_sites - 1} bits, got shape {s.shape}")
    n2 = 2 * n_sites
    m = np.zeros((n2, n2))
    signs = 1.0 - 2.0 * s.astype(float)
    j = np.arange(n_sites - 1)
    m[2 * j + 1, 2 * j + 2] = signs
    m[2 * j + 2, 2 * j + 1] = -signs
    boundary = 1.0 if (parity + int(np.sum(s))) % 2 == 0 else -1.0
    m[0, n2 - 1] = boundary
    m[n2 - 1, 0] = -boundary
    return m


def evolve(state: GaussianState, r) -> GaussianState:
    """Conjugate the covariance by an orthogonal matrix: M -> R M R^T."""
    rm = r.mat if hasattr(r, "mat") else np.asarray(r, dtype=float)
    return GaussianState(m=rm @ state.m @ rm.T, parity=state.parity)


def _measurement_step(m: np.ndarray, j: int, s_j: int, p_branch: float,
                      *, full_update: bool, degenerate: bool):
    """Apply the post-measurement covariance update for bond j (1-based).

    Only the entries needed by later bonds are updated in the default mode:
    the first row/column and the trailing block p, q >= 2j+2 (1-based).  In
    ``full_update`` mode every untouched pair is updated and the measured
    rows are set to their exact post-measurement values, so ``m`` stays a
    valid covariance matrix throughout.
    """
    n2 = m.shape[0]
    a, b = 2 * j - 1, 2 * j  # 0-based rows of Majoranas 2j, 2j+1
    if full_update:
        idx = np.r_[0:a, b + 1 : n2]
    else:
        idx = np.r_[0:1, b + 1 : n2]
    arow = m[a, idx].copy()
    brow = m[b, idx].copy()
    if degenerate and min(np.max(np.abs(arow)), np.max(np.abs(brow))) < 1e-10:
        pass  # numerators vanish; skip the rank-deficient update
    else:
        coef = (1.0 if s_j == 0 else -1.0) / (2.0 * p_branch)
        block = np.ix_(idx, idx)
        m[block] -= coef * (np.outer(arow, brow) - np.outer(brow, arow))
    if full_update:
        m[a, :] = 0.0
        m[:, a] = 0.0
        m[b, :] = 0.0
        m[:, b] = 0.0
        sign = 1.0 if s_j == 0 else -1.0
        m[a, b] = sign
        m[b, a] = -sign


def _branch_probability(m: np.ndarray, j: int) -> float:
    """p(s_j = 0) for bond j given the current conditional covariance."""
    p0 = 0.5 * (1.0 + m[2 * j - 1, 2 * j])
    if not -PROB_TOL <= p0 <= 1.0 + PROB_TOL:
        raise NumericalConsistencyError(
            f"conditional probability escaped [0, 1] at bond {j}", residual=p0
        )
    return min(max(p0, 0.0), 1.0)


def sample_syndrome(state: GaussianState, rng: np.random.Generator, *,
                    full_update: bool = False,
                    purity_tol: float | None = None):
    """Measure all bond stabilizers sequentially on a copy of the state.

    Returns ``(Syndrome, GaussianState)`` where the syndrome carries the
    exact joint probability (the product of the conditional branch
    probabilities) and the returned state is the post-measurement state.
    Conditional probabilities within 1e-12 of 0 or 1 short-circuit to the
    deterministic branch without consuming randomness.

    With ``full_update`` the covariance is updated on all index pairs (not
    just the ones later bonds need), which keeps the working matrix a valid
    covariance at every step; ``purity_tol`` then bounds the allowed
    purity defect after each measurement.
    """
    if state.parity is None:
        raise ValueError("syndrome sampling requires a parity eigenstate")
    n = state.n_sites
    m = state.m.copy()
    bits = np.zeros(n - 1, dtype=np.uint8)
    prob = 1.0
    for j in range(1, n):
        p0 = _branch_probability(m, j)
        if p0 >= 1.0 - DEGENERATE_TOL:
            s_j, p_branch, degenerate = 0, p0, True
        elif p0 <= DEGENERATE_TOL:
            s_j, p_branch, degenerate = 1, 1.0 - p0, True
        else:
            s_j = 0 if rng.random() < p0 else 1
            p_branch = p0 if s_j == 0 else 1.0 - p0
            degenerate = False
        bits[j - 1] = s_j
        prob *= p_branch
        _measurement_step(m, j, s_j, p_branch,
                          full_update=full_update, degenerate=degenerate)
        if full_update and purity_tol is not None:
            defect = float(np.max(np.abs(m.T @ m - np.eye(2 * n))))
            if defect > purity_tol:
                raise NumericalConsistencyError(
                    f"purity lost at bond {j}", residual=defect
                )
    if full_update:
        post = GaussianState(m=m, parity=state.parity)
    else:
        post = GaussianState(m=syndrome_covariance(n, bits, state.parity),
                             parity=state.parity)
    return Syndrome(bits=bits, prob=prob), post


def forced_syndrome_probability(state: GaussianState, bits) -> float:
    """Probability of one specific syndrome via the sequential chain rule.

    Same machinery as :func:`sample_syndrome` with the outcomes pinned;
    returns exactly 0.0 as soon as a forced branch has zero conditional
    probability.
    """
    if state.parity is None:
        raise ValueError("syndrome probabilities require a parity eigenstate")
    n = state.n_sites
    s = np.asarray(bits, dtype=np.uint8)
    if s.shape != (n - 1,):
        raise ValueError(f"expected {n - 1} bits, got shape {s.shape}")
    m = state.m.copy()
    prob = 1.0
    for j in range(1, n):
        p0 = _branch_probability(m, j)
        p_branch = p0 if s[j - 1] == 0 else 1.0 - p0
        if p_branch <= 0.0:
            return 0.0
        degenerate = p_branch >= 1.0 - DEGENERATE_TOL
        prob *= p_branch
        _measurement_step(m, j, int(s[j - 1]), p_branch,
                          full_update=False, degenerate=degenerate)
    return prob


def syndrome_probability(state: GaussianState, bits) -> float:
    """Probability 2^{-N} sqrt(det(M + M_s)) of syndrome s on this state."""
    if state.parity is None:
        raise ValueError("syndrome probabilities require a parity eigenstate")
    n = state.n_sites
    m_s = syndrome_covariance(n, bits, state.parity)
    val = det_skew(state.m + m_s)
    if val < -1e-12:
        raise NumericalConsistencyError(
            "negative syndrome-probability determinant", residual=val
        )
    return float(2.0**-n * np.sqrt(max(val, 0.0)))


def wick_expectation(state: GaussianState, forms: np.ndarray) -> complex:
    """<L_1 ... L_2m> on the state, with L_j = sum_p forms[j, p] c_p.

    The Wick antisymmetric matrix has entries
    A_jk = sum_pq forms[j,p] forms[k,q] (delta_pq + i M_pq) for j < k, and
    the expectation value is its Pfaffian.
    """
    f = np.asarray(forms)
    if f.ndim != 2 or f.shape[1] != state.m.shape[0]:
        raise ValueError(f"forms shape {f.shape} does not match state")
    if f.shape[0] % 2 != 0:
        raise ValueError("need an even number of linear forms")
    if f.shape[0] == 0:
        return 1.0 + 0.0j
    kernel = np.eye(state.m.shape[0], dtype=complex) + 1j * state.m
    b = f @ kernel @ f.T
    a = np.triu(b, 1)
    a = a - a.T
    return complex(pfaffian(a, overwrite=True))
