"""Majorana chain parameters, disorder realizations, one-particle matrices.

The chain of N fermionic sites (2N Majorana operators) is specified by a
uniform coupling J = 1, a chemical potential mu_j = mu + eta * x_j with
x_j in [-1, 1], and an optional long-range pairing imbalance.  Three disorder
scenarios generate the x_j:

* ``NoDisorder`` -- x_j = 0 (homogeneous chain),
* ``UniformDisorder`` -- x_j i.i.d. uniform on [-1, 1] from a counter-based
  (Philox) stream keyed by (seed, realization_index), so realizations are
  reproducible and order-independent,
* ``LogisticDisorder`` -- x_j = 1 - 2 y_j with the logistic iteration
  y_{j+1} = a y_j (1 - y_j), a deterministic pseudorandom sequence.

Three matrix builders expose the one-particle problem: the real antisymmetric
generator of the Heisenberg dynamics, and two equivalent Anderson-type forms
(an N x N tridiagonal matrix with eigenvalues lambda^2 - 1, and a 2N x 2N
symmetric tridiagonal matrix with eigenvalues +/- lambda) used by the
localization diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NoDisorder",
    "UniformDisorder",
    "LogisticDisorder",
    "ChainParams",
    "PotentialRealization",
    "realize_potential",
    "logistic_sequence",
    "one_particle_hamiltonian",
    "anderson_h_plus",
    "anderson_h_s",
]

# stream tags: every RNG consumer in the package derives its Philox key from
# (seed, tag, indices...) so streams never collide across subsystems
STREAM_POTENTIAL = 1
STREAM_SAMPLER = 2


def stream(seed: int, *path: int) -> np.random.Generator:
    """Counter-based random stream keyed by (seed, *path).

    Philox keys are derived through SeedSequence, so distinct paths give
    statistically independent streams and the mapping is stable across
    process/thread scheduling.
    """
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([int(seed), *map(int, path)]))
    )


@dataclass(frozen=True)
class NoDisorder:
    """Homogeneous chain, mu_j = mu."""


@dataclass(frozen=True)
class UniformDisorder:
    """I.i.d. x_j ~ uniform[-1, 1], reproducible from ``seed``."""

    seed: int = 0


@dataclass(frozen=True)
class LogisticDisorder:
    """Deterministic x_j = 1 - 2 y_j from the logistic map.

    The iteration y_{j+1} = a y_j (1 - y_j) is chaotic for most
    3.57 < a < 4 and y_1 in (0, 1).
    """

    y1: float = 0.5
    a: float = 3.9

    def __post_init__(self):
        if not 0.0 <= self.y1 <= 1.0:
            raise ValueError(f"y1 must lie in [0, 1], got {self.y1}")
        if not 0.0 < self.a <= 4.0:
            raise ValueError(f"logistic parameter a must lie in (0, 4], got {self.a}")


Disorder = NoDisorder | UniformDisorder | LogisticDisorder


@dataclass(frozen=True)
class ChainParams:
    """Parameters of the disordered Majorana chain (couplings in units J=1).

    ``w_minus_absdelta`` stores w - |Delta|; the corresponding range-3 pairing
    term enters the one-particle matrix with coefficient |Delta| - w (its
    negative).  The perturbation strength is
    eps = max_j |mu_j| + |w - |Delta||.
    """

    n_sites: int
    mu: float = 0.0
    eta: float = 0.0
    disorder: Disorder = NoDisorder()
    w_minus_absdelta: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"need at least 2 sites, got {self.n_sites}")
        if self.eta < 0:
            raise ValueError(f"disorder strength eta must be >= 0, got {self.eta}")
        if self.eta > 0 and isinstance(self.disorder, NoDisorder):
            raise ValueError("eta > 0 requires a disorder scenario")


@dataclass(frozen=True)
class PotentialRealization:
    """One realized potential mu_1..mu_N plus its provenance."""

    mus: np.ndarray
    realization_index: int = 0
    seed_used: int | None = None

    @property
    def n_sites(self) -> int:
        return self.mus.shape[0]


def logistic_sequence(y1: float, a: float, n: int) -> np.ndarray:
    """First n iterates y_1..y_n of y_{k+1} = a y_k (1 - y_k)."""
    y = np.empty(n)
    y[0] = y1
    for k in range(1, n):
        y[k] = a * y[k - 1] * (1.0 - y[k - 1])
    return y


def disorder_values(params: ChainParams, realization_index: int = 0,
                    n: int | None = None) -> np.ndarray:
    """The raw x_j in [-1, 1] for one realization (before mu + eta scaling)."""
    n = params.n_sites if n is None else n
    d = params.disorder
    if isinstance(d, NoDisorder):
        return np.zeros(n)
    if isinstance(d, UniformDisorder):
        rng = stream(d.seed, STREAM_POTENTIAL, realization_index)
        return rng.uniform(-1.0, 1.0, size=n)
    if isinstance(d, LogisticDisorder):
        return 1.0 - 2.0 * logistic_sequence(d.y1, d.a, n)
    raise TypeError(f"unknown disorder scenario {d!r}")


def realize_potential(params: ChainParams, realization_index: int = 0) -> PotentialRealization:
    """Draw (or deterministically build) mu_j = mu + eta * x_j.

    For ``UniformDisorder`` the realization index selects an independent
    substream of the same seed; for the deterministic scenarios it is ignored
    (but recorded).
    """
    x = disorder_values(params, realization_index)
    mus = params.mu + params.eta * x
    seed = params.disorder.seed if isinstance(params.disorder, UniformDisorder) else None
    return PotentialRealization(mus=mus, realization_index=realization_index,
                                seed_used=seed)


def perturbation_strength(params: ChainParams, pot: PotentialRealization) -> float:
    """eps = max_j |mu_j| + |w - |Delta||."""
    return float(np.max(np.abs(pot.mus))) + abs(params.w_minus_absdelta)


def one_particle_hamiltonian(pot: PotentialRealization,
                             w_minus_absdelta: float = 0.0) -> np.ndarray:
    """Real antisymmetric 2N x 2N generator of the Majorana dynamics.

    Sign conventions (1-based indices): entry (2j-1, 2j) = -mu_j within each
    site, entry (2j, 2j+1) = +1 between neighboring sites, and -- when the
    pairing imbalance is nonzero -- entry (2j-1, 2j+2) = |Delta| - w.
    The Heisenberg evolution of the Majorana frame is exp(H t).
    """
    mus = np.asarray(pot.mus, dtype=float)
    n = mus.shape[0]
    h = np.zeros((2 * n, 2 * n))
    idx = np.arange(n)
    h[2 * idx, 2 * idx + 1] = -mus
    h[2 * idx + 1, 2 * idx] = mus
    j = np.arange(n - 1)
    h[2 * j + 1, 2 * j + 2] = 1.0
    h[2 * j + 2, 2 * j + 1] = -1.0
    if w_minus_absdelta != 0.0:
        c = -w_minus_absdelta  # the |Delta| - w coefficient
        h[2 * j, 2 * j + 3] = c
        h[2 * j + 3, 2 * j] = -c
    return h


def anderson_h_plus(pot: PotentialRealization) -> np.ndarray:
    """N x N tridiagonal matrix whose eigenvalues are lambda_j^2 - 1.

    Diagonal mu_j^2 (the last entry shifted to mu_N^2 - 1), off-diagonal
    entries (j, j+1) = mu_{j+1}; equal to (T + S)(T^T + S) - 1 with T the
    upper shift and S = diag(mu).
    """
    mus = np.asarray(pot.mus, dtype=float)
    n = mus.shape[0]
    h = np.zeros((n, n))
    np.fill_diagonal(h, mus**2)
    h[n - 1, n - 1] -= 1.0
    j = np.arange(n - 1)
    h[j, j + 1] = mus[1:]
    h[j + 1, j] = mus[1:]
    return h


def anderson_h_plus_bands(pot: PotentialRealization) -> np.ndarray:
    """Banded (2, N) storage of :func:`anderson_h_plus` for scipy's
    ``eig_banded``-style solvers: row 0 the superdiagonal, row 1 the diagonal."""
    mus = np.asarray(pot.mus, dtype=float)
    n = mus.shape[0]
    bands = np.zeros((2, n))
    bands[1] = mus**2
    bands[1, n - 1] -= 1.0
    bands[0, 1:] = mus[1:]
    return bands


def anderson_h_s(pot: PotentialRealization) -> np.ndarray:
    """Symmetric 2N x 2N tridiagonal matrix with eigenvalues +/- lambda_j.

    Off-diagonal pattern (1-based): (2j-1, 2j) = mu_j, (2j, 2j+1) = -1 -- an
    off-diagonal-disorder hopping problem equivalent to the antisymmetric
    generator up to a diagonal phase similarity.
    """
    mus = np.asarray(pot.mus, dtype=float)
    n = mus.shape[0]
    h = np.zeros((2 * n, 2 * n))
    idx = np.arange(n)
    h[2 * idx, 2 * idx + 1] = mus
    h[2 * idx + 1, 2 * idx] = mus
    j = np.arange(n - 1)
    h[2 * j + 1, 2 * j + 2] = -1.0
    h[2 * j + 2, 2 * j + 1] = -1.0
    return h
