"""Dense Hilbert-space reference implementation (small N).

Everything here works on explicit 2^N x 2^N matrices through the
Jordan-Wigner representation

    c_{2j-1} = Z_1 ... Z_{j-1} X_j,      c_{2j} = Z_1 ... Z_{j-1} Y_j,

so it shares nothing with the covariance-matrix machinery it is used to
cross-check: states are dense vectors, the Hamiltonian is built as an
explicit quadratic Majorana polynomial, projectors act by exact eigenspace
masking, and corrections are applied as explicit operator products.
"""

from __future__ import annotations

import numpy as np

from .chain import PotentialRealization, one_particle_hamiltonian
from .decoder import decode

__all__ = [
    "ORACLE_MAX_SITES",
    "build_majoranas",
    "parity_diagonal",
    "dense_hamiltonian",
    "sector_ground_state",
    "DenseEvolver",
    "oracle_covariance",
    "oracle_wick",
    "oracle_fidelity",
    "oracle_syndrome_distribution",
    "oracle_magnetization",
]

ORACLE_MAX_SITES = 10

_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def _check_size(n_sites: int):
    if not 1 <= n_sites <= ORACLE_MAX_SITES:
        raise ValueError(
            f"dense oracle supports 1 <= N <= {ORACLE_MAX_SITES}, got {n_sites}"
        )


def _kron_chain(factors) -> np.ndarray:
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def build_majoranas(n_sites: int) -> list[np.ndarray]:
    """The 2N Jordan-Wigner Majorana operators as dense matrices.

    Site 1 is the leftmost (most significant) qubit.  For N=1 this returns
    [X, Y].  The operators are Hermitian and satisfy {c_p, c_q} = 2 delta_pq.
    """
    _check_size(n_sites)
    ops = []
    for j in range(1, n_sites + 1):
        prefix = [_Z] * (j - 1)
        suffix = [_I2] * (n_sites - j)
        ops.append(_kron_chain(prefix + [_X] + suffix))
        ops.append(_kron_chain(prefix + [_Y] + suffix))
    return ops


def parity_diagonal(n_sites: int) -> np.ndarray:
    """Diagonal of the total parity operator prod_j (-i) c_{2j-1} c_{2j}.

    Equals prod_j Z_j: entry +1 on computational basis states with an even
    number of occupied sites (parity sector sigma = 0), -1 otherwise.
    """
    bits = np.arange(2**n_sites)
    pop = np.zeros(2**n_sites, dtype=np.int64)
    for j in range(n_sites):
        pop += (bits >> j) & 1
    return np.where(pop % 2 == 0, 1.0, -1.0)


def dense_hamiltonian(h_one_particle: np.ndarray,
                      majoranas: list[np.ndarray]) -> np.ndarray:
    """The quadratic Majorana Hamiltonian (i/4) sum_pq H_pq c_p c_q, dense."""
    dim = majoranas[0].shape[0]
    ham = np.zeros((dim, dim), dtype=complex)
    iu, ju = np.nonzero(np.triu(h_one_particle, 1))
    for p, q in zip(iu, ju):
        ham += (0.5j * h_one_particle[p, q]) * (majoranas[p] @ majoranas[q])
    return ham


def sector_ground_state(ham: np.ndarray, sigma: int, n_sites: int) -> np.ndarray:
    """Lowest eigenvector of ``ham`` within the parity sector sigma."""
    want = 1.0 if sigma == 0 else -1.0
    idx = np.flatnonzero(parity_diagonal(n_sites) == want)
    block = ham[np.ix_(idx, idx)]
    _, vecs = np.linalg.eigh(block)
    out = np.zeros(ham.shape[0], dtype=complex)
    out[idx] = vecs[:, 0]
    return out


class DenseEvolver:
    """Applies exp(+i H t) to vectors, caching the eigendecomposition."""

    def __init__(self, ham: np.ndarray):
        herm = float(np.max(np.abs(ham - ham.conj().T)))
        if herm > 1e-10 * max(1.0, float(np.max(np.abs(ham)))):
            raise ValueError(f"Hamiltonian is not Hermitian (defect {herm:.3e})")
        self.evals, self.evecs = np.linalg.eigh(ham)

    def __call__(self, vec: np.ndarray, t: float) -> np.ndarray:
        phases = np.exp(1j * self.evals * t)
        return self.evecs @ (phases * (self.evecs.conj().T @ vec))


def oracle_covariance(vec: np.ndarray, majoranas: list[np.ndarray]) -> np.ndarray:
    """Covariance M_pq = (-i/2) <psi| [c_p, c_q] |psi> of a pure state."""
    applied = np.stack([c @ vec for c in majoranas])
    gram = applied.conj() @ applied.T  # <c_p psi | c_q psi> = <psi|c_p c_q|psi>
    m = -0.5j * (gram - gram.T)
    if float(np.max(np.abs(m.imag))) > 1e-10:
        raise RuntimeError("covariance of a normalized pure state must be real")
    return m.real


def oracle_wick(vec: np.ndarray, majoranas: list[np.ndarray],
                forms: np.ndarray) -> complex:
    """<psi| L_1 ... L_2m |psi> with L_j = sum_p forms[j, p] c_p, by brute force."""
    out = vec
    for row in forms[::-1]:
        op_applied = np.zeros_like(vec)
        for coeff, c in zip(row, majoranas):
            if coeff != 0.0:
                op_applied += coeff * (c @ out)
        out = op_applied
    return complex(vec.conj() @ out)


def _hadamard_all(vec: np.ndarray, n_sites: int) -> np.ndarray:
    """Transform amplitudes to the all-X product basis."""
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    out = vec.reshape((2,) * n_sites)
    for axis in range(n_sites):
        out = np.tensordot(h, out, axes=([1], [axis]))
        out = np.moveaxis(out, 0, axis)
    return out.reshape(-1)


def _syndrome_table(n_sites: int) -> np.ndarray:
    """Syndrome integer (bit j-1 = s_j) of each all-X basis state.

    In the X basis the bond stabilizers are diagonal with eigenvalue bit
    s_j = x_j xor x_{j+1}, where x_j is the X-basis bit of site j (site 1 is
    the most significant bit of the basis index).
    """
    x = np.arange(2**n_sites)
    syn = np.zeros(2**n_sites, dtype=np.int64)
    for j in range(1, n_sites):  # bond between sites j and j+1
        bj = (x >> (n_sites - j)) & 1
        bj1 = (x >> (n_sites - j - 1)) & 1
        syn |= (bj ^ bj1) << (j - 1)
    return syn


def _syndrome_bits(s_int: int, n_sites: int) -> np.ndarray:
    return np.array([(s_int >> (j - 1)) & 1 for j in range(1, n_sites)],
                    dtype=np.uint8)


def syndrome_projector(n_sites: int, syndrome) -> np.ndarray:
    """Explicit projector Q_s = prod_j (1 + (-1)^{s_j} S_j) / 2, dense.

    Exponentially expensive; used in tests to validate the masking shortcut
    taken by :func:`oracle_fidelity`.
    """
    majos = build_majoranas(n_sites)
    dim = majos[0].shape[0]
    q = np.eye(dim, dtype=complex)
    s = np.asarray(syndrome, dtype=np.uint8)
    for j in range(1, n_sites):
        stab = -1j * (majos[2 * j - 1] @ majos[2 * j])
        sign = 1.0 if s[j - 1] == 0 else -1.0
        q = q @ (np.eye(dim, dtype=complex) + sign * stab) / 2.0
    return q


def oracle_fidelity(pot: PotentialRealization, t: float,
                    alpha0: complex = 1 / np.sqrt(2),
                    alpha1: complex = 1 / np.sqrt(2),
                    w_minus_absdelta: float = 0.0,
                    details: bool = False):
    """Recovery fidelity by explicit Hilbert-space simulation.

    Evolves both unperturbed sector ground states under the full Hamiltonian,
    projects on every syndrome eigenspace, applies the decoder's explicit
    correction product, and sums |alpha_0 A_0(s) + alpha_1 A_1(s)|^2 over all
    2^(N-1) syndromes.

    Returns the fidelity, or ``(fidelity, per_syndrome)`` when ``details``:
    ``per_syndrome`` maps the syndrome bit tuple to
    ``(A_0, A_1, pi_0, pi_1)``.
    """
    n = pot.n_sites
    _check_size(n)
    majos = build_majoranas(n)
    ham = dense_hamiltonian(one_particle_hamiltonian(pot, w_minus_absdelta), majos)
    clean = PotentialRealization(np.zeros(n))
    ham0 = dense_hamiltonian(one_particle_hamiltonian(clean), majos)
    ground = [sector_ground_state(ham0, s, n) for s in (0, 1)]
    evolver = DenseEvolver(ham)
    evolved_x = [_hadamard_all(evolver(g, t), n) for g in ground]

    syn_of_x = _syndrome_table(n)
    errors = [-1j * (majos[2 * j] @ majos[2 * j + 1]) for j in range(n)]

    fid = 0.0
    per_syndrome = {}
    for s_int in range(2 ** (n - 1)):
        bits = _syndrome_bits(s_int, n)
        mask = syn_of_x == s_int
        corr = decode(bits, n)
        amps = []
        probs = []
        for sigma in (0, 1):
            bra = ground[sigma]
            for site in corr.sites:  # C(s)^dagger |g>; C is Hermitian here
                bra = errors[site - 1] @ bra
            bra_x = _hadamard_all(bra, n)
            amp = complex(np.sum(bra_x.conj()[mask] * evolved_x[sigma][mask]))
            amps.append(amp)
            probs.append(float(np.sum(np.abs(evolved_x[sigma][mask]) ** 2)))
        fid += abs(alpha0 * amps[0] + alpha1 * amps[1]) ** 2
        if details:
            per_syndrome[tuple(int(b) for b in bits)] = (
                amps[0], amps[1], probs[0], probs[1]
            )
    if details:
        return fid, per_syndrome
    return fid


def oracle_syndrome_distribution(pot: PotentialRealization, t: float, sigma: int,
                                 w_minus_absdelta: float = 0.0) -> dict:
    """pi_sigma(s) for every syndrome, via exact eigenspace projections."""
    n = pot.n_sites
    _check_size(n)
    majos = build_majoranas(n)
    ham = dense_hamiltonian(one_particle_hamiltonian(pot, w_minus_absdelta), majos)
    clean = PotentialRealization(np.zeros(n))
    ham0 = dense_hamiltonian(one_particle_hamiltonian(clean), majos)
    g = sector_ground_state(ham0, sigma, n)
    psi_x = _hadamard_all(DenseEvolver(ham)(g, t), n)
    syn_of_x = _syndrome_table(n)
    weights = np.abs(psi_x) ** 2
    out = {}
    for s_int in range(2 ** (n - 1)):
        bits = _syndrome_bits(s_int, n)
        out[tuple(int(b) for b in bits)] = float(np.sum(weights[syn_of_x == s_int]))
    return out


def oracle_magnetization(mus: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Mean transverse-basis magnetization of the equivalent spin chain.

    The chain maps to the Ising Hamiltonian
    -(1/2) sum X_j X_{j+1} + (1/2) sum mu_j Z_j; the all-plus product state
    (the mu=0 ground state) is evolved and m(t) = (1/N) sum_j <X_j> recorded
    for each requested time.
    """
    mus = np.asarray(mus, dtype=float)
    n = mus.shape[0]
    _check_size(n)
    dim = 2**n
    ham = np.zeros((dim, dim), dtype=complex)
    for j in range(1, n):
        factors = [_I2] * n
        factors[j - 1] = _X
        factors[j] = _X
        ham -= 0.5 * _kron_chain(factors)
    for j in range(1, n + 1):
        factors = [_I2] * n
        factors[j - 1] = _Z
        ham += 0.5 * mus[j - 1] * _kron_chain(factors)
    plus = np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)
    evolver = DenseEvolver(ham)
    xops = []
    for j in range(1, n + 1):
        factors = [_I2] * n
        factors[j - 1] = _X
        xops.append(_kron_chain(factors))
    out = np.empty(len(times))
    for k, t in enumerate(np.asarray(times, dtype=float)):
        psi = evolver(plus, t)
        out[k] = float(np.mean([np.real(psi.conj() @ (x @ psi)) for x in xops]))
    return out
