"""Minimum-weight decoding of the chain's stabilizer syndrome.

A syndrome s in {0,1}^(N-1) determines the error support T only up to
complement: the two solutions of |T intersect {j, j+1}| = s_j (mod 2) are
T0 = {j : s_1 xor ... xor s_{j-1} = 1} and its complement.  The decoder
returns the smaller one (ties go to the set containing site 1, which is also
the lexicographically smaller site list).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Correction", "decode", "correction_operator_forms"]


@dataclass(frozen=True)
class Correction:
    """A correction supported on ``sites`` (1-based, ascending)."""

    sites: tuple[int, ...]
    n_sites: int

    def __post_init__(self):
        if list(self.sites) != sorted(set(self.sites)):
            raise ValueError("correction sites must be ascending and unique")
        if self.sites and not (1 <= self.sites[0] and self.sites[-1] <= self.n_sites):
            raise ValueError("correction sites out of range")
        if 2 * len(self.sites) > self.n_sites + 1:
            raise ValueError("correction heavier than ceil(N/2)")

    @property
    def weight(self) -> int:
        return len(self.sites)


def decode(syndrome, n_sites: int) -> Correction:
    """Minimum-weight error support consistent with the syndrome.

    Parameters
    ----------
    syndrome : sequence of N-1 bits
        s_j is the measured eigenvalue bit of the j-th bond stabilizer.
    n_sites : int
        Number of fermionic sites N.

    Notes
    -----
    Runs in O(N): the candidate support is read off the prefix parities of
    the syndrome, and the only other solution is its complement.
    """
    s = np.asarray(syndrome, dtype=np.uint8)
    if s.shape != (n_sites - 1,):
        raise ValueError(f"expected {n_sites - 1} syndrome bits, got {s.shape}")
    prefix = np.zeros(n_sites, dtype=np.int64)
    np.cumsum(s, dtype=np.int64, out=prefix[1:])
    prefix &= 1
    inside = np.flatnonzero(prefix == 1) + 1  # sites with odd prefix parity
    if 2 * inside.size < n_sites:
        sites = inside
    elif 2 * inside.size > n_sites:
        sites = np.flatnonzero(prefix == 0) + 1
    else:
        # tie: site 1 always has even prefix parity, so the complement set
        # contains it and is the lexicographically smaller list
        sites = np.flatnonzero(prefix == 0) + 1
    return Correction(sites=tuple(int(j) for j in sites), n_sites=n_sites)


def correction_operator_forms(c: Correction) -> np.ndarray:
    """Linear forms of the correction operator as a Majorana monomial.

    The correction is a product over its sites (ascending) of elementary
    errors (-i) c_{2j-1} c_{2j}; the returned (2q, 2N) complex array holds
    one row per factor: rows 2m, 2m+1 are (-i) e_{2j-1} and e_{2j}
    respectively (0-based rows, 1-based site j).
    """
    forms = np.zeros((2 * c.weight, 2 * c.n_sites), dtype=complex)
    for m, site in enumerate(c.sites):
        forms[2 * m, 2 * site - 2] = -1j
        forms[2 * m + 1, 2 * site - 1] = 1.0
    return forms
