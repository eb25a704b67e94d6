"""Subquadratic transforms: mixed-radix FFT and the fast change of basis.

Correlating a vector against every train of one stride is the same as
running short DFTs over the strided subsequences - the front part of a full
FFT, stopped before the final recombination stages.  Two such passes (one
per stride in the divisor pair) plus a linear-time phase combination yield
the correlations against all 4n projected trains in O(n log n).

The FFT here recurses on the smallest prime factor of the length and falls
back to the direct quadratic product for prime lengths; its only contract
is agreement with the quadratic reference transform.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .basis import EigenBasis, gram_report
from .numerics import DEFAULT_TOL, TolerancePolicy, as_vector, omega_power
from .trains import DivisorPair, ModulatedDeltaTrain, dft_train, eta_pair

__all__ = [
    "fft",
    "train_correlations",
    "CorrelationTensor",
    "analyze",
    "to_coefficients",
    "synthesize",
]


def _smallest_prime_factor(m: int) -> int:
    if m % 2 == 0:
        return 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return f
        f += 2
    return m


@functools.lru_cache(maxsize=None)
def _butterfly(p: int) -> np.ndarray:
    """Unscaled p-point DFT matrix, entry (j, k) = exp(-2*pi*i*j*k/p)."""
    j = np.arange(p)
    mat = np.exp((-2j * np.pi / p) * (np.outer(j, j) % p))
    mat.setflags(write=False)
    return mat


@functools.lru_cache(maxsize=None)
def _twiddles(m: int, p: int) -> np.ndarray:
    """Twiddle factors exp(-2*pi*i*r*s/m) for r < p, s < m//p."""
    t = np.exp(
        (-2j * np.pi / m) * (np.outer(np.arange(p), np.arange(m // p)) % m)
    )
    t.setflags(write=False)
    return t


def _fft_rec(x: np.ndarray) -> np.ndarray:
    """Unscaled DFT along the last axis; batched over leading axes."""
    m = x.shape[-1]
    if m == 1:
        return x.copy()
    p = _smallest_prime_factor(m)
    if p == m:
        return x @ _butterfly(m)
    q = m // p
    # index n = p*t + r: transform the p subsequences of length q, ...
    sub = _fft_rec(x.reshape(x.shape[:-1] + (q, p)).swapaxes(-1, -2))
    sub = sub * _twiddles(m, p)
    # ... then combine across r with a p-point butterfly per output column.
    out = np.einsum("ur,...rs->...us", _butterfly(p), sub)
    return out.reshape(x.shape[:-1] + (m,))


def fft(v) -> np.ndarray:
    """Unitary transform, equal to the reference DFT within residual_tol."""
    arr = as_vector(v)
    return _fft_rec(arr) / math.sqrt(arr.size)


def train_correlations(v, d1: int) -> np.ndarray:
    """<v, g_{d1}(a, b)> for all a < d1 and b < n/d1, as a (d1, n/d1) array.

    For each offset a, the d2 = n/d1 correlations over b are one short
    unitary DFT of the subsequence v[a::d1] times the phase w**(a*b), so
    the whole map costs O(n log d2) instead of the quadratic loop.
    """
    arr = as_vector(v)
    n = arr.size
    if d1 < 1 or n % d1 != 0:
        raise ValueError(f"stride {d1} does not divide n={n}")
    d2 = n // d1
    rows = arr.reshape(d2, d1).T  # rows[a, t] = v[a + t*d1]
    spectrum = _fft_rec(rows) / math.sqrt(d2)
    return spectrum * omega_power(n, np.outer(np.arange(d1), np.arange(d2)))


@dataclass(eq=False)
class CorrelationTensor:
    """Correlations of one vector against every projected train.

    values[k, a, b] = <v, P_k g_{eta1}(a, b)> for the raw (unnormalized)
    projections.
    """

    n: int
    eta: DivisorPair
    values: np.ndarray


@functools.lru_cache(maxsize=8)
def _projection_recipe(n: int):
    """Label and phase chains of the four DFT powers of each stride-eta1 train.

    For power j the image train has a fixed stride (eta1 for even j, eta2
    for odd j); the per-(a, b) offsets, modulations, and accumulated unit
    phases are tabulated once so `analyze` can gather them in bulk.
    """
    eta = eta_pair(n)
    e1, e2 = eta.eta1, eta.eta2
    offs = np.empty((4, e1, e2), dtype=np.intp)
    mods = np.empty((4, e1, e2), dtype=np.intp)
    phases = np.empty((4, e1, e2), dtype=np.complex128)
    for a in range(e1):
        for b in range(e2):
            t = ModulatedDeltaTrain(n=n, d1=e1, a=a, b=b)
            for j in range(4):
                offs[j, a, b] = t.a
                mods[j, a, b] = t.b
                phases[j, a, b] = t.phase
                t = dft_train(t)
    offs.setflags(write=False)
    mods.setflags(write=False)
    phases.setflags(write=False)
    return eta, offs, mods, phases


def analyze(v) -> CorrelationTensor:
    """Correlations against all 4n projected trains in O(n log n).

    Runs one strided-correlation pass per distinct stride in the divisor
    pair, then combines the four transform-power contributions with their
    class characters in linear time.
    """
    arr = as_vector(v)
    n = arr.size
    eta, offs, mods, phases = _projection_recipe(n)
    corr = {eta.eta1: train_correlations(arr, eta.eta1)}
    if eta.eta2 not in corr:
        corr[eta.eta2] = train_correlations(arr, eta.eta2)
    picked = []
    for j in range(4):
        stride = eta.eta1 if j % 2 == 0 else eta.eta2
        # inner products are conjugate-linear in the candidate slot
        picked.append(np.conj(phases[j]) * corr[stride][offs[j], mods[j]])
    values = np.empty((4, eta.eta1, eta.eta2), dtype=np.complex128)
    for k in range(4):
        acc = np.zeros((eta.eta1, eta.eta2), dtype=np.complex128)
        for j in range(4):
            acc += np.conj(0.25 * 1j ** (j * k)) * picked[j]
        values[k] = acc
    return CorrelationTensor(n=n, eta=eta, values=values)


def _label_indices(basis: EigenBasis):
    ks = np.array([rec.k for rec in basis.vectors], dtype=np.intp)
    aa = np.array([rec.a for rec in basis.vectors], dtype=np.intp)
    bb = np.array([rec.b for rec in basis.vectors], dtype=np.intp)
    return ks, aa, bb


def _selected_correlations(tensor: CorrelationTensor, basis: EigenBasis) -> np.ndarray:
    """<v, u_m> for the unit basis vectors, read off the correlation tensor."""
    ks, aa, bb = _label_indices(basis)
    return tensor.values[ks, aa, bb] / basis.scales()


def to_coefficients(
    v, basis: EigenBasis, tol: TolerancePolicy = DEFAULT_TOL
) -> np.ndarray:
    """Expansion coefficients of v in the basis, in label order.

    For an orthogonal basis the coefficients are the selected correlation
    entries.  Otherwise the Gram system is solved: its inverse is computed
    once and cached on the basis, and the solution is sharpened by residual
    correction through the sparse synthesis path until the reconstruction
    meets residual_tol.
    """
    arr = as_vector(v)
    if arr.size != basis.n:
        raise ValueError(f"dimension mismatch: vector {arr.size} vs basis {basis.n}")
    coeff = _selected_correlations(analyze(arr), basis)
    if gram_report(basis, tol).is_orthogonal:
        return coeff
    if basis._solver is None:
        # system matrix A[m, l] = <u_l, u_m> = gram[l, m]
        try:
            basis._solver = np.linalg.inv(basis.gram_matrix().T)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(
                f"n={basis.n}: singular Gram system; the basis is corrupted"
            ) from exc
    solver = basis._solver
    coeff = solver @ coeff
    norm = float(np.linalg.norm(arr))
    for _ in range(60):
        residual = arr - synthesize(coeff, basis)
        if float(np.linalg.norm(residual)) <= tol.residual_tol * max(norm, 1e-300):
            return coeff
        coeff = coeff + solver @ _selected_correlations(analyze(residual), basis)
    raise RuntimeError(
        f"n={basis.n}: coefficient solve failed to converge; "
        "the basis appears corrupted or numerically singular"
    )


def synthesize(coefficients, basis: EigenBasis) -> np.ndarray:
    """Sum of coefficient times basis vector, accumulated via the labels.

    Work is proportional to the total term support, O(n*(eta1+eta2)/eta1),
    rather than to a dense n-by-n product.
    """
    coeffs = np.asarray(coefficients, dtype=np.complex128)
    if coeffs.shape != (basis.n,):
        raise ValueError(
            f"expected {basis.n} coefficients, got shape {coeffs.shape}"
        )
    out = np.zeros(basis.n, dtype=np.complex128)
    for c, rec in zip(coeffs, basis.vectors):
        if c == 0:
            continue
        weight = c / rec.scale
        for term_coeff, train in rec.sum.terms:
            idx = train.support_indices()
            amp = weight * term_coeff * train.phase / math.sqrt(train.d2)
            out[idx] += amp * omega_power(train.n, -train.b * idx)
    return out
