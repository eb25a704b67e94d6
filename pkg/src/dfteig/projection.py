"""Projections of delta trains onto the four DFT eigenvalue classes.

The unitary DFT D satisfies D**4 = I, so its eigenvalues are fourth roots
of unity and averaging its powers against the characters i**(j*k) gives
projectors onto the eigenspaces:

    P_k = (1/4) * sum_{j=0..3} i**(j*k) * D**j,   eigenvalue i**(-k).

Each power of D applied to a delta train is again a train in label form,
so the projection of a train is a four-term symbolic sum that costs O(1)
to produce; densification happens only when a vector is actually needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_TOL, TolerancePolicy, as_vector, naive_dft
from .trains import ModulatedDeltaTrain, densify, dft_train

__all__ = [
    "EIGENVALUES",
    "eigenvalue_of",
    "TrainSum",
    "project",
    "densify_sum",
    "support_bound",
    "merged_term_coefficients",
    "is_symbolically_zero",
    "verify_eigenvector",
]

# i**(-k) for k = 0..3
EIGENVALUES = (1 + 0j, -1j, -1 + 0j, 1j)


def eigenvalue_of(k: int) -> complex:
    """The eigenvalue i**(-k) attached to class k."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"eigenvalue class must be in 0..3, got {k!r}")
    return EIGENVALUES[k]


@dataclass(frozen=True)
class TrainSum:
    """Weighted sum of at most four delta trains (the symbolic projector image)."""

    n: int
    terms: tuple[tuple[complex, ModulatedDeltaTrain], ...]

    def __post_init__(self):
        if len(self.terms) > 4:
            raise ValueError("a train sum carries at most four terms")
        for _, train in self.terms:
            if train.n != self.n:
                raise ValueError("all terms must share the ambient dimension")
        object.__setattr__(
            self, "terms", tuple((complex(c), t) for c, t in self.terms)
        )


def project(k: int, g: ModulatedDeltaTrain) -> TrainSum:
    """Symbolic image of g under the class-k projector: four labelled terms."""
    eigenvalue_of(k)
    terms = []
    t = g
    for j in range(4):
        terms.append((0.25 * 1j ** (j * k), t))
        t = dft_train(t)
    return TrainSum(n=g.n, terms=tuple(terms))


def densify_sum(s: TrainSum) -> np.ndarray:
    """Entrywise sum of coefficient times densified train."""
    out = np.zeros(s.n, dtype=np.complex128)
    for coeff, train in s.terms:
        out += coeff * densify(train)
    return out


def support_bound(s: TrainSum) -> int:
    """Sum of the term supports: an upper bound on the dense support size.

    For a projected stride-eta1 train this equals 2*(eta1 + eta2).
    """
    return sum(train.d2 for _, train in s.terms)


def merged_term_coefficients(s: TrainSum) -> dict[tuple[int, int, int], complex]:
    """Net coefficient per distinct (d1, a, b) label, phases folded in.

    Terms sharing a label are collinear by construction, so the merge is
    exact; labels with a near-zero net coefficient contribute nothing.
    """
    merged: dict[tuple[int, int, int], complex] = {}
    for coeff, train in s.terms:
        key = (train.d1, train.a, train.b)
        merged[key] = merged.get(key, 0j) + coeff * train.phase
    return merged


def is_symbolically_zero(s: TrainSum, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Fast zero pre-check: every merged label coefficient vanishes.

    Only a shortcut; the densified norm stays authoritative for sums whose
    labels do not cancel pairwise.
    """
    return all(abs(c) <= tol.zero_tol for c in merged_term_coefficients(s).values())


def verify_eigenvector(v, k: int, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Relative residual ||D v - i**(-k) v|| / ||v|| under the reference DFT."""
    arr = as_vector(v)
    norm = float(np.linalg.norm(arr))
    if norm <= tol.zero_tol:
        raise ValueError("cannot classify a numerically zero vector")
    lam = eigenvalue_of(k)
    return float(np.linalg.norm(naive_dft(arr) - lam * arr)) / norm
