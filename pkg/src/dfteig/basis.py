"""Greedy construction of the sparse eigenvector basis, plus its audits.

The 4n projected trains P_k g_{eta1}(a, b) contain n linearly independent
eigenvectors.  Scanning them in a fixed order (class, then offset, then
modulation) and keeping every candidate that extends the rank of its class
yields a deterministic basis whose supports sit between (eta1+eta2)/2 and
2*(eta1+eta2).  The audits certify those bounds, the eigenvalue
multiplicities, the support/spectrum uncertainty constraints, and the
orthogonality classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    EliminationState,
    TolerancePolicy,
    VerificationError,
    as_vector,
    naive_dft,
    try_extend_rank,
)
from .projection import (
    TrainSum,
    densify_sum,
    is_symbolically_zero,
    project,
)
from .trains import DivisorPair, ModulatedDeltaTrain, eta_pair

__all__ = [
    "MultiplicityTable",
    "multiplicities",
    "enumerate_candidates",
    "BasisVectorRecord",
    "EigenBasis",
    "build_basis",
    "SparsityAudit",
    "audit_sparsity",
    "check_uncertainty",
    "GramReport",
    "gram_report",
    "orthogonality_survey",
]


@dataclass(frozen=True)
class MultiplicityTable:
    """Eigenvalue multiplicities of the n-dimensional DFT, indexed by class k.

    dims[k] is the dimension of the eigenspace with eigenvalue i**(-k);
    the four entries always sum to n and depend only on n mod 4.
    """

    n: int
    dims: tuple[int, int, int, int]

    def by_eigenvalue(self, lam: complex) -> int:
        mapping = {(1 + 0j): 0, (-1j): 1, (-1 + 0j): 2, (1j): 3}
        if lam not in mapping:
            raise ValueError(f"{lam!r} is not a fourth root of unity")
        return self.dims[mapping[lam]]


def multiplicities(n: int) -> MultiplicityTable:
    """Closed-form eigenspace dimensions as a function of n mod 4."""
    if n < 1:
        raise ValueError("n must be positive")
    m, r = divmod(n, 4)
    dims = {
        0: (m + 1, m, m, m - 1),
        1: (m + 1, m, m, m),
        2: (m + 1, m, m + 1, m),
        3: (m + 1, m + 1, m + 1, m),
    }[r]
    return MultiplicityTable(n=n, dims=dims)


def enumerate_candidates(
    n: int,
) -> Iterator[tuple[int, int, int, TrainSum]]:
    """All 4n projected stride-eta1 trains in scan order: k, then a, then b."""
    eta = eta_pair(n)
    for k in range(4):
        for a in range(eta.eta1):
            for b in range(eta.eta2):
                g = ModulatedDeltaTrain(n=n, d1=eta.eta1, a=a, b=b)
                yield k, a, b, project(k, g)


@dataclass(eq=False)
class BasisVectorRecord:
    """One selected eigenvector.

    `dense` is unit-normalized; `scale` is the norm of the raw projected
    sum, so scale * dense reproduces densify_sum(sum).
    """

    k: int
    a: int
    b: int
    sum: TrainSum
    dense: np.ndarray
    support: int
    scale: float

    @property
    def label(self) -> tuple[int, int, int]:
        return (self.k, self.a, self.b)


@dataclass(eq=False)
class EigenBasis:
    """n selected eigenvectors grouped by class, with lazy derived caches."""

    n: int
    eta: DivisorPair
    vectors: list[BasisVectorRecord]
    per_class_counts: tuple[int, int, int, int]
    zero_candidates: int = 0
    _matrix: Optional[np.ndarray] = field(default=None, repr=False)
    _gram: Optional[np.ndarray] = field(default=None, repr=False)
    _reports: dict = field(default_factory=dict, repr=False)
    _solver: Optional[np.ndarray] = field(default=None, repr=False)

    def labels(self) -> list[tuple[int, int, int]]:
        return [rec.label for rec in self.vectors]

    def scales(self) -> np.ndarray:
        return np.array([rec.scale for rec in self.vectors], dtype=np.float64)

    def dense_matrix(self) -> np.ndarray:
        """Selected vectors stacked as rows, in label order."""
        if self._matrix is None:
            self._matrix = np.stack([rec.dense for rec in self.vectors])
        return self._matrix

    def gram_matrix(self) -> np.ndarray:
        """All pairwise inner products <v_i, v_j> of the unit vectors."""
        if self._gram is None:
            mat = self.dense_matrix()
            self._gram = mat @ mat.conj().T
        return self._gram


def build_basis(n: int, tol: TolerancePolicy = DEFAULT_TOL) -> EigenBasis:
    """Deterministic greedy selection of n independent projected trains.

    Scans candidates in enumeration order, drops the ones whose projection
    vanished, keeps each candidate that extends the rank of its class, and
    stops a class once it reaches its known multiplicity.  Raises if any
    class falls short, which would indicate a bug rather than bad input.
    """
    eta = eta_pair(n)
    dims = multiplicities(n).dims
    states = [EliminationState(n) for _ in range(4)]
    counts = [0, 0, 0, 0]
    vectors: list[BasisVectorRecord] = []
    zero_candidates = 0
    for k, a, b, cand in enumerate_candidates(n):
        if counts[k] >= dims[k]:
            continue
        if is_symbolically_zero(cand, tol):
            zero_candidates += 1
            continue
        dense = densify_sum(cand)
        scale = float(np.linalg.norm(dense))
        if scale <= tol.residual_tol:
            zero_candidates += 1
            continue
        accepted, _ = try_extend_rank(states[k], dense, tol)
        if not accepted:
            continue
        unit = dense / scale
        support = int(np.count_nonzero(np.abs(unit) > tol.zero_tol))
        vectors.append(
            BasisVectorRecord(
                k=k, a=a, b=b, sum=cand, dense=unit, support=support, scale=scale
            )
        )
        counts[k] += 1
    for k in range(4):
        if counts[k] != dims[k]:
            raise RuntimeError(
                f"n={n}: eigenvalue class {k} reached rank {counts[k]} of "
                f"{dims[k]}; the projected trains failed to span the class, "
                "which indicates an implementation bug"
            )
    return EigenBasis(
        n=n,
        eta=eta,
        vectors=vectors,
        per_class_counts=tuple(counts),
        zero_candidates=zero_candidates,
    )


@dataclass(frozen=True)
class SparsityAudit:
    """Certified support statistics of a basis.

    `ratio` compares the largest support against the proven lower bound
    (eta1+eta2)/2, the literal content of the factor-four guarantee.
    """

    n: int
    max_support: int
    min_support: int
    lower_bound: float
    upper_bound: int
    ratio: float


def audit_sparsity(basis: EigenBasis, tol: TolerancePolicy = DEFAULT_TOL) -> SparsityAudit:
    """Exact nonzero counts checked against the divisor bounds.

    Raises VerificationError naming the offending vector if any support
    leaves [(eta1+eta2)/2, 2*(eta1+eta2)] or the max/lower ratio exceeds 4.
    """
    lower = (basis.eta.eta1 + basis.eta.eta2) / 2
    upper = 2 * (basis.eta.eta1 + basis.eta.eta2)
    for rec in basis.vectors:
        if rec.support < lower - tol.zero_tol or rec.support > upper:
            raise VerificationError(
                f"vector (k={rec.k}, a={rec.a}, b={rec.b}) has support "
                f"{rec.support}, outside [{lower}, {upper}]"
            )
    supports = [rec.support for rec in basis.vectors]
    audit = SparsityAudit(
        n=basis.n,
        max_support=max(supports),
        min_support=min(supports),
        lower_bound=lower,
        upper_bound=upper,
        ratio=max(supports) / lower,
    )
    if audit.ratio > 4.0 + tol.zero_tol:
        raise VerificationError(
            f"n={basis.n}: max support {audit.max_support} exceeds four times "
            f"the lower bound {lower}"
        )
    return audit


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def _uncertainty_ok(n: int, s: int, sp: int) -> bool:
    """Integer form of the support-size constraints.

    s * sp >= n always, and whenever consecutive divisors d1 < d2 of n
    bracket s, additionally sp * d1 * d2 >= n * (d1 + d2 - s).
    """
    if s * sp < n:
        return False
    divs = _divisors(n)
    for d1, d2 in zip(divs, divs[1:]):
        if d1 <= s <= d2 and sp * d1 * d2 < n * (d1 + d2 - s):
            return False
    return True


def check_uncertainty(v, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Do v and its spectrum satisfy the support-size constraints?

    Counts supports at zero_tol on the unit-normalized vector and its
    reference transform, then applies the product bound and the
    consecutive-divisor bound.
    """
    arr = as_vector(v)
    norm = float(np.linalg.norm(arr))
    if norm <= tol.zero_tol:
        raise ValueError("zero vector has no support bound")
    unit = arr / norm
    s = int(np.count_nonzero(np.abs(unit) > tol.zero_tol))
    sp = int(np.count_nonzero(np.abs(naive_dft(unit)) > tol.zero_tol))
    return _uncertainty_ok(arr.size, s, sp)


@dataclass(frozen=True)
class GramReport:
    """Orthogonality certificate for one basis.

    When the basis is not orthogonal, `witness` names a pair of selected
    vectors that is neither orthogonal nor collinear, with its inner
    product.
    """

    n: int
    is_orthogonal: bool
    max_offdiag: float
    witness: Optional[tuple[tuple[int, int, int], tuple[int, int, int], complex]]


def gram_report(basis: EigenBasis, tol: TolerancePolicy = DEFAULT_TOL) -> GramReport:
    """Compute all pairwise inner products and classify the basis."""
    key = (tol.zero_tol, tol.residual_tol)
    cached = basis._reports.get(key)
    if cached is not None:
        return cached
    gram = basis.gram_matrix()
    off = np.abs(gram - np.eye(basis.n))
    max_off = float(off.max())
    if max_off <= tol.residual_tol:
        report = GramReport(
            n=basis.n, is_orthogonal=True, max_offdiag=max_off, witness=None
        )
    else:
        iu, ju = np.triu_indices(basis.n, k=1)
        vals = np.abs(gram[iu, ju])
        usable = (vals > tol.residual_tol) & (vals < 1.0 - tol.residual_tol)
        witness = None
        if np.any(usable):
            pos = int(np.argmax(np.where(usable, vals, -1.0)))
            i, j = int(iu[pos]), int(ju[pos])
            labels = basis.labels()
            witness = (labels[i], labels[j], complex(gram[i, j]))
        report = GramReport(
            n=basis.n, is_orthogonal=False, max_offdiag=max_off, witness=witness
        )
    basis._reports[key] = report
    return report


def orthogonality_survey(
    max_n: int, tol: TolerancePolicy = DEFAULT_TOL
) -> list[tuple[int, bool]]:
    """Build and Gram-classify every dimension from 2 through max_n."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    results = []
    for n in range(2, max_n + 1):
        report = gram_report(build_basis(n, tol), tol)
        results.append((n, report.is_orthogonal))
    return results
