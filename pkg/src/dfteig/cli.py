"""Command-line interface: build, verify, analyze, survey, bench.

Exit codes: 0 every requested check passed, 1 a certified claim failed,
2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from .basis import (
    audit_sparsity,
    build_basis,
    check_uncertainty,
    enumerate_candidates,
    gram_report,
    multiplicities,
)
from .fast import analyze, synthesize, to_coefficients
from .fileio import (
    export_basis,
    import_basis,
    read_vector,
    write_bench_csv,
    write_survey_csv,
    write_vector,
)
from .numerics import (
    DEFAULT_TOL,
    EliminationState,
    TolerancePolicy,
    VerificationError,
    try_extend_rank,
)
from .projection import densify_sum, verify_eigenvector

SPORADIC_ORTHOGONAL = {2, 3, 8}


def _tolerance(args) -> TolerancePolicy:
    value = getattr(args, "tol", None)
    if value is None:
        return DEFAULT_TOL
    return TolerancePolicy(zero_tol=value, residual_tol=value)


def _expected_orthogonal(n: int) -> bool:
    return math.isqrt(n) ** 2 == n or n in SPORADIC_ORTHOGONAL


def cmd_build(args) -> int:
    if args.n < 1:
        print("build: --n must be a positive integer", file=sys.stderr)
        return 2
    basis = build_basis(args.n, _tolerance(args))
    export_basis(
        basis,
        args.out,
        fmt=args.format,
        normalized=not args.no_normalize,
        tol=_tolerance(args),
    )
    print(
        f"wrote {args.out}: n={basis.n} eta=({basis.eta.eta1},{basis.eta.eta2}) "
        f"vectors={len(basis.vectors)} per-class={basis.per_class_counts}"
    )
    return 0


def _verify_checks(basis, tol):
    """Yield (name, passed, detail) for every certified claim."""
    n = basis.n
    dims = multiplicities(n).dims
    yield (
        "multiplicity-counts",
        basis.per_class_counts == dims,
        f"{basis.per_class_counts} vs table {dims}",
    )

    residuals = [verify_eigenvector(rec.dense, rec.k, tol) for rec in basis.vectors]
    worst = max(residuals)
    yield (
        "eigenvector-residuals",
        worst <= tol.residual_tol,
        f"max {worst:.3e}",
    )

    state = EliminationState(n)
    for rec in basis.vectors:
        try_extend_rank(state, rec.dense, tol)
    yield "independent-rank", state.rank == n, f"rank {state.rank} of {n}"

    try:
        audit = audit_sparsity(basis, tol)
        yield (
            "sparsity-bounds",
            True,
            f"supports in [{audit.min_support}, {audit.max_support}] within "
            f"[{audit.lower_bound:g}, {audit.upper_bound}], ratio {audit.ratio:.2f}",
        )
    except VerificationError as exc:
        yield "sparsity-bounds", False, str(exc)

    failing = [
        rec.label for rec in basis.vectors if not check_uncertainty(rec.dense, tol)
    ]
    yield (
        "uncertainty-bounds",
        not failing,
        "all vectors" if not failing else f"violated at {failing[:3]}",
    )

    gram = basis.gram_matrix()
    ks = np.array([rec.k for rec in basis.vectors])
    cross = np.abs(gram[ks[:, None] != ks[None, :]])
    cross_max = float(cross.max()) if cross.size else 0.0
    yield (
        "cross-class-orthogonality",
        cross_max <= tol.residual_tol,
        f"max {cross_max:.3e}",
    )

    report = gram_report(basis, tol)
    expected = _expected_orthogonal(n)
    if report.is_orthogonal:
        ok = expected
        detail = f"orthogonal (max offdiag {report.max_offdiag:.3e})"
    else:
        ok = (not expected) and report.witness is not None
        if report.witness:
            w1, w2, val = report.witness
            detail = (
                f"non-orthogonal, witness <{w1}, {w2}> = "
                f"{val.real:.6f}{val.imag:+.6f}i"
            )
        else:
            detail = "non-orthogonal but no witness found"
    yield "gram-classification", ok, detail


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    if args.input:
        basis = import_basis(args.input)
    else:
        if args.n is None or args.n < 1:
            print("verify: provide --n N or --input FILE", file=sys.stderr)
            return 2
        basis = build_basis(args.n, tol)
    print(f"verifying n={basis.n} (eta1={basis.eta.eta1}, eta2={basis.eta.eta2})")
    all_ok = True
    for name, ok, detail in _verify_checks(basis, tol):
        all_ok &= ok
        print(f"  {name:<28}{'PASS' if ok else 'FAIL'}  {detail}")
    print("result: " + ("all checks passed" if all_ok else "CLAIM VIOLATION"))
    return 0 if all_ok else 1


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    v = read_vector(args.input)
    if v.size != args.n:
        print(
            f"analyze: vector has {v.size} entries, expected n={args.n}",
            file=sys.stderr,
        )
        return 2
    basis = build_basis(args.n, tol)
    coeff = to_coefficients(v, basis, tol)
    write_vector(args.out, coeff)
    norm = float(np.linalg.norm(v))
    residual = float(np.linalg.norm(synthesize(coeff, basis) - v))
    relative = residual / norm if norm > 0 else residual
    print(f"wrote {args.out}: {basis.n} coefficients, round-trip residual {relative:.3e}")
    return 0 if relative <= tol.residual_tol else 1


def cmd_survey(args) -> int:
    if args.max_n < 2:
        print("survey: --max-n must be at least 2", file=sys.stderr)
        return 2
    tol = _tolerance(args)
    rows = []
    orthogonal = []
    for n in range(2, args.max_n + 1):
        basis = build_basis(n, tol)
        audit = audit_sparsity(basis, tol)
        report = gram_report(basis, tol)
        rows.append((n, basis.eta, audit, report))
        if report.is_orthogonal:
            orthogonal.append(n)
        if not report.is_orthogonal and report.witness is None:
            print(f"survey: n={n} non-orthogonal without witness", file=sys.stderr)
            return 1
    if args.out:
        write_survey_csv(args.out, rows)
        print(f"wrote {args.out} ({len(rows)} rows)")
    print("orthogonal n:", " ".join(str(n) for n in orthogonal))
    return 0


def _bench_one(n: int, repeats: int = 5):
    rng = np.random.default_rng(20240 + n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)

    analyze(v)  # warm the recipe and twiddle caches
    t_analyze = min(
        _timed(lambda: analyze(v)) for _ in range(repeats)
    )
    fast_flat = analyze(v).values.reshape(-1)

    t0 = time.perf_counter()
    naive = np.array(
        [np.vdot(densify_sum(cand), v) for _, _, _, cand in enumerate_candidates(n)]
    )
    t_naive = time.perf_counter() - t0

    # dense change of basis: one matrix block per class, matvec timed alone
    t_setup = 0.0
    t_matvec = 0.0
    dense_parts = []
    per_class = n
    cands = list(enumerate_candidates(n))
    for k in range(4):
        t0 = time.perf_counter()
        block = np.stack(
            [densify_sum(cand) for kk, _, _, cand in cands[k * per_class : (k + 1) * per_class]]
        ).conj()
        t_setup += time.perf_counter() - t0
        t0 = time.perf_counter()
        dense_parts.append(block @ v)
        t_matvec += time.perf_counter() - t0
        del block
    dense_flat = np.concatenate(dense_parts)

    disagreement = max(
        float(np.abs(fast_flat - naive).max()),
        float(np.abs(fast_flat - dense_flat).max()),
    )
    return (n, 4 * n, t_analyze, t_naive, t_matvec, t_setup, disagreement)


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def cmd_bench(args) -> int:
    if any(n < 2 for n in args.n):
        print("bench: every n must be at least 2", file=sys.stderr)
        return 2
    rows = []
    ok = True
    for n in args.n:
        row = _bench_one(n)
        rows.append(row)
        _, _, t_fast, t_naive, t_dense, t_setup, disagreement = row
        agree = disagreement <= 1e-9
        ok &= agree
        print(
            f"n={n}: analyze={t_fast:.6f}s naive_loop={t_naive:.6f}s "
            f"dense_matvec={t_dense:.6f}s (setup {t_setup:.3f}s) "
            f"max_disagreement={disagreement:.2e} "
            f"fast_beats_dense={t_fast < t_dense}"
        )
    if args.out:
        write_bench_csv(args.out, rows)
        print(f"wrote {args.out}")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfteig",
        description=(
            "Sparse eigenvector bases of the discrete Fourier transform: "
            "build, certify, and change basis."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a basis and export it")
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument(
        "--no-normalize",
        action="store_true",
        help="export raw (unnormalized) dense entries",
    )
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run every certified check on a basis")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--input", default=None, help="verify an exported basis file")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="expand a vector in the basis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", required=True, help="vector file (index,re,im lines)")
    p.add_argument("--out", required=True, help="coefficient output path")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("survey", help="orthogonality classification over 2..max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", default=None, help="CSV report path")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("bench", help="time the fast path against the slow ones")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--out", default=None, help="CSV timing path")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"claim violation: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
