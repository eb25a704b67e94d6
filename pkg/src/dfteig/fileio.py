"""Text formats: dense vectors, basis exports (JSON and CSV), report tables.

Complex values are always written as separate decimal re/im fields, never
as "a+bj" strings.  Floats are serialized with repr(), which round-trips
exactly, so re-exporting an imported basis reproduces the file bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
from typing import Optional

import numpy as np

from .basis import BasisVectorRecord, EigenBasis
from .numerics import DEFAULT_TOL, TolerancePolicy
from .projection import TrainSum
from .trains import DivisorPair, ModulatedDeltaTrain

__all__ = [
    "FORMAT_VERSION",
    "write_vector",
    "read_vector",
    "export_basis",
    "import_basis",
    "write_survey_csv",
    "write_bench_csv",
]

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# dense vectors: one `index,re,im` line per entry, indices 0..n-1 in order


def write_vector(path, v) -> None:
    arr = np.asarray(v, dtype=np.complex128)
    with open(path, "w", encoding="utf-8") as fh:
        for idx, z in enumerate(arr):
            fh.write(f"{idx},{float(z.real)!r},{float(z.imag)!r}\n")


def read_vector(path) -> np.ndarray:
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(
                    f"{path}:{lineno}: expected `index,re,im`, got {line!r}"
                )
            try:
                idx = int(parts[0])
                re_part = float(parts[1])
                im_part = float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if idx != len(entries):
                raise ValueError(
                    f"{path}:{lineno}: index {idx} out of order "
                    f"(expected {len(entries)})"
                )
            if not (math.isfinite(re_part) and math.isfinite(im_part)):
                raise ValueError(f"{path}:{lineno}: non-finite entry")
            entries.append(complex(re_part, im_part))
    if not entries:
        raise ValueError(f"{path}: empty vector file")
    return np.array(entries, dtype=np.complex128)


# ---------------------------------------------------------------------------
# basis exports


def _vector_payload(rec: BasisVectorRecord, normalized: bool, zero_tol: float):
    dense = rec.dense if normalized else rec.scale * rec.dense
    entries = [
        [int(idx), float(dense[idx].real), float(dense[idx].imag)]
        for idx in np.flatnonzero(np.abs(dense) > zero_tol)
    ]
    terms = [
        {
            "n": train.n,
            "d1": train.d1,
            "a": train.a,
            "b": train.b,
            "coeff_re": float(coeff.real),
            "coeff_im": float(coeff.imag),
            "phase_re": float(train.phase.real),
            "phase_im": float(train.phase.imag),
        }
        for coeff, train in rec.sum.terms
    ]
    return {
        "k": rec.k,
        "a": rec.a,
        "b": rec.b,
        "scale": float(rec.scale),
        "terms": terms,
        "entries": entries,
    }


def export_basis(
    basis: EigenBasis,
    path,
    fmt: str = "json",
    normalized: bool = True,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> None:
    """Write a basis with its labels, symbolic terms, and sparse entries.

    `normalized=False` stores the raw (scale times unit) dense entries
    instead; the importer renormalizes either way.
    """
    payload = {
        "format_version": FORMAT_VERSION,
        "n": basis.n,
        "eta1": basis.eta.eta1,
        "eta2": basis.eta.eta2,
        "vectors": [
            _vector_payload(rec, normalized, tol.zero_tol) for rec in basis.vectors
        ],
    }
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["meta", FORMAT_VERSION, basis.n, basis.eta.eta1, basis.eta.eta2]
            )
            for vec in payload["vectors"]:
                writer.writerow(
                    ["vector", vec["k"], vec["a"], vec["b"], repr(vec["scale"])]
                )
                for t in vec["terms"]:
                    writer.writerow(
                        [
                            "term",
                            t["n"],
                            t["d1"],
                            t["a"],
                            t["b"],
                            repr(t["coeff_re"]),
                            repr(t["coeff_im"]),
                            repr(t["phase_re"]),
                            repr(t["phase_im"]),
                        ]
                    )
                for idx, re_part, im_part in vec["entries"]:
                    writer.writerow(["entry", idx, repr(re_part), repr(im_part)])
    else:
        raise ValueError(f"unknown format {fmt!r} (expected 'json' or 'csv')")


def _records_from_payload(payload, path) -> EigenBasis:
    try:
        n = int(payload["n"])
        eta = DivisorPair(n=n, eta1=int(payload["eta1"]), eta2=int(payload["eta2"]))
        raw_vectors = payload["vectors"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: missing field {exc}") from None
    if eta.eta1 * eta.eta2 != n:
        raise ValueError(f"{path}: eta1*eta2 != n")
    records = []
    counts = [0, 0, 0, 0]
    for vec in raw_vectors:
        terms = tuple(
            (
                complex(t["coeff_re"], t["coeff_im"]),
                ModulatedDeltaTrain(
                    n=int(t["n"]),
                    d1=int(t["d1"]),
                    a=int(t["a"]),
                    b=int(t["b"]),
                    phase=complex(t["phase_re"], t["phase_im"]),
                ),
            )
            for t in vec["terms"]
        )
        dense = np.zeros(n, dtype=np.complex128)
        for idx, re_part, im_part in vec["entries"]:
            if not 0 <= int(idx) < n:
                raise ValueError(f"{path}: entry index {idx} out of range")
            dense[int(idx)] = complex(re_part, im_part)
        norm = float(np.linalg.norm(dense))
        if norm <= 0.0:
            raise ValueError(f"{path}: vector with empty entries")
        if abs(norm - 1.0) > 1e-6:  # raw export: undo the stored scale
            dense = dense / norm
        k = int(vec["k"])
        if not 0 <= k <= 3:
            raise ValueError(f"{path}: eigenvalue class {k} out of range")
        records.append(
            BasisVectorRecord(
                k=k,
                a=int(vec["a"]),
                b=int(vec["b"]),
                sum=TrainSum(n=n, terms=terms),
                dense=dense,
                support=int(np.count_nonzero(np.abs(dense) > DEFAULT_TOL.zero_tol)),
                scale=float(vec["scale"]),
            )
        )
        counts[k] += 1
    return EigenBasis(
        n=n, eta=eta, vectors=records, per_class_counts=tuple(counts)
    )


def _import_basis_csv(path) -> EigenBasis:
    payload = {"vectors": []}
    current = None
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            kind = row[0]
            try:
                if kind == "meta":
                    payload["format_version"] = int(row[1])
                    payload["n"] = int(row[2])
                    payload["eta1"] = int(row[3])
                    payload["eta2"] = int(row[4])
                elif kind == "vector":
                    current = {
                        "k": int(row[1]),
                        "a": int(row[2]),
                        "b": int(row[3]),
                        "scale": float(row[4]),
                        "terms": [],
                        "entries": [],
                    }
                    payload["vectors"].append(current)
                elif kind == "term":
                    current["terms"].append(
                        {
                            "n": int(row[1]),
                            "d1": int(row[2]),
                            "a": int(row[3]),
                            "b": int(row[4]),
                            "coeff_re": float(row[5]),
                            "coeff_im": float(row[6]),
                            "phase_re": float(row[7]),
                            "phase_im": float(row[8]),
                        }
                    )
                elif kind == "entry":
                    current["entries"].append(
                        [int(row[1]), float(row[2]), float(row[3])]
                    )
                else:
                    raise ValueError(f"unknown row type {kind!r}")
            except (IndexError, ValueError, TypeError, AttributeError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if "n" not in payload:
        raise ValueError(f"{path}: missing meta row")
    return _records_from_payload(payload, path)


def import_basis(path) -> EigenBasis:
    """Read a basis export back; the format is sniffed from the content."""
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.read(1)
    if head == "{":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(
                    f"{path}:{exc.lineno}: invalid JSON: {exc.msg}"
                ) from None
        return _records_from_payload(payload, path)
    return _import_basis_csv(path)


# ---------------------------------------------------------------------------
# report tables


def _format_label(label: Optional[tuple]) -> str:
    if label is None:
        return ""
    k, a, b = label
    return f"{k}:{a}:{b}"


def write_survey_csv(path, rows) -> None:
    """Rows of (n, eta, audit, report) from an orthogonality survey."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "n",
                "eta1",
                "eta2",
                "max_support",
                "lower_bound",
                "is_orthogonal",
                "witness_1",
                "witness_2",
                "witness_re",
                "witness_im",
            ]
        )
        for n, eta, audit, report in rows:
            witness = report.witness
            writer.writerow(
                [
                    n,
                    eta.eta1,
                    eta.eta2,
                    audit.max_support,
                    repr(audit.lower_bound),
                    int(report.is_orthogonal),
                    _format_label(witness[0] if witness else None),
                    _format_label(witness[1] if witness else None),
                    repr(witness[2].real) if witness else "",
                    repr(witness[2].imag) if witness else "",
                ]
            )


def write_bench_csv(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "n",
                "candidates",
                "analyze_s",
                "naive_loop_s",
                "dense_matvec_s",
                "dense_setup_s",
                "max_disagreement",
            ]
        )
        for row in rows:
            writer.writerow(row)
