"""Canonical JSON files for embeddings, certificates and sample specs.

Every writer goes through :func:`dumps`, which sorts keys and ends with a
newline, so equal objects always produce byte-identical files.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import IOFailure, NotUnitaryError
from .gaussian import GaussianRational
from .polynomial import Polynomial, is_unitary
from .rational import RestrictedRational
from .sampling import SampleSpec
from .sphere import RationalEmbedding
from .tangency import GraphEmbedding, TangencyCertificate

__all__ = [
    "dumps",
    "write_json",
    "read_json",
    "embedding_to_record",
    "embedding_from_record",
    "write_embedding",
    "read_embedding",
    "write_certificate",
    "read_spec",
    "parse_unitary",
    "read_unitary",
]


def dumps(record) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def write_json(record, path) -> None:
    try:
        Path(path).write_text(dumps(record))
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IOFailure(f"{path} is not valid JSON: {exc}") from exc


def embedding_to_record(e: GraphEmbedding) -> dict:
    if isinstance(e, RationalEmbedding):
        record = e.to_record()
    else:
        record = {
            "kind": "polynomial",
            "n": e.n,
            "rho": e.rho.to_record(),
            "components": [c.to_record() for c in e.components],
        }
    record["surface"] = e.surface
    record["components_text"] = [str(c) for c in e.components]
    return record


def embedding_from_record(record: dict) -> GraphEmbedding:
    try:
        kind = record["kind"]
        n = int(record["n"])
        rho = Polynomial.from_record(record["rho"])
        surface = record.get("surface", "heisenberg")
        if kind == "polynomial":
            comps = [Polynomial.from_record(c) for c in record["components"]]
            return GraphEmbedding(n, rho, comps, surface)
        if kind == "rational":
            comps = [RestrictedRational.from_record(c) for c in record["components"]]
            g = Polynomial.from_record(record["g"]) if record.get("g") else None
            return RationalEmbedding(
                n, rho, comps, surface, {}, record["r"], record["l"], record["clearing_exponent"], g
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise IOFailure(f"malformed embedding record: {exc}") from exc
    raise IOFailure(f"unknown embedding kind {kind!r}")


def write_embedding(e: GraphEmbedding, path) -> None:
    write_json(embedding_to_record(e), path)


def read_embedding(path) -> GraphEmbedding:
    return embedding_from_record(read_json(path))


def write_certificate(cert: TangencyCertificate, path) -> None:
    write_json(cert.to_record(), path)


def read_spec(path) -> SampleSpec:
    record = read_json(path)
    try:
        return SampleSpec.from_record(record)
    except (KeyError, TypeError) as exc:
        raise IOFailure(f"malformed sample spec: {exc}") from exc


def parse_unitary(text: str, n: int) -> list[list[GaussianRational]]:
    """2n^2 rational tokens, row-major, each entry as its real then imaginary part."""
    tokens = [t for t in re.split(r"[\s,]+", text) if t]
    if len(tokens) != 2 * n * n:
        raise IOFailure(f"expected {2 * n * n} entries for a {n}x{n} matrix, found {len(tokens)}")
    try:
        values = [Fraction(t) for t in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise IOFailure(f"bad rational entry: {exc}") from exc
    entries = [GaussianRational(values[2 * k], values[2 * k + 1]) for k in range(n * n)]
    U = [entries[row * n : (row + 1) * n] for row in range(n)]
    if not is_unitary(U):
        raise NotUnitaryError("matrix is not exactly unitary")
    return U


def read_unitary(path, n: int) -> list[list[GaussianRational]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    return parse_unitary(text, n)
