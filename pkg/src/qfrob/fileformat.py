"""Canonical text serialization for connection data.

A connection document is JSON with fields name, rank, convention, matrices,
degrees, dim_c, betti, and optionally gamma_decomposition.  The convention
is "q-ddq" for q d/dq + A(q) (powers >= 0) or "ddq" for d/dq + M(q)
(powers >= -1); a "ddq" document is converted on ingestion by multiplying
by q, i.e. shifting every power up by one.  Serialization always emits the
"q-ddq" form with sorted keys, sorted powers, and lowest-terms fractions,
so serialize(parse(serialize(c))) is byte-identical to serialize(c).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .connection import Connection
from .errors import ValidationError
from .gammasym import GammaPoly

_CONVENTIONS = ("q-ddq", "ddq")


def _frac_str(x) -> str:
    if isinstance(x, GammaPoly):
        raise ValidationError("matrix entries must be rational, not symbolic")
    return str(Fraction(x))


def _parse_frac(s, where: str) -> Fraction:
    if not isinstance(s, str):
        raise ValidationError(f"{where}: rational values must be strings, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{where}: not a rational number: {s!r}") from exc


def _poly_terms(poly: GammaPoly) -> list:
    out = []
    for mono, coeff in poly.sorted_terms():
        out.append(
            {
                "coeff": str(coeff),
                "exponents": {str(order): exp for order, exp in mono},
            }
        )
    return out


def _terms_poly(items, where: str) -> GammaPoly:
    if not isinstance(items, list) or not items:
        raise ValidationError(f"{where}: poly must be a non-empty list of terms")
    terms = {}
    for t_i, term in enumerate(items):
        coeff = _parse_frac(term.get("coeff"), f"{where} term {t_i}")
        exps = term.get("exponents")
        if not isinstance(exps, dict):
            raise ValidationError(f"{where} term {t_i}: exponents must be a map")
        mono = []
        for key, e in exps.items():
            try:
                order = int(key)
            except (TypeError, ValueError):
                raise ValidationError(f"{where} term {t_i}: bad derivative order {key!r}")
            if order < 1 or order % 2 == 0:
                raise ValidationError(
                    f"{where} term {t_i}: derivative orders must be odd, got {order}"
                )
            if not isinstance(e, int) or e < 1:
                raise ValidationError(
                    f"{where} term {t_i}: exponents must be positive integers"
                )
            mono.append((order, e))
        key = tuple(sorted(mono))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return GammaPoly({k: v for k, v in terms.items() if v})


def connection_to_document(conn: Connection) -> dict:
    r = conn.rank
    matrices = []
    for power, a in enumerate(conn.coeffs):
        entries = [a[i][j] for i in range(r) for j in range(r)]
        if not any(entries):
            continue
        matrices.append(
            {"power": power, "entries": [_frac_str(x) for x in entries]}
        )
    doc = {
        "name": conn.name,
        "rank": r,
        "convention": "q-ddq",
        "matrices": matrices,
        "degrees": list(conn.degrees),
        "dim_c": conn.dim_c,
        "betti": [[d, c] for d, c in conn.betti],
    }
    if conn.decomposition:
        doc["gamma_decomposition"] = [
            {
                "poly": _poly_terms(poly),
                "matrix": [_frac_str(b[i][j]) for i in range(r) for j in range(r)],
            }
            for poly, b in conn.decomposition
        ]
    return doc


def serialize_connection(conn: Connection) -> str:
    return json.dumps(connection_to_document(conn), indent=2, sort_keys=True) + "\n"


def _require(doc: dict, field: str, kind, where: str = "document"):
    if field not in doc:
        raise ValidationError(f"{where}: missing field {field!r}")
    v = doc[field]
    if kind is not None and not isinstance(v, kind):
        raise ValidationError(f"{where}: field {field!r} has the wrong type")
    return v


def document_to_connection(doc) -> Connection:
    if not isinstance(doc, dict):
        raise ValidationError("document: top level must be an object")
    name = _require(doc, "name", str)
    rank = _require(doc, "rank", int)
    if isinstance(rank, bool) or rank < 1:
        raise ValidationError("document: rank must be a positive integer")
    convention = _require(doc, "convention", str)
    if convention not in _CONVENTIONS:
        raise ValidationError(
            f"document: convention must be one of {_CONVENTIONS}, got {convention!r}"
        )
    shift = 1 if convention == "ddq" else 0
    min_power = -1 if convention == "ddq" else 0
    raw_matrices = _require(doc, "matrices", list)
    seen = set()
    by_power = {}
    for m_i, entry in enumerate(raw_matrices):
        if not isinstance(entry, dict):
            raise ValidationError(f"matrices[{m_i}]: must be an object")
        power = _require(entry, "power", int, f"matrices[{m_i}]")
        if isinstance(power, bool) or power < min_power:
            raise ValidationError(
                f"matrices[{m_i}]: power {power} not allowed under {convention!r}"
            )
        if power in seen:
            raise ValidationError(f"matrices[{m_i}]: duplicate power {power}")
        seen.add(power)
        entries = _require(entry, "entries", list, f"matrices[{m_i}]")
        if len(entries) != rank * rank:
            raise ValidationError(
                f"matrices[{m_i}]: expected {rank * rank} entries, got {len(entries)}"
            )
        vals = [_parse_frac(s, f"matrices[{m_i}]") for s in entries]
        by_power[power + shift] = tuple(
            tuple(vals[i * rank + j] for j in range(rank)) for i in range(rank)
        )
    top = max(by_power, default=0)
    zero = tuple(tuple(Fraction(0) for _ in range(rank)) for _ in range(rank))
    coeffs = tuple(by_power.get(m, zero) for m in range(top + 1))
    degrees = _require(doc, "degrees", list)
    if len(degrees) != rank or not all(
        isinstance(d, int) and not isinstance(d, bool) for d in degrees
    ):
        raise ValidationError("document: degrees must be a list of rank integers")
    dim_c = _require(doc, "dim_c", int)
    if isinstance(dim_c, bool) or dim_c < 0:
        raise ValidationError("document: dim_c must be a nonnegative integer")
    raw_betti = _require(doc, "betti", list)
    betti = []
    for b_i, pair in enumerate(raw_betti):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise ValidationError(f"betti[{b_i}]: must be a [degree, count] pair")
        betti.append((pair[0], pair[1]))
    decomposition = []
    for d_i, item in enumerate(doc.get("gamma_decomposition", [])):
        if not isinstance(item, dict):
            raise ValidationError(f"gamma_decomposition[{d_i}]: must be an object")
        poly = _terms_poly(item.get("poly"), f"gamma_decomposition[{d_i}]")
        entries = _require(item, "matrix", list, f"gamma_decomposition[{d_i}]")
        if len(entries) != rank * rank:
            raise ValidationError(
                f"gamma_decomposition[{d_i}]: expected {rank * rank} matrix entries"
            )
        vals = [_parse_frac(s, f"gamma_decomposition[{d_i}]") for s in entries]
        b = tuple(tuple(vals[i * rank + j] for j in range(rank)) for i in range(rank))
        decomposition.append((poly, b))
    conn = Connection(
        name=name,
        rank=rank,
        coeffs=coeffs,
        degrees=tuple(degrees),
        dim_c=dim_c,
        betti=tuple(betti),
        decomposition=tuple(decomposition),
    )
    conn.validate()
    return conn


def parse_connection(text: str) -> Connection:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"document is not well-formed JSON: {exc}") from exc
    return document_to_connection(doc)
