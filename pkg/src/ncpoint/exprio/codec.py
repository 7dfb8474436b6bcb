"""Lossless JSON-compatible documents for series and check reports.

Every document carries ``"format": 1`` and a ``"kind"`` tag.  Rationals are
stored as canonical ``"p"`` or ``"p/q"`` strings, never as floats.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from ..core import INF, Context, Series, Symbol, Word
from ..errors import DecodeError
from ..report import CheckReport, Failure

FORMAT_VERSION = 1

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?\Z")


def encode_rational(c: Fraction) -> str:
    return str(c)


def decode_rational(text: Any) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise DecodeError(f"not a rational string: {text!r}")
    value = Fraction(text)
    if str(value) != text:
        raise DecodeError(f"non-canonical rational {text!r} (expected {value})")
    return value


def encode_context(ctx: Context) -> list[dict[str, str]]:
    return [{"name": s.name, "kind": s.kind} for s in ctx]


def decode_context(doc: Any) -> Context:
    if not isinstance(doc, list):
        raise DecodeError("context must be a list of symbols")
    symbols = []
    for entry in doc:
        if not isinstance(entry, dict) or set(entry) != {"name", "kind"}:
            raise DecodeError(f"malformed symbol entry {entry!r}")
        try:
            symbols.append(Symbol(entry["name"], entry["kind"]))
        except (TypeError, ValueError) as exc:
            raise DecodeError(str(exc)) from None
    try:
        return Context(symbols)
    except ValueError as exc:
        raise DecodeError(str(exc)) from None


def encode_series(f: Series) -> dict[str, Any]:
    return {
        "format": FORMAT_VERSION,
        "kind": "series",
        "context": encode_context(f.context),
        "valid_order": "inf" if f.valid_order == INF else f.valid_order,
        "terms": [{"word": list(w.names), "coeff": encode_rational(c)} for w, c in f.sorted_terms()],
    }


def _check_header(doc: Any, kind: str) -> None:
    if not isinstance(doc, dict):
        raise DecodeError("document must be an object")
    if doc.get("format") != FORMAT_VERSION:
        raise DecodeError(f"unsupported format {doc.get('format')!r}")
    if doc.get("kind", kind) != kind:
        raise DecodeError(f"expected a {kind} document, got {doc.get('kind')!r}")


def decode_series(doc: Any) -> Series:
    _check_header(doc, "series")
    for key in ("context", "valid_order", "terms"):
        if key not in doc:
            raise DecodeError(f"missing field {key!r}")
    ctx = decode_context(doc["context"])
    vo = doc["valid_order"]
    if vo == "inf":
        vo = INF
    elif isinstance(vo, bool) or not isinstance(vo, int) or vo < -1:
        raise DecodeError(f"bad valid_order {vo!r}")
    if not isinstance(doc["terms"], list):
        raise DecodeError("terms must be a list")
    terms: dict[Word, Fraction] = {}
    for record in doc["terms"]:
        if not isinstance(record, dict) or set(record) != {"word", "coeff"}:
            raise DecodeError(f"malformed term {record!r}")
        names = record["word"]
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise DecodeError(f"word must be a list of names: {names!r}")
        letters = []
        for n in names:
            sym = ctx.get(n)
            if sym is None:
                raise DecodeError(f"unknown symbol {n!r}")
            letters.append(sym)
        w = Word(letters)
        if w in terms:
            raise DecodeError(f"duplicate word {names!r}")
        if w.degree > vo:
            raise DecodeError(f"word {names!r} lies beyond the valid order")
        c = decode_rational(record["coeff"])
        if not c:
            raise DecodeError(f"zero coefficient stored for {names!r}")
        terms[w] = c
    return Series(ctx, terms, vo)


def encode_report(report: CheckReport) -> dict[str, Any]:
    return {
        "format": FORMAT_VERSION,
        "kind": "report",
        "check_name": report.check_name,
        "trials": report.trials,
        "verdict": report.verdict,
        "failures": [
            {"inputs": f.inputs, "word": f.word, "expected": f.expected, "actual": f.actual}
            for f in report.failures
        ],
        "elapsed": report.elapsed,
    }


def decode_report(doc: Any) -> CheckReport:
    _check_header(doc, "report")
    try:
        failures = [
            Failure(str(f["inputs"]), str(f["word"]), str(f["expected"]), str(f["actual"]))
            for f in doc["failures"]
        ]
        report = CheckReport(str(doc["check_name"]), int(doc["trials"]), failures, float(doc["elapsed"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DecodeError(f"malformed report: {exc}") from None
    for f in failures:
        decode_rational(f.expected)
        decode_rational(f.actual)
    if "verdict" in doc and doc["verdict"] != report.verdict:
        raise DecodeError("verdict disagrees with the failure list")
    return report


def encode_reports(reports: list[CheckReport]) -> dict[str, Any]:
    return {
        "format": FORMAT_VERSION,
        "kind": "reports",
        "reports": [encode_report(r) for r in reports],
    }


def decode_reports(doc: Any) -> list[CheckReport]:
    _check_header(doc, "reports")
    if not isinstance(doc.get("reports"), list):
        raise DecodeError("reports must be a list")
    return [decode_report(r) for r in doc["reports"]]


def decode_document(doc: Any):
    """Dispatch on the ``kind`` tag."""
    if not isinstance(doc, dict):
        raise DecodeError("document must be an object")
    decoders = {"series": decode_series, "report": decode_report, "reports": decode_reports}
    try:
        decoder = decoders[doc.get("kind")]
    except KeyError:
        raise DecodeError(f"unknown document kind {doc.get('kind')!r}") from None
    return decoder(doc)


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def loads(text: str):
    try:
        return decode_document(json.loads(text))
    except json.JSONDecodeError as exc:
        raise DecodeError(f"invalid JSON: {exc}") from None
