"""Text and structured input/output for series and reports."""

from .codec import (
    decode_document,
    decode_report,
    decode_reports,
    decode_series,
    dumps,
    encode_report,
    encode_reports,
    encode_series,
    loads,
)
from .parser import parse_program, parse_series, tokenize
from .printer import format_program, format_word, print_series

__all__ = [
    "decode_document",
    "decode_report",
    "decode_reports",
    "decode_series",
    "dumps",
    "encode_report",
    "encode_reports",
    "encode_series",
    "loads",
    "parse_program",
    "parse_series",
    "tokenize",
    "format_program",
    "format_word",
    "print_series",
]
