"""Report documents: lossless JSON and flattened CSV.

Rationals are written as ``{"exact": "p/q", "approx": "..."}``. Only
``exact`` is authoritative; ``approx`` is a 15-significant-digit decimal for
human reading and is ignored when parsing.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Context
from fractions import Fraction

from . import __version__
from .certify import RunManifest
from .grz import FAIL, PASS, CertReport
from .unipoly import RootInterval

SCHEMA_VERSION = "1"
_APPROX = Context(prec=15)


def encode_rational(x) -> dict:
    x = Fraction(x)
    approx = _APPROX.divide(x.numerator, x.denominator)
    return {"exact": f"{x.numerator}/{x.denominator}", "approx": f"{approx:.14E}"}


def decode_rational(obj: dict) -> Fraction:
    return Fraction(obj["exact"])


def encode_interval(iv: RootInterval) -> dict:
    return {"lo": encode_rational(iv.lo), "hi": encode_rational(iv.hi), "exact": iv.exact,
            "multiplicity": iv.multiplicity}


def decode_interval(obj: dict) -> RootInterval:
    return RootInterval(decode_rational(obj["lo"]), decode_rational(obj["hi"]), obj["exact"],
                        obj["multiplicity"])


def encode_value(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return encode_rational(v)
    if isinstance(v, RootInterval):
        return {"root_interval": encode_interval(v)}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode_value(v):
    if isinstance(v, list):
        return [decode_value(x) for x in v]
    if isinstance(v, dict):
        if set(v) == {"exact", "approx"}:
            return decode_rational(v)
        if set(v) == {"root_interval"}:
            return decode_interval(v["root_interval"])
        return {k: decode_value(x) for k, x in v.items()}
    return v


def encode_witness(w):
    if w is None:
        return None
    if isinstance(w, tuple):
        return {"kind": "exponent", "value": list(w)}
    if isinstance(w, list):
        return {"kind": "roots", "value": [encode_interval(iv) for iv in w]}
    return {"kind": "rational", "value": encode_rational(w)}


def decode_witness(obj):
    if obj is None:
        return None
    kind = obj["kind"]
    if kind == "exponent":
        return tuple(obj["value"])
    if kind == "roots":
        return [decode_interval(x) for x in obj["value"]]
    return decode_rational(obj["value"])


def report_to_dict(rep: CertReport) -> dict:
    return {
        "check": rep.check_name,
        "params": encode_value(rep.params),
        "status": rep.status,
        "witness": encode_witness(rep.witness),
        "value": None if rep.value is None else encode_rational(rep.value),
        "notes": rep.notes,
    }


def report_from_dict(obj: dict) -> CertReport:
    return CertReport(obj["check"], decode_value(obj["params"]), obj["status"],
                      decode_witness(obj["witness"]),
                      None if obj["value"] is None else decode_rational(obj["value"]), obj["notes"])


def manifest_to_dict(m: RunManifest) -> dict:
    return {
        "suite": m.suite,
        "grid": encode_value(m.grid),
        "caps": encode_value(m.caps),
        "expectation": m.expectation,
        "status": m.status,
        "violations": m.violations,
        "reports": [report_to_dict(rep) for rep in m.reports],
    }


def manifest_from_dict(obj: dict) -> RunManifest:
    return RunManifest(obj["suite"], decode_value(obj["grid"]), decode_value(obj["caps"]),
                       [report_from_dict(x) for x in obj["reports"]], obj["expectation"])


@dataclass
class ReportDocument:
    command: dict
    manifests: list[RunManifest] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__

    @property
    def status(self) -> str:
        return FAIL if any(m.status == FAIL for m in self.manifests) else PASS

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "command": encode_value(self.command),
            "status": self.status,
            "manifests": [manifest_to_dict(m) for m in self.manifests],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ReportDocument":
        return cls(decode_value(obj["command"]), [manifest_from_dict(m) for m in obj["manifests"]],
                   obj["schema_version"], obj["tool_version"])


def dumps(doc: ReportDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> ReportDocument:
    return ReportDocument.from_dict(json.loads(text))


CSV_COLUMNS = ("record", "suite", "check", "status", "params", "witness", "value", "notes")


def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def to_csv(doc: ReportDocument) -> str:
    """One row per manifest followed by one row per check."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerow(("document", "", "", doc.status, _compact(encode_value(doc.command)), "", "",
                     f"schema {doc.schema_version}; tool {doc.tool_version}"))
    for m in doc.manifests:
        md = manifest_to_dict(m)
        writer.writerow(("manifest", m.suite, "", md["status"],
                         _compact({"grid": md["grid"], "caps": md["caps"]}), "", "",
                         f"expectation {m.expectation}; violations {md['violations']}"))
        for rd in md["reports"]:
            value = rd["value"]["exact"] if rd["value"] else ""
            writer.writerow(("check", m.suite, rd["check"], rd["status"], _compact(rd["params"]),
                             _compact(rd["witness"]), value, rd["notes"]))
    return buf.getvalue()
