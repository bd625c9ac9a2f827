"""Report documents: exact rationals as "m/n" strings, classes in factored form."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .arith import parse_class
from .descent.report import DescentReport

SCHEMA_VERSION = "1"


def q(x) -> str:
    return str(Fraction(x))


def _group(g) -> dict:
    return {
        "modulus": g.modulus,
        "size": g.size,
        "generators": [str(c) for c in g.generators],
        "elements": [str(c) for c in g.elements],
    }


def to_document(report: DescentReport, echo: dict, extra: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {k: (q(v) if isinstance(v, Fraction) else v) for k, v in echo.items()},
        "report": {
            "t": q(report.t),
            "sigma": {"primes": list(report.sigma.primes), "infinity": True},
            "torsion": dict(sorted(report.torsion.items())),
            "selmer": {name: _group(g) for name, g in sorted(report.selmer.items())},
            "size_relation": {
                "computed": report.size_relation[0],
                "predicted": report.size_relation[1],
                "holds": report.size_relation_holds,
            },
            "points": [
                {
                    "d": q(p.d),
                    "z": q(p.z),
                    "w": q(p.w),
                    "source": p.source,
                    "image": {"curve": p.image.label, "x": q(p.image.x), "y": q(p.image.y)},
                }
                for p in report.points
            ],
            "rank_bounds": {"lower": report.rank_lower, "upper": report.rank_upper},
            "unresolved": {
                "label": report.unresolved_label,
                "height": report.height,
                "count": len(report.unresolved),
                "classes": [str(c) for c in report.unresolved],
            },
            "notes": list(report.notes),
        },
    }
    if extra:
        doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def decode(doc: dict) -> dict:
    """Parse a document back into exact values (Fractions and KummerClasses)."""
    rep = doc["report"]
    return {
        "t": Fraction(rep["t"]),
        "sigma": tuple(rep["sigma"]["primes"]),
        "selmer": {
            name: {
                "modulus": g["modulus"],
                "elements": [parse_class(e, g["modulus"]) for e in g["elements"]],
                "generators": [parse_class(e, g["modulus"]) for e in g["generators"]],
            }
            for name, g in rep["selmer"].items()
        },
        "points": [
            {k: Fraction(p[k]) for k in ("d", "z", "w")}
            | {"image": (Fraction(p["image"]["x"]), Fraction(p["image"]["y"]))}
            for p in rep["points"]
        ],
        "rank_bounds": (rep["rank_bounds"]["lower"], rep["rank_bounds"]["upper"]),
        "unresolved": [parse_class(c, 4) for c in rep["unresolved"]["classes"]],
    }


def to_csv(doc: dict) -> str:
    rep = doc["report"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "key", "value"])
    w.writerow(["input", "t", rep["t"]])
    w.writerow(["sigma", "primes", " ".join(map(str, rep["sigma"]["primes"]))])
    for label, shape in rep["torsion"].items():
        w.writerow(["torsion", label, shape])
    for name, g in rep["selmer"].items():
        w.writerow(["selmer_size", name, g["size"]])
        w.writerow(["selmer_generators", name, " ".join(g["generators"])])
    w.writerow(["size_relation", "computed", rep["size_relation"]["computed"]])
    w.writerow(["size_relation", "predicted", rep["size_relation"]["predicted"]])
    for p in rep["points"]:
        w.writerow(["point", p["d"], f"{p['z']} {p['w']} {p['source']}"])
    w.writerow(["rank_bounds", "lower", rep["rank_bounds"]["lower"]])
    w.writerow(["rank_bounds", "upper", rep["rank_bounds"]["upper"]])
    w.writerow(["unresolved", rep["unresolved"]["label"], rep["unresolved"]["count"]])
    return buf.getvalue()


def to_text(doc: dict) -> str:
    rep = doc["report"]
    lines = [
        f"t = {rep['t']}",
        "Sigma = {" + ", ".join(map(str, rep["sigma"]["primes"])) + ", inf}",
        "torsion: " + ", ".join(f"{k} {v}" for k, v in rep["torsion"].items()),
    ]
    for name, g in rep["selmer"].items():
        lines.append(f"S^({name}): size {g['size']}, generators <{', '.join(g['generators'])}>")
    sr = rep["size_relation"]
    lines.append(f"#S^(phi_hat) computed {sr['computed']}, predicted {sr['predicted']}")
    for p in rep["points"]:
        lines.append(f"point on C'_{p['d']}: (z, w) = ({p['z']}, {p['w']}) [{p['source']}]")
    rb = rep["rank_bounds"]
    lines.append(f"rank bounds: {rb['lower']} <= R <= {rb['upper']}")
    un = rep["unresolved"]
    lines.append(f"{un['count']} classes {un['label']}")
    lines += [f"note: {n}" for n in rep["notes"]]
    return "\n".join(lines) + "\n"
