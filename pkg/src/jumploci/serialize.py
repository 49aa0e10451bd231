"""File formats and report documents.

Complex files are structured text, one document per complex:

    ring vars=t1,t2 torus=2 abelian=0
    degrees -2..0
    ranks 1,2,1
    differential -2
    -t2 + 1
    t1 - 1
    differential -1
    t1 - 1, t2 - 1

After a ``differential i`` header come rank(i+1) lines, each holding
rank(i) comma-separated entries in the polynomial grammar (rows = target
coordinates).  Blank lines and ``#`` comments are ignored.  Loading is
strict: shapes, unknown variables and the complex identity d.d = 0 are all
checked and reported with line numbers where possible.

Loci files are JSON: ring block, optional Euler characteristic, and per
degree a list of components, each a translate (one [radial, angle] pair of
rational strings per variable) plus an integer lattice given by rows.  The
loader saturates lattices and normalizes unions; components violating an
invariant (odd abelian projection) are rejected with the reason, either
strictly (raise) or collected into a report.

Reports are plain dicts rendered to deterministic text or JSON: keys are
sorted, generators are listed in sorted canonical string form, and sampled
verdicts always carry their seed.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

from .complexes import FreeComplex, Matrix
from .errors import InputError
from .groebner import LaurentIdeal
from .lattices import LinearComponent, LinearUnion
from .laurent import LaurentPoly, RingContext, TorsionPoint, format_poly
from .loci import PropagationResult, is_whole_space
from .verdict import LociProfile, PerversityReport, SurvivalResult

COMPLEX_FORMAT = "jumploci-complex"
LOCI_FORMAT = "jumploci-loci"


# -- complex text format -------------------------------------------------------


def dump_complex(cx: FreeComplex) -> str:
    ctx = cx.context
    lines = [
        f"ring vars={','.join(ctx.var_names)} torus={ctx.torus_rank} abelian={ctx.abelian_rank}",
        f"degrees {cx.k_min}..{cx.k_max}",
        f"ranks {','.join(str(r) for r in cx.ranks)}",
    ]
    for i in range(cx.k_min, cx.k_max):
        lines.append(f"differential {i}")
        mat = cx.differential(i)
        for row in mat.entries:
            lines.append(", ".join(format_poly(e) for e in row))
    return "\n".join(lines) + "\n"


def _parse_ring_line(line: str) -> RingContext:
    fields = {}
    for chunk in line.split()[1:]:
        if "=" not in chunk:
            raise InputError(f"malformed ring field {chunk!r}")
        key, value = chunk.split("=", 1)
        fields[key] = value
    try:
        names = fields["vars"].split(",")
        torus = int(fields["torus"])
        abelian = int(fields["abelian"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"malformed ring line: {line!r}") from exc
    return RingContext(names, torus, abelian)


def _load_complex_document(text: str) -> FreeComplex:
    raw_lines = text.splitlines()
    lines = []
    for lineno, raw in enumerate(raw_lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    if not lines:
        raise InputError("empty complex document")
    pos = 0

    def take(prefix: str):
        nonlocal pos
        if pos >= len(lines):
            raise InputError(f"unexpected end of document, expected {prefix!r}")
        lineno, line = lines[pos]
        if not line.startswith(prefix):
            raise InputError(f"line {lineno}: expected {prefix!r}, got {line!r}")
        pos += 1
        return lineno, line

    _, ring_line = take("ring")
    ctx = _parse_ring_line(ring_line)
    _, deg_line = take("degrees")
    try:
        lo_text, hi_text = deg_line.split()[1].split("..")
        k_min, k_max = int(lo_text), int(hi_text)
    except (IndexError, ValueError) as exc:
        raise InputError(f"malformed degrees line: {deg_line!r}") from exc
    _, ranks_line = take("ranks")
    try:
        ranks = [int(r) for r in ranks_line.split(None, 1)[1].split(",")]
    except (IndexError, ValueError) as exc:
        raise InputError(f"malformed ranks line: {ranks_line!r}") from exc
    if len(ranks) != k_max - k_min + 1:
        raise InputError(
            f"rank count {len(ranks)} does not match degree range "
            f"{k_min}..{k_max}"
        )
    diffs = {}
    for i in range(k_min, k_max):
        lineno, header = take("differential")
        try:
            deg = int(header.split()[1])
        except (IndexError, ValueError) as exc:
            raise InputError(f"line {lineno}: malformed differential header") from exc
        if deg != i:
            raise InputError(
                f"line {lineno}: expected differential {i}, found {deg}"
            )
        nrows = ranks[i + 1 - k_min]
        ncols = ranks[i - k_min]
        rows = []
        for _ in range(nrows):
            if pos >= len(lines):
                raise InputError(f"differential {i}: missing matrix rows")
            lineno, line = lines[pos]
            pos += 1
            entries = [ctx.parse(chunk) for chunk in line.split(",")]
            if len(entries) != ncols:
                raise InputError(
                    f"line {lineno}: expected {ncols} entries, got {len(entries)}"
                )
            rows.append(entries)
        diffs[i] = Matrix(ctx, nrows, ncols, rows)
    if pos != len(lines):
        lineno, line = lines[pos]
        raise InputError(f"line {lineno}: trailing content {line!r}")
    return FreeComplex(ctx, k_min, k_max, ranks, diffs)


def load_complex_shapes(text: str) -> FreeComplex:
    """Parse a complex document checking shapes only; the caller decides how
    to report a failing d.d = 0 identity (the validate subcommand treats it
    as checked-and-failed, not as malformed input)."""
    return _load_complex_document(text)


def load_complex(text: str) -> FreeComplex:
    """Strict load: shapes plus the complex identity."""
    cx = _load_complex_document(text)
    report = cx.validate()
    if not report.ok:
        raise InputError(f"invalid complex: {report.describe()}")
    return cx


# -- loci JSON format -----------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f)


def _parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {s!r}") from exc


def dump_loci(profile: LociProfile) -> str:
    ctx = profile.context
    doc = {
        "format": LOCI_FORMAT,
        "ring": {
            "vars": list(ctx.var_names),
            "torus": ctx.torus_rank,
            "abelian": ctx.abelian_rank,
        },
        "loci": {
            str(deg): [
                {
                    "translate": [
                        [_frac_str(q), _frac_str(th)] for q, th in c.translate.coords
                    ],
                    "lattice": [list(row) for row in c.lattice],
                }
                for c in union.components
            ]
            for deg, union in sorted(profile.loci.items())
        },
    }
    if profile.euler is not None:
        doc["euler"] = profile.euler
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_loci(text: str, strict: bool = True):
    """Parse a loci document.  Returns (profile, rejected) where rejected is
    a list of {degree, reason} records for components that violate an
    invariant; with strict=True the first violation raises instead."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed loci JSON: {exc}") from exc
    if not isinstance(doc, dict) or "ring" not in doc or "loci" not in doc:
        raise InputError("loci document needs 'ring' and 'loci' blocks")
    ring = doc["ring"]
    try:
        ctx = RingContext(ring["vars"], int(ring["torus"]), int(ring["abelian"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed ring block: {ring!r}") from exc
    loci = {}
    rejected = []
    for key, comp_list in doc["loci"].items():
        try:
            degree = int(key)
        except ValueError as exc:
            raise InputError(f"malformed degree key {key!r}") from exc
        comps = []
        for k, comp in enumerate(comp_list):
            try:
                pairs = [
                    (_parse_frac(q), _parse_frac(th)) for q, th in comp["translate"]
                ]
                translate = TorsionPoint(ctx, pairs)
                lattice = [[int(x) for x in row] for row in comp.get("lattice", [])]
                comps.append(LinearComponent(ctx, translate, lattice))
            except InputError as exc:
                if strict:
                    raise InputError(
                        f"degree {degree}, component {k}: {exc}"
                    ) from exc
                rejected.append({"degree": degree, "component": k, "reason": str(exc)})
        loci[degree] = LinearUnion(ctx, comps)
    euler = doc.get("euler")
    profile = LociProfile(ctx, loci, euler=int(euler) if euler is not None else None)
    return profile, rejected


# -- report documents -------------------------------------------------------------


def _codim_str(value) -> str:
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return str(value)


def ideal_entry(degree: int, ideal: LaurentIdeal) -> dict:
    basis = ideal.groebner_basis()
    return {
        "degree": degree,
        "generators": sorted(str(g) for g in ideal.generators),
        "saturated_basis": sorted(str(g) for g in basis),
        "codimension": _codim_str(ideal.codimension()),
        "empty": bool(ideal.is_unit_ideal()),
        "whole_space": is_whole_space(ideal),
        "provenance": "exact",
    }


def jump_ideal_report(cx: FreeComplex, degrees: Sequence[int]) -> dict:
    return {
        "report": "jump-ideals",
        "degrees": [ideal_entry(d, cx.jumping_ideal(d)) for d in degrees],
    }


def exactness_report(cx: FreeComplex) -> dict:
    negs = [i for i in cx.degrees() if i < 0]
    ok, cert = cx.is_exact_range(negs) if negs else (True, [])
    dual = cx.dual()
    dual_negs = [i for i in dual.degrees() if i < 0]
    dual_ok, dual_cert = dual.is_exact_range(dual_negs) if dual_negs else (True, [])
    for row in cert:
        row["fitting_codim"] = _codim_str(row["fitting_codim"])
    for row in dual_cert:
        row["fitting_codim"] = _codim_str(row["fitting_codim"])
    return {
        "report": "exactness",
        "negative_degrees_exact": ok,
        "certificate": cert,
        "dual_negative_degrees_exact": dual_ok,
        "dual_certificate": dual_cert,
        "assumption_holds": ok and dual_ok,
    }


def propagation_entry(result: PropagationResult) -> dict:
    return {
        "ok": result.ok,
        "provenance": result.provenance,
        "first_violation": list(result.first_violation) if result.first_violation else None,
        "pairs": [
            {"from": i, "to": j, "holds": holds} for i, j, holds in result.checked_pairs
        ],
    }


def perversity_report_doc(report: PerversityReport, samples: int, seed: int) -> dict:
    def rows(rs):
        return [
            {
                "degree": r.degree,
                "condition": r.condition,
                "required": r.required,
                "actual": _codim_str(r.actual),
                "ok": r.ok,
            }
            for r in rs
        ]

    return {
        "report": "perversity",
        "verdict": report.verdict,
        "upper": rows(report.upper_rows),
        "lower": rows(report.lower_rows),
        "violations": rows(report.violations),
        "propagation": {
            "ok": report.propagation_ok,
            "first_violation": list(report.propagation_first_violation)
            if report.propagation_first_violation
            else None,
        },
        "support_interval": {
            "ok": report.support_ok,
            "offenders": report.support_offenders,
        },
        "euler": {"status": report.euler_status, "detail": report.euler_detail},
        "provenance": dict(sorted(report.provenance.items())),
        "samples": samples,
        "seed": seed,
    }


def codims_report(profile: LociProfile) -> dict:
    entries = []
    for deg in profile.degrees():
        union = profile.locus(deg)
        stats = union.codim_stats()
        entries.append(
            {
                "degree": deg,
                "components": [
                    {
                        "lattice": [list(r) for r in c.lattice],
                        "translate": [
                            [_frac_str(q), _frac_str(th)] for q, th in c.translate.coords
                        ],
                        "codim": c.codims()[0],
                        "codim_a": c.codims()[1],
                        "codim_sa": c.codims()[2],
                    }
                    for c in union.components
                ],
                "codim_a": _codim_str(stats.codim_a),
                "codim_sa": _codim_str(stats.codim_sa),
                "dim_a": _codim_str(stats.dim_a),
                "dim_sa": _codim_str(stats.dim_sa),
            }
        )
    return {"report": "codims", "degrees": entries}


def sample_report(cx: FreeComplex, points: Sequence[TorsionPoint], degrees: Sequence[int]) -> dict:
    from .loci import membership_at_point

    entries = []
    for k, p in enumerate(points):
        row = {
            "point": [[_frac_str(q), _frac_str(th)] for q, th in p.coords],
            "memberships": {},
        }
        for d in degrees:
            member, dim = membership_at_point(cx, d, p)
            row["memberships"][str(d)] = {"member": member, "dim": dim}
        entries.append(row)
    return {"report": "sample", "points": entries}


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(doc: dict) -> str:
    """Stable plain-text rendering: sorted keys, one line per leaf."""
    lines: list[str] = []

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}.{key}" if prefix else str(key), value[key])
        elif isinstance(value, list):
            if not value:
                lines.append(f"{prefix}: []")
            for idx, item in enumerate(value):
                walk(f"{prefix}[{idx}]", item)
        else:
            lines.append(f"{prefix}: {value}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def parse_points_file(text: str, ctx: RingContext) -> list[TorsionPoint]:
    """Points file: JSON list of points, each a list of [radial, angle]
    rational-string pairs."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed points JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise InputError("points document must be a JSON list")
    points = []
    for entry in doc:
        pairs = [(_parse_frac(q), _parse_frac(th)) for q, th in entry]
        points.append(TorsionPoint(ctx, pairs))
    return points
