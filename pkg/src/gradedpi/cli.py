"""Command-line front door.

Exit codes: 0 = computed and the verdict is positive, 1 = computed but the
mathematical verdict is negative, 2 = usage error, parse failure, or budget
blowout.  Output is deterministic: identical invocations produce identical
bytes, and --json emits the report schema with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analyses, linalg
from .algebra import BUILTIN_NAMES, GradedAlgebra, Subspace, builtin, load_algebra, show_grade
from .dsl import PROFILES, load_basis, parse_cell
from .engine import (
    EngineConfig,
    GenLimits,
    compare_algebra_kernels,
    compare_spans,
    consequence_span,
    identity_kernel,
    multilinear_cells,
    verify_basis,
)
from .errors import GradedPIError, JacobiViolation, GradingViolation, NotClosed, NotMonolithic, ParseError
from .field import field_spec, parse_field_spec


def _profile_for_group(group):
    for prof in PROFILES.values():
        if prof.group == group:
            return prof
    raise ParseError(f"no grading profile matches the group {group.label}; "
                     "kernel cells need one of Z2, Z3, Z2Z2, Z")


def _default_field(name: str) -> str:
    return "7" if "z3" in name.lower() or name == "Z3" else "5"


def _resolve_algebra(spec: str, field: str | None) -> GradedAlgebra:
    if spec in BUILTIN_NAMES:
        ctx = parse_field_spec(field or _default_field(spec))
        return builtin(spec, ctx)
    ctx = parse_field_spec(field) if field else None
    return load_algebra(spec, ctx)


def _parse_element(text: str, A: GradedAlgebra) -> np.ndarray:
    """An element as "h", "h + 2*e12", or raw coordinates "1,0,0"."""
    text = text.strip()
    if all(part.strip().lstrip("-").isdigit() for part in text.split(",")) and "," in text:
        coords = [int(x) for x in text.split(",")]
        if len(coords) != A.dim:
            raise ParseError(f"expected {A.dim} coordinates")
        return np.array([c % A.ctx.p for c in coords], dtype=np.int64)
    vec = np.zeros(A.dim, dtype=np.int64)
    for sign, term in _signed_terms(text):
        term = term.strip()
        if "*" in term:
            coef_s, _, label = term.partition("*")
            coef = int(coef_s)
        else:
            label = term
            coef = 1
        label = label.strip()
        if label not in A.labels:
            raise ParseError(f"unknown basis label {label!r} (have: {', '.join(A.labels)})")
        i = A.labels.index(label)
        code = A.ctx.elem(sign * coef)
        vec[i] = A.ctx.add_table[vec[i], code]
    return vec


def _signed_terms(text: str):
    out = []
    term = ""
    sign = 1
    for ch in text:
        if ch == "+":
            if term.strip():
                out.append((sign, term))
            term, sign = "", 1
        elif ch == "-":
            if term.strip():
                out.append((sign, term))
            term, sign = "", -1
        else:
            term += ch
    if term.strip():
        out.append((sign, term))
    return out


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _config(args) -> EngineConfig:
    limits = GenLimits.parse(args.limits) if getattr(args, "limits", None) else GenLimits()
    return EngineConfig(limits=limits)


# -- subcommands --

def cmd_algebra(args) -> int:
    if args.action == "list":
        for name in BUILTIN_NAMES:
            print(name)
        return 0
    if not args.algebra:
        raise ParseError(f"algebra {args.action} needs --algebra")
    A = _resolve_algebra(args.algebra, args.field)
    if args.action == "show":
        payload = A.to_json()
        lines = [f"{A.name}: dim {A.dim} over {A.ctx!r}, grading {A.group.label}"]
        for i, (label, g) in enumerate(zip(A.labels, A.grades)):
            lines.append(f"  {label}: grade {show_grade(g)}")
        for i in range(A.dim):
            for j in range(A.dim):
                if A.structure[i, j].any():
                    lines.append(f"  [{A.labels[i]}, {A.labels[j]}] = "
                                 f"{A.coords_label(A.structure[i, j])}")
        _emit(args, payload, lines)
        return 0
    if args.action == "validate":
        # construction already validated antisymmetry, Jacobi, grading
        lines = [f"{A.name}: antisymmetry ok, Jacobi ok, grading ok"]
        if args.conjugate_check:
            rng = np.random.default_rng(args.seed if args.seed is not None else 0)
            P = linalg.random_invertible(A.ctx, A.dim, rng)
            conj = A.conjugated(P)
            pinv_img = lambda S: Subspace.from_vectors(
                conj, [linalg.apply_matrix(A.ctx, np.array(_inv(A, P)), np.array(r)) for r in S.rows])
            for fn_name, fn in (("nilradical", analyses.nilradical),
                                ("radical", analyses.radical)):
                orig = fn(A.ungraded())
                moved = fn(conj)
                if pinv_img(orig).rows != moved.rows:
                    print(f"{fn_name}: NOT invariant under basis change")
                    return 1
                lines.append(f"  {fn_name}: invariant under a random basis change")
        _emit(args, {"op": "validate", "algebra": A.name, "valid": True}, lines)
        return 0
    raise ParseError(f"unknown algebra action {args.action!r}")


def _inv(A, P):
    from .algebra import _invert
    return _invert(A.ctx, P)


def cmd_verify(args) -> int:
    A = _resolve_algebra(args.algebra, args.field)
    basis = load_basis(args.basis, A.ctx.q, expect_group=A.group)
    reports = verify_basis(basis, A, config=_config(args), only=args.ident)
    if args.ident and not reports:
        raise ParseError(f"no identity named {args.ident!r} in {basis.name}")
    payload = {"op": "verify", "algebra": A.name, "basis": basis.name,
               "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        status = "holds" if r.holds else "FAILS"
        lines.append(f"{r.identity}: {status} ({r.substitutions_checked} substitutions)")
        if r.counterexample:
            ass = ", ".join(f"{k} = ({', '.join(map(str, v))})"
                            for k, v in r.counterexample["assignment"].items())
            val = ", ".join(map(str, r.counterexample["value"]))
            lines.append(f"  counterexample: {ass}; value = ({val})")
    _emit(args, payload, lines)
    return 0 if all(r.holds for r in reports) else 1


def cmd_kernel(args) -> int:
    A = _resolve_algebra(args.algebra, args.field)
    profile = _profile_for_group(A.group)
    cell = parse_cell(args.cell, profile)
    span = identity_kernel(A, cell, config=_config(args))
    payload = span.to_json(A.ctx)
    payload["algebra"] = A.name
    lines = [f"kernel of {A.name} at cell {{{cell.format()}}}: "
             f"dim {span.dim} of ambient {span.ambient_dim}"]
    lines += [f"  {p.to_text()}" for p in span.polys(A.ctx)]
    _emit(args, payload, lines)
    return 0


def cmd_consequences(args) -> int:
    ctx = parse_field_spec(args.field or _default_field_for_basis(args.basis))
    basis = load_basis(args.basis, ctx.q)
    cell = parse_cell(args.cell, basis.profile)
    span = consequence_span(basis, cell, ctx, config=_config(args))
    payload = span.to_json(ctx)
    payload["basis"] = basis.name
    lines = [f"consequences of {basis.name} at cell {{{cell.format()}}}: "
             f"dim {span.dim} of ambient {span.ambient_dim} (verified lower bound)"]
    lines += [f"  {p.to_text()}" for p in span.polys(ctx)]
    _emit(args, payload, lines)
    return 0


def _default_field_for_basis(path: str) -> str:
    return "7" if "z3" in path.lower() else "5"


def cmd_compare_spans(args) -> int:
    A = _resolve_algebra(args.algebra, args.field)
    basis = load_basis(args.basis, A.ctx.q, expect_group=A.group)
    cell = parse_cell(args.cell, basis.profile)
    config = _config(args)
    ker = identity_kernel(A, cell, config=config)
    con = consequence_span(basis, cell, A.ctx, config=config)
    cmp = compare_spans(A.ctx, con, ker)
    contained = cmp["verdict"] in ("equal", "a_subset_b")
    payload = {"op": "compare-spans", "algebra": A.name, "basis": basis.name,
               "cell": {v.name: e for v, e in cell.items},
               "kernel_dim": ker.dim, "consequence_dim": con.dim,
               "verdict": cmp["verdict"], "consequence_inside_kernel": contained}
    lines = [f"cell {{{cell.format()}}}: kernel dim {ker.dim}, "
             f"consequence dim {con.dim}, verdict {cmp['verdict']}"]
    if cmp["verdict"] == "a_subset_b":
        payload["gap"] = ker.dim - con.dim
        lines.append(f"  shortfall: consequences miss {ker.dim - con.dim} kernel "
                     "dimension(s) at these generation limits")
    if not contained:
        lines.append("  WARNING: consequence span escapes the kernel; "
                     "a generator fails on this algebra")
    _emit(args, payload, lines)
    return 0 if cmp["verdict"] == "equal" else 1


def cmd_compare_kernels(args) -> int:
    A = _resolve_algebra(args.a, args.field)
    B = _resolve_algebra(args.b, args.field)
    profile = _profile_for_group(A.group)
    if not args.multilinear:
        raise ParseError("only --multilinear cell generation is supported")
    cells = multilinear_cells(profile, sorted(profile.family_grades), args.max_total_degree)
    results = compare_algebra_kernels(A, B, cells, config=_config(args))
    payload = {"op": "compare-kernels", "a": A.name, "b": B.name,
               "cells": [{"cell": {v.name: e for v, e in r["cell"].items},
                          "dim_a": r["dim_a"], "dim_b": r["dim_b"],
                          "verdict": r["verdict"]} for r in results]}
    lines = []
    for r in results:
        lines.append(f"cell {{{r['cell'].format()}}}: {r['verdict']} "
                     f"(dims {r['dim_a']} vs {r['dim_b']})")
    all_equal = all(r["verdict"] == "equal" for r in results)
    lines.append("all cells equal" if all_equal else "kernels differ")
    _emit(args, payload, lines)
    return 0 if all_equal else 1


def cmd_analyze(args) -> int:
    A = _resolve_algebra(args.algebra, args.field)
    graded = not args.ungraded
    V = A if graded else A.ungraded()
    lines = [f"analysis of {A.name} ({'graded' if graded else 'ungraded'})"]
    payload = {"op": "analyze", "algebra": A.name, "graded": graded}
    z = analyses.center(V)
    payload["center_dim"] = z.dim
    lines.append(f"  center: {z.describe()}")
    ds = analyses.derived_series(V)
    lc = analyses.lower_central(V)
    payload["derived_series_dims"] = [s.dim for s in ds]
    payload["lower_central_dims"] = [s.dim for s in lc]
    lines.append(f"  derived series dims: {[s.dim for s in ds]}")
    lines.append(f"  lower central dims: {[s.dim for s in lc]}")
    ideals = analyses.enumerate_ideals(V, graded=graded)
    payload["ideal_count"] = len(ideals)
    lines.append(f"  ideals ({'graded' if graded else 'all'}): {len(ideals)}")
    nil = analyses.nilradical(V, graded=graded)
    rad = analyses.radical(V, graded=graded)
    payload["nilradical"] = nil.to_json()
    payload["radical"] = rad.to_json()
    lines.append(f"  nilradical: {nil.describe()}")
    lines.append(f"  radical: {rad.describe()}")
    try:
        mono = analyses.monolith(V, graded=graded)
        payload["monolith"] = mono.to_json()
        lines.append(f"  monolith: {mono.describe()}")
    except NotMonolithic as exc:
        payload["monolith"] = {"not_monolithic": len(exc.minimal_ideals)}
        lines.append(f"  monolith: none ({len(exc.minimal_ideals)} minimal ideals)")
    is_a, witness = analyses.is_A_algebra(V)
    payload["is_A_algebra"] = is_a
    lines.append(f"  A-algebra: {is_a}" + ("" if is_a else f" (witness {witness.describe()})"))
    indecomp = analyses.derived_indecomposable(V, graded=graded)
    payload["derived_indecomposable"] = indecomp
    lines.append(f"  derived algebra indecomposable into proper ideals: {indecomp}")
    preds = analyses.check_structure_predicates(V)
    payload["structure_predicates"] = {
        "derived_center_trivial": preds.derived_center_trivial,
        "semisimple": preds.semisimple,
        "graded_simple_decomposition": preds.graded_simple_decomposition,
        "root_hypothesis": preds.root_hypothesis,
    }
    lines.append(f"  [L,L] meets Z(L) trivially: {preds.derived_center_trivial}")
    lines.append(f"  semisimple: {preds.semisimple}")
    if preds.graded_simple_decomposition is not None:
        lines.append(f"  direct sum of graded simple ideals: {preds.graded_simple_decomposition}"
                     f" ({preds.root_hypothesis})")
    _emit(args, payload, lines)
    return 0


def cmd_spectrum(args) -> int:
    A = _resolve_algebra(args.algebra, args.field)
    u = _parse_element(args.element, A)
    rep = analyses.spectrum(A, u)
    payload = {"op": "spectrum", "algebra": A.name, **rep.to_json(A)}
    lines = [f"spectrum of ad({A.coords_label(u)}) on {A.name}:",
             f"  min poly coefficients (constant first): {list(rep.min_poly)}",
             f"  eigenvalues: {sorted(map(int, rep.eigenvalues))}",
             f"  diagonalizable: {rep.diagonalizable}",
             f"  homogeneous eigenbasis: {rep.homogeneous_eigenbasis}"]
    for lam, space in zip(rep.eigenvalues, rep.eigenspaces):
        lines.append(f"  eigenspace({lam}): {space.describe()}")
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gradedpi",
                                  description="graded polynomial identities of sl2 "
                                              "over small finite fields")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count hint; results are schedule-independent")
    sub = top.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="list, show, or validate algebras", parents=[common])
    alg.add_argument("action", choices=["list", "show", "validate"])
    alg.add_argument("--algebra", help="builtin name or algebra JSON file")
    alg.add_argument("--field", help='field spec "p" or "p^2"')
    alg.add_argument("--conjugate-check", action="store_true",
                     help="check basis-change invariance of nilradical/radical")
    alg.set_defaults(fn=cmd_algebra)

    ver = sub.add_parser("verify", help="exhaustively verify a basis of identities", parents=[common])
    ver.add_argument("--algebra", required=True)
    ver.add_argument("--field")
    ver.add_argument("--basis", required=True)
    ver.add_argument("--ident", help="verify a single named identity")
    ver.set_defaults(fn=cmd_verify)

    ker = sub.add_parser("kernel", help="exact graded-identity kernel in one cell", parents=[common])
    ker.add_argument("--algebra", required=True)
    ker.add_argument("--field")
    ker.add_argument("--cell", required=True, help='e.g. "y1:1,y2:1"')
    ker.set_defaults(fn=cmd_kernel)

    con = sub.add_parser("consequences", help="consequence span of a basis in one cell", parents=[common])
    con.add_argument("--basis", required=True)
    con.add_argument("--field")
    con.add_argument("--cell", required=True)
    con.add_argument("--limits", help="generation limits s,r,margin (default 2,2,2)")
    con.set_defaults(fn=cmd_consequences)

    cs = sub.add_parser("compare-spans", help="consequence span vs identity kernel", parents=[common])
    cs.add_argument("--algebra", required=True)
    cs.add_argument("--field")
    cs.add_argument("--basis", required=True)
    cs.add_argument("--cell", required=True)
    cs.add_argument("--limits")
    cs.set_defaults(fn=cmd_compare_spans)

    ck = sub.add_parser("compare-kernels", help="per-cell kernel equality of two algebras", parents=[common])
    ck.add_argument("--a", required=True)
    ck.add_argument("--b", required=True)
    ck.add_argument("--field")
    ck.add_argument("--max-total-degree", type=int, default=3)
    ck.add_argument("--multilinear", action="store_true")
    ck.set_defaults(fn=cmd_compare_kernels)

    ana = sub.add_parser("analyze", help="structural analyses of one algebra", parents=[common])
    ana.add_argument("--algebra", required=True)
    ana.add_argument("--field")
    mode = ana.add_mutually_exclusive_group()
    mode.add_argument("--graded", action="store_true", default=True)
    mode.add_argument("--ungraded", action="store_true")
    ana.set_defaults(fn=cmd_analyze)

    spec = sub.add_parser("spectrum", help="ad-operator spectrum of an element", parents=[common])
    spec.add_argument("--algebra", required=True)
    spec.add_argument("--field")
    spec.add_argument("--element", required=True, help='e.g. "h" or "h + 2*e12"')
    spec.set_defaults(fn=cmd_spectrum)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (JacobiViolation, GradingViolation, NotClosed) as exc:
        if args.command == "algebra" and getattr(args, "action", "") == "validate":
            print(f"invalid: {exc}", file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GradedPIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
