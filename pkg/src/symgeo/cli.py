"""Command-line entry point.

Verb-noun subcommands over the library: maslov, mp1, jet, scan, bordism,
witt, selftest.  Output is canonical JSON by default (sorted keys, fixed
indentation) so identical argv + inputs + seed give byte-identical bytes;
--table prints flat key/value lines with the same scalar encoding, so
numbers round-trip between the two modes.

Exit codes: 0 success, 2 invalid input, 3 a property check inside an
audit subcommand failed, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb
from random import Random

from .bordism import g_singular_bordism, split_check, weak_bordism_group
from .jets import (JetSignature, jet_dim, lagrangian_pde_dims,
                   legendrian_pde_dims, max_isotropic, spencer_sequence_audit,
                   symbol_layer_dim)
from .jets.metasymplectic import lambda_dim, model_dim
from .jsonio import (ValidationError, dumps, matrix_from_json, matrix_to_json,
                     parse_angle, parse_angle_list, to_jsonable)
from .linalg import APPROX, EXACT, Matrix, rank
from .maslov import (LagrangianTuple, LerayLift, arnold_index_triple,
                     arnold_triple_lines, kashiwara_index, kashiwara_space,
                     leray_cyclic_sum, leray_m, wall_invariant)
from .metaplectic import Mp1Context, Mp1Element, mp1_inverse, mp1_mul
from .scan import (ChiSpec, DEFAULT_SCAN_TOL, SampledImmersion,
                   check_lagrangian, check_legendrian, corank_profile,
                   immersion_from_csv, immersion_from_json, loop_maslov,
                   reeb_field)
from .selftest import run_selftest
from .symplectic import (LagrangianFrame, SymplecticSpace,
                         lagrangian_from_angles, line_lagrangian)
from .witt import (WittComplex, WittReal, ideal_power_member_real,
                   witt_of_form_complex, witt_of_form_real)

ALGEBRAIC_TOL = 1e-9

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CHECK_FAILED = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    # usage problems exit 64, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload) -> None:
    if getattr(args, "table", False):
        for line in _table_lines(to_jsonable(payload)):
            print(line)
    else:
        print(dumps(payload))


def _table_lines(obj, prefix: str = "") -> list:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            lines.extend(_table_lines(obj[k], f"{prefix}{k}."))
        return lines
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        lines = []
        for i, x in enumerate(obj):
            lines.extend(_table_lines(x, f"{prefix}{i}."))
        return lines
    key = prefix[:-1] if prefix.endswith(".") else prefix
    return [f"{key}: {json.dumps(obj)}"]


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _matrix_mode(args) -> str | None:
    if getattr(args, "exact", False):
        return EXACT
    if getattr(args, "approx", False):
        return APPROX
    return None


def _space_std(text: str) -> SymplecticSpace:
    if not text.startswith("std:"):
        raise ValidationError(f"space must look like std:n, got {text!r}")
    try:
        n = int(text[4:])
    except ValueError as exc:
        raise ValidationError(f"space must look like std:n, got {text!r}") from exc
    if n < 1:
        raise ValidationError("space size must be positive")
    return SymplecticSpace.standard(n)


def _space_from_obj(obj: dict, fallback: str | None) -> SymplecticSpace:
    if "omega" in obj and obj["omega"] is not None:
        return SymplecticSpace.from_omega(matrix_from_json(obj["omega"], mode=EXACT))
    if "n" in obj:
        n = obj["n"]
        if not isinstance(n, int) or n < 1:
            raise ValidationError("'n' must be a positive integer")
        return SymplecticSpace.standard(n)
    if fallback:
        return _space_std(fallback)
    raise ValidationError("no symplectic space given (need 'n', 'omega' or --space)")


def _frames_from_file(args, path: str):
    obj = _read_json(path)
    if not isinstance(obj, dict) or "frames" not in obj:
        raise ValidationError(f"{path} must be an object with a 'frames' list")
    space = _space_from_obj(obj, getattr(args, "space", None))
    frames = obj["frames"]
    if not isinstance(frames, list) or len(frames) < 1:
        raise ValidationError("'frames' must be a nonempty list of matrices")
    mode = _matrix_mode(args)
    tol = args.tol if args.tol is not None else ALGEBRAIC_TOL
    out = []
    for f in frames:
        out.append(LagrangianFrame(space, matrix_from_json(f, mode=mode, tol=tol)))
    return space, out


def _angles_to_frames(args, text: str):
    groups = parse_angle_list(text)
    n = len(groups[0])
    if any(len(g) != n for g in groups):
        raise ValidationError("every angle group must have the same length")
    space = _space_std(args.space) if args.space else SymplecticSpace.standard(n)
    if space.n != n:
        raise ValidationError(f"angle groups have {n} entries but space is std:{space.n}")
    tol = args.tol if args.tol is not None else ALGEBRAIC_TOL
    frames = [lagrangian_from_angles(space, [a[0] for a in g], tol=tol)
              for g in groups]
    return space, frames, groups


def _parse_direction_list(text: str) -> list:
    out = []
    for part in text.split(";"):
        comps = [c for c in part.strip().split(",") if c]
        if len(comps) != 2:
            raise ValidationError("each direction needs exactly two components")
        try:
            out.append((Fraction(comps[0]), Fraction(comps[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad direction {part!r}") from exc
        if out[-1] == (0, 0):
            raise ValidationError("direction must be nonzero")
    if len(out) < 2:
        raise ValidationError("need at least two directions")
    return out


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from exc


# -- maslov ---------------------------------------------------------------------


def _quadratic_report(space, frames) -> dict:
    tup = LagrangianTuple(space, tuple(frames))
    qs = kashiwara_space(tup)
    sig = qs.signature()
    return {
        "index": sig.pos - sig.neg,
        "t_dim": qs.dim,
        "signature": list(sig.as_tuple()),
        "r": len(frames),
        "n": space.n,
    }


def _cmd_maslov_kashiwara(args) -> int:
    if args.directions:
        ds = _parse_direction_list(args.directions)
        if len(ds) < 3:
            raise ValidationError("need at least three directions")
        space = SymplecticSpace.standard(1)
        frames = [line_lagrangian(space, d) for d in ds]
    elif args.angles:
        space, frames, _ = _angles_to_frames(args, args.angles)
    elif args.tuple:
        space, frames = _frames_from_file(args, args.tuple)
    else:
        raise ValidationError("give one of --angles, --directions or --tuple")
    if len(frames) < 3:
        raise ValidationError("need at least three Lagrangians")
    _emit(args, _quadratic_report(space, frames))
    return EXIT_OK


def _cmd_maslov_arnold(args) -> int:
    if args.directions:
        ds = _parse_direction_list(args.directions)
        if len(ds) != 3:
            raise ValidationError("the triple index needs exactly three directions")
        payload = {"index": arnold_triple_lines(*ds), "mode": "exact"}
    elif args.angles:
        space, frames, _ = _angles_to_frames(args, args.angles)
        if len(frames) != 3:
            raise ValidationError("the triple index needs exactly three angles")
        payload = {"index": arnold_index_triple(*frames), "mode": "approx"}
    else:
        raise ValidationError("give --angles or --directions")
    _emit(args, payload)
    return EXIT_OK


def _cmd_maslov_wall(args) -> int:
    space, frames = _frames_from_file(args, args.tuple)
    if len(frames) != 3:
        raise ValidationError("the Wall invariant needs exactly three frames")
    report = _quadratic_report(space, frames)
    report["index"] = int(wall_invariant(*frames))
    _emit(args, report)
    return EXIT_OK


def _cmd_maslov_leray(args) -> int:
    lifts = []
    for token in args.lifts.split(","):
        val, frac = parse_angle(token)
        lifts.append(LerayLift(frac) if frac is not None else LerayLift(val))
    if len(lifts) < 2:
        raise ValidationError("need at least two lifts")
    tol = args.tol if args.tol is not None else ALGEBRAIC_TOL
    ms = [leray_m(lifts[i], lifts[(i + 1) % len(lifts)], tol)
          for i in range(len(lifts))]
    _emit(args, {"m_values": ms, "cyclic_sum": leray_cyclic_sum(lifts, tol)})
    return EXIT_OK


# -- mp1 ------------------------------------------------------------------------


def _mp1_context(args) -> Mp1Context:
    obj = _read_json(args.context)
    space = _space_from_obj(obj, None)
    if "base" not in obj:
        raise ValidationError("context JSON needs a 'base' Lagrangian frame")
    base = LagrangianFrame(space, matrix_from_json(obj["base"], mode=EXACT))
    return Mp1Context(space, base)


def _mp1_element(ctx: Mp1Context, path: str) -> Mp1Element:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "w" not in obj or "g" not in obj:
        raise ValidationError(f"{path} must be an object with 'w' and 'g'")
    if not isinstance(obj["w"], int):
        raise ValidationError("'w' must be an integer")
    return Mp1Element.of(ctx, obj["w"], matrix_from_json(obj["g"], mode=EXACT))


def _mp1_payload(el: Mp1Element) -> dict:
    return {"w": int(el.w), "g": matrix_to_json(el.g)}


def _cmd_mp1_mul(args) -> int:
    ctx = _mp1_context(args)
    a = _mp1_element(ctx, args.a)
    b = _mp1_element(ctx, args.b)
    _emit(args, _mp1_payload(mp1_mul(a, b)))
    return EXIT_OK


def _cmd_mp1_inverse(args) -> int:
    ctx = _mp1_context(args)
    a = _mp1_element(ctx, args.a)
    _emit(args, _mp1_payload(mp1_inverse(a)))
    return EXIT_OK


# -- jet ------------------------------------------------------------------------


def _jet_sig(args) -> JetSignature:
    return JetSignature(args.n, args.m, args.k)


def _cmd_jet_dims(args) -> int:
    sig = _jet_sig(args)
    _emit(args, {
        "n": sig.n, "m": sig.m, "k": sig.k,
        "jet_dim": jet_dim(sig),
        "symbol_layer_dim": symbol_layer_dim(sig),
        "model_fiber_dim": model_dim(sig),
        "lambda_dim": lambda_dim(sig),
    })
    return EXIT_OK


def _cmd_jet_spencer_audit(args) -> int:
    report = spencer_sequence_audit(_jet_sig(args))
    _emit(args, report)
    return EXIT_OK if report["exact"] else EXIT_CHECK_FAILED


def _cmd_jet_lagrangian_pde(args) -> int:
    report = lagrangian_pde_dims(args.n, seed=args.seed)
    _emit(args, report)
    return EXIT_OK if report["verified"] else EXIT_CHECK_FAILED


def _cmd_jet_legendrian_pde(args) -> int:
    report = legendrian_pde_dims(args.n, seed=args.seed)
    _emit(args, report)
    ok = report["verified"] and report["cascade_sum_ok"]
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_jet_max_isotropic(args) -> int:
    sig = _jet_sig(args)
    if not 0 <= args.p <= sig.n:
        raise ValidationError("p must satisfy 0 <= p <= n")
    if args.xi:
        xi = matrix_from_json(_read_json(args.xi), mode=EXACT)
        if xi.cols != args.p or xi.rows != sig.n:
            raise ValidationError(f"xi must be {sig.n} x {args.p}")
    else:
        rng = Random(args.seed)
        while True:
            xi = Matrix.exact([[Fraction(rng.randint(-3, 3))
                                for _ in range(args.p)] for _ in range(sig.n)])
            if rank(xi) == min(args.p, sig.n):
                break
    plane = max_isotropic(sig, xi)
    expected = sig.m * comb(args.p + sig.k - 1, sig.k) + sig.n - args.p
    payload = {
        "n": sig.n, "m": sig.m, "k": sig.k, "p": args.p,
        "dim": plane.dim,
        "expected_dim": expected,
        "xi": matrix_to_json(xi),
    }
    _emit(args, payload)
    return EXIT_OK if plane.dim == expected else EXIT_CHECK_FAILED


# -- scan -----------------------------------------------------------------------


def _load_immersion(args, path: str) -> SampledImmersion:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    if path.lower().endswith(".csv"):
        shape = None
        if args.grid:
            parts = _int_list(args.grid)
            if len(parts) != 2:
                raise ValidationError("--grid must be 'rows,cols'")
            shape = (parts[0], parts[1])
        return immersion_from_csv(text, topology=args.topology, grid_shape=shape)
    return immersion_from_json(text)


def _scan_tol(args) -> float:
    return args.tol if args.tol is not None else DEFAULT_SCAN_TOL


def _scan_batch(args, runner) -> int:
    reports = [runner(_load_immersion(args, p)) for p in args.samples]
    _emit(args, reports[0] if len(reports) == 1 else {"batch": reports})
    return EXIT_OK


def _cmd_scan_lagrangian(args) -> int:
    space = _space_std(args.space)
    tol = _scan_tol(args)
    return _scan_batch(args, lambda s: check_lagrangian(s, space, tol=tol))


def _cmd_scan_corank(args) -> int:
    tol = _scan_tol(args)
    slots = _int_list(args.fiber_slots) if args.fiber_slots else None
    return _scan_batch(args, lambda s: corank_profile(s, tol=tol, fiber_slots=slots))


def _cmd_scan_loop_maslov(args) -> int:
    space = _space_std(args.space)
    tol = _scan_tol(args)
    return _scan_batch(args, lambda s: {"degree": loop_maslov(s, space, tol=tol)})


def _cmd_scan_legendrian(args) -> int:
    tol = _scan_tol(args)

    def runner(s):
        if s.ambient_dim < 3 or s.ambient_dim % 2 == 0:
            raise ValidationError(
                "legendrian checks need odd ambient dimension 2n+1 >= 3")
        n = (s.ambient_dim - 1) // 2
        coeffs = None
        if args.chi_coeffs:
            coeffs = tuple(float(Fraction(x)) for x in args.chi_coeffs.split(","))
        chi = ChiSpec(n=n, scale=args.chi_scale, y_coeffs=coeffs)
        report = check_legendrian(s, chi=chi, tol=tol)
        if args.reeb:
            report["reeb"] = reeb_field(chi, s)
        return report

    return _scan_batch(args, runner)


# -- bordism --------------------------------------------------------------------


def _cmd_bordism_weak(args) -> int:
    extra = None
    if args.omega_table:
        raw = _read_json(args.omega_table)
        if not isinstance(raw, dict):
            raise ValidationError("--omega-table file must hold an object")
        try:
            extra = {int(k): v for k, v in raw.items()}
        except ValueError as exc:
            raise ValidationError("omega table keys must be integers") from exc
    report = weak_bordism_group(_int_list(args.betti), args.n,
                                extra_ranks=extra, label=args.label)
    _emit(args, report.to_dict())
    return EXIT_OK


def _cmd_bordism_gsingular(args) -> int:
    report = g_singular_bordism(_int_list(args.homology), args.degree,
                                coefficients=args.coefficients)
    _emit(args, report.to_dict())
    return EXIT_OK


def _cmd_bordism_split_check(args) -> int:
    ok = split_check(args.closed, args.bor, args.cyc)
    _emit(args, {"consistent": ok, "closed": args.closed, "bor": args.bor,
                 "cyc": args.cyc})
    return EXIT_OK


# -- witt -----------------------------------------------------------------------


def _witt_form(args) -> Matrix:
    if args.diag:
        entries = []
        for tok in args.diag.split(","):
            try:
                entries.append(Fraction(tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationError(f"bad diagonal entry {tok!r}") from exc
        size = len(entries)
        return Matrix.exact([[entries[r] if r == c else Fraction(0)
                              for c in range(size)] for r in range(size)])
    if args.form:
        return matrix_from_json(_read_json(args.form), mode=EXACT)
    raise ValidationError("give --diag or --form")


def _cmd_witt_class(args) -> int:
    form = _witt_form(args)
    if args.field == "C":
        _emit(args, {"field": "C", "witt": witt_of_form_complex(form).parity})
    else:
        _emit(args, {"field": "R", "witt": int(witt_of_form_real(form))})
    return EXIT_OK


def _cmd_witt_ideal(args) -> int:
    member = ideal_power_member_real(WittReal(args.value), args.k)
    _emit(args, {"value": args.value, "k": args.k, "member": member})
    return EXIT_OK


# -- selftest -------------------------------------------------------------------


def _cmd_selftest(args) -> int:
    report = run_selftest(seed=args.seed, quick=args.quick)
    _emit(args, report)
    return EXIT_OK if report["all_passed"] else EXIT_CHECK_FAILED


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="table", action="store_false", default=False,
                     help="JSON output (default)")
    out.add_argument("--table", dest="table", action="store_true",
                     help="flat key/value output")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="force exact rational matrix inputs")
    mode.add_argument("--approx", action="store_true",
                      help="force float matrix inputs")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance (default 1e-9 algebraic, 1e-6 scan)")

    parser = _Parser(prog="symgeo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="noun", required=True, parser_class=_Parser)

    maslov = sub.add_parser("maslov", help="Lagrangian tuple indices",
                            parents=[common])
    msub = maslov.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    mk = msub.add_parser("kashiwara", parents=[common])
    mk.add_argument("--space", default=None, help="std:n")
    mk.add_argument("--angles", default=None,
                    help="semicolon-separated groups of comma-separated angles")
    mk.add_argument("--directions", default=None,
                    help="n=1 lines as 'p,q;p,q;...' rational directions (exact)")
    mk.add_argument("--tuple", default=None, help="JSON file with 'frames'")
    mk.set_defaults(fn=_cmd_maslov_kashiwara)
    ma = msub.add_parser("arnold", parents=[common])
    ma.add_argument("--space", default=None, help="std:n")
    ma.add_argument("--angles", default=None)
    ma.add_argument("--directions", default=None)
    ma.set_defaults(fn=_cmd_maslov_arnold)
    mw = msub.add_parser("wall", parents=[common])
    mw.add_argument("--space", default=None, help="std:n")
    mw.add_argument("--tuple", required=True, help="JSON file with 3 frames")
    mw.set_defaults(fn=_cmd_maslov_wall)
    ml = msub.add_parser("leray", parents=[common])
    ml.add_argument("--lifts", required=True,
                    help="comma-separated lifted angles; 'p/qpi' stays exact")
    ml.set_defaults(fn=_cmd_maslov_leray)

    mp1 = sub.add_parser("mp1", help="metaplectic group elements", parents=[common])
    psub = mp1.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    pm = psub.add_parser("mul", parents=[common])
    pm.add_argument("--context", required=True, help="JSON with n/omega and base")
    pm.add_argument("--a", required=True)
    pm.add_argument("--b", required=True)
    pm.set_defaults(fn=_cmd_mp1_mul)
    pi = psub.add_parser("inverse", parents=[common])
    pi.add_argument("--context", required=True)
    pi.add_argument("--a", required=True)
    pi.set_defaults(fn=_cmd_mp1_inverse)

    jet = sub.add_parser("jet", help="jet space dimension calculus",
                         parents=[common])
    jsub = jet.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    jd = jsub.add_parser("dims", parents=[common])
    for flag in ("--n", "--m", "--k"):
        jd.add_argument(flag, type=int, required=True)
    jd.set_defaults(fn=_cmd_jet_dims)
    js = jsub.add_parser("spencer-audit", parents=[common])
    for flag in ("--n", "--m", "--k"):
        js.add_argument(flag, type=int, required=True)
    js.set_defaults(fn=_cmd_jet_spencer_audit)
    jl = jsub.add_parser("lagrangian-pde", parents=[common])
    jl.add_argument("--n", type=int, required=True)
    jl.add_argument("--seed", type=int, default=0)
    jl.set_defaults(fn=_cmd_jet_lagrangian_pde)
    jg = jsub.add_parser("legendrian-pde", parents=[common])
    jg.add_argument("--n", type=int, required=True)
    jg.add_argument("--seed", type=int, default=0)
    jg.set_defaults(fn=_cmd_jet_legendrian_pde)
    jm = jsub.add_parser("max-isotropic", parents=[common])
    for flag in ("--n", "--m", "--k", "--p"):
        jm.add_argument(flag, type=int, required=True)
    jm.add_argument("--xi", default=None, help="JSON matrix, n x p, exact")
    jm.add_argument("--seed", type=int, default=0)
    jm.set_defaults(fn=_cmd_jet_max_isotropic)

    scan = sub.add_parser("scan", help="sampled immersion checks", parents=[common])
    ssub = scan.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def _scan_common(p, need_space):
        if need_space:
            p.add_argument("--space", required=True, help="std:n")
        p.add_argument("--samples", nargs="+", required=True,
                       help="JSON or CSV sample files")
        p.add_argument("--topology", default="line",
                       choices=("line", "loop", "grid"),
                       help="CSV only; JSON files carry their own")
        p.add_argument("--grid", default=None, help="rows,cols for CSV grids")

    sl = ssub.add_parser("lagrangian", parents=[common])
    _scan_common(sl, True)
    sl.set_defaults(fn=_cmd_scan_lagrangian)
    sc = ssub.add_parser("corank", parents=[common])
    _scan_common(sc, False)
    sc.add_argument("--fiber-slots", default=None,
                    help="comma-separated ambient coordinates to project out")
    sc.set_defaults(fn=_cmd_scan_corank)
    sm = ssub.add_parser("loop-maslov", parents=[common])
    _scan_common(sm, True)
    sm.set_defaults(fn=_cmd_scan_loop_maslov)
    sg = ssub.add_parser("legendrian", parents=[common])
    _scan_common(sg, False)
    sg.add_argument("--chi-scale", type=float, default=1.0)
    sg.add_argument("--chi-coeffs", default=None,
                    help="comma-separated coefficients of the contact form")
    sg.add_argument("--reeb", action="store_true",
                    help="include the Reeb field samples in the report")
    sg.set_defaults(fn=_cmd_scan_legendrian)

    bor = sub.add_parser("bordism", help="bordism group arithmetic",
                         parents=[common])
    bsub = bor.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    bw = bsub.add_parser("weak", parents=[common])
    bw.add_argument("--betti", required=True, help="comma-separated mod-2 betti")
    bw.add_argument("--n", type=int, required=True)
    bw.add_argument("--omega-table", default=None,
                    help="JSON object of extra bordism ranks for degrees > 3")
    bw.add_argument("--label", default="lagrangian",
                    choices=("lagrangian", "legendrian"))
    bw.set_defaults(fn=_cmd_bordism_weak)
    bg = bsub.add_parser("gsingular", parents=[common])
    bg.add_argument("--homology", required=True,
                    help="comma-separated ranks of H_d(W; G)")
    bg.add_argument("--degree", type=int, required=True)
    bg.add_argument("--coefficients", default="Z2")
    bg.set_defaults(fn=_cmd_bordism_gsingular)
    bs = bsub.add_parser("split-check", parents=[common])
    bs.add_argument("--closed", type=int, required=True)
    bs.add_argument("--bor", type=int, required=True)
    bs.add_argument("--cyc", type=int, required=True)
    bs.set_defaults(fn=_cmd_bordism_split_check)

    witt = sub.add_parser("witt", help="Witt classes of symmetric forms",
                          parents=[common])
    wsub = witt.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    wc = wsub.add_parser("class", parents=[common])
    wc.add_argument("--diag", default=None, help="comma-separated diagonal")
    wc.add_argument("--form", default=None, help="JSON matrix file")
    wc.add_argument("--field", default="R", choices=("R", "C"))
    wc.set_defaults(fn=_cmd_witt_class)
    wi = wsub.add_parser("ideal", parents=[common])
    wi.add_argument("--value", type=int, required=True)
    wi.add_argument("--k", type=int, required=True)
    wi.set_defaults(fn=_cmd_witt_ideal)

    st = sub.add_parser("selftest", help="run the built-in invariant suites",
                        parents=[common])
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--quick", action="store_true")
    st.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
