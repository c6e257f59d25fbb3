"""Command-line front end: config ingestion, the built-in example suites,
computation orchestration, and JSON/CSV/TeX emission.

Exit codes: 0 = all checks pass, 1 = a verification failed (the report
carries a witness), 2 = input error.  Reports are canonical JSON; the
timing_ms key is the only part excluded from determinism comparisons.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .scalars import FieldError, FieldSpec
from .ncalg import (
    CutoffError,
    ParseError,
    Presentation,
    PresentationError,
    groebner_truncated,
    parse_generator_decls,
)
from .hopf import HopfError
from .cohomology import ResolutionError, ext_table
from .defseq import AlgebraMapSpec, DeformationSequence, SequenceError, check_deformation_sequence
from .twisted import TwistingError
from . import registry

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (
    FieldError,
    ParseError,
    PresentationError,
    CutoffError,
    HopfError,
    SequenceError,
    TwistingError,
    ResolutionError,
    KeyError,
    ValueError,
    OSError,
)


def make_report(command, inputs, results, seed):
    return {
        "engine_version": __version__,
        "command": command,
        "determinism_seed": seed,
        "inputs": inputs,
        "results": results,
    }


def emit(report, fmt, out_path, timing_ms):
    doc = dict(report)
    doc["timing_ms"] = timing_ms
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = render_csv(report)
    elif fmt == "tex":
        text = render_tex(report)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render_csv(report):
    results = report["results"]
    dims = results.get("dims")
    if dims is None:
        raise ValueError("CSV output is only available for dimension tables")
    inv = results.get("invariant_dims")
    lines = ["degree,dim" + (",invariant_dim" if inv else "")]
    for d, v in enumerate(dims):
        row = f"{d},{v}"
        if inv:
            row += f",{inv[d]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def render_tex(report):
    results = report["results"]
    dims = results.get("dims")
    if dims is None:
        raise ValueError("TeX output is only available for dimension tables")
    cols = "l" + "c" * len(dims)
    header = " & ".join(["degree"] + [str(d) for d in range(len(dims))])
    row = " & ".join(["dim"] + [str(v) for v in dims])
    return (
        "\\begin{tabular}{" + cols + "}\n"
        + header + " \\\\\n\\hline\n"
        + row + " \\\\\n\\end{tabular}\n"
    )


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def algebra_from_block(block, default_field=None, cutoff=12, require_graded=True):
    field = FieldSpec.parse(block.get("field")) if block.get("field") else default_field
    if field is None:
        raise ValueError("algebra block needs a field")
    free = parse_generator_decls(
        block.get("generators", []), field, priority=block.get("priority")
    )
    relations = [free.parse(text) for text in block.get("relations", [])]
    augmentation = {
        name: free.parse(val).constant_coefficient() if isinstance(val, str) else field.from_int(val)
        for name, val in block.get("augmentation", {}).items()
    }
    pres = Presentation(free, relations, augmentation)
    if require_graded and not pres.is_graded():
        bad = next(r for r in relations if not r.is_homogeneous())
        raise ValueError(
            f"graded mode rejects the inhomogeneous relation '{bad}'"
        )
    return groebner_truncated(pres, int(block.get("max_ideg", cutoff)))


def is_builtin(target, names):
    return target in names


def params_from_args(args):
    params = {}
    for key in ("n", "p", "q", "q11", "q22", "q12", "field", "rank", "q_order", "seed"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            params[key] = val
    return params


def cmd_ext(args):
    t0 = time.monotonic()
    params = params_from_args(args)
    N = args.N
    target = args.target
    if is_builtin(target, registry.ALGEBRA_EXAMPLES):
        if target == "quantum-line":
            alg, inputs = registry.build_quantum_line(params)
        elif target == "taft":
            alg, inputs = registry.build_taft(params)
        elif target == "sweedler":
            alg, inputs = registry.build_sweedler(params)
        elif target == "qls":
            data, inputs = registry.build_qls(params)
            alg = data.algebra
        elif target == "jordan":
            return cmd_jordan_example(args, params, t0)
        elif target == "cartan-check":
            return cmd_cartan_example(args, params, t0)
        inputs["name"] = target
    else:
        config = load_config(target)
        alg = algebra_from_block(config.get("algebra", {}), cutoff=args.max_ideg)
        if not alg.is_finite_dimensional():
            raise ValueError("ext needs a finite-dimensional algebra")
        inputs = {"config": target, "algebra": alg.describe()}
        bounds = config.get("bounds", {})
        N = int(bounds.get("N", N))
    table = ext_table(alg, N)
    results = {"kind": "ext", **table.to_json()}
    report = make_report("ext", {**inputs, "N": N}, results, args.seed)
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    return EXIT_OK


def cmd_jordan_example(args, params, t0):
    alg, inputs = registry.build_jordan(params)
    p = inputs["p"]
    free = alg.free
    x, y = free.gen(0), free.gen(1)
    field = alg.field
    half = field.from_int(2).inverse()
    identity_ok = True
    for n in range(1, 2 * p + 1):
        lhs = alg.normal_form(x ** n * y)
        rhs = alg.normal_form(y * x ** n + (x ** (n + 1)).scale(field.from_int(n) * half))
        if lhs != rhs:
            identity_ok = False
            break
    results = {
        "kind": "jordan",
        "dimension": alg.dimension() if inputs["restricted"] else None,
        "dims": alg.hilbert_series(min(alg.cutoff, 2 * p)),
        "central_x_power": alg.is_central(x ** p),
        "central_y_power": alg.is_central(y ** p),
        "power_identity_verified_to": 2 * p if identity_ok else None,
    }
    report = make_report("ext", {**inputs, "name": "jordan"}, results, args.seed)
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    return EXIT_OK if identity_ok else EXIT_FAILED


def cmd_cartan_example(args, params, t0):
    rep, inputs = registry.build_cartan(params)
    results = {
        "kind": "cartan",
        "passed": rep.passed,
        "rows": [
            {"condition": label, "ok": ok, "detail": detail}
            for label, ok, detail in rep.rows
        ],
    }
    report = make_report("ext", {**inputs, "name": "cartan-check"}, results, args.seed)
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    return EXIT_OK if rep.passed else EXIT_FAILED


def sequence_from_config(config, D):
    field = FieldSpec.parse(config["field"]) if config.get("field") else None
    blocks = config["sequence"]
    Z = algebra_from_block(blocks["Z"], field, cutoff=D, require_graded=False)
    Q = algebra_from_block(blocks["Q"], field, cutoff=D, require_graded=False)
    R = algebra_from_block(blocks["R"], field, cutoff=D, require_graded=False)
    iota = AlgebraMapSpec(
        Z, Q, {name: Q.parse(expr) for name, expr in blocks["iota"].items()}, name="iota"
    )
    pi = AlgebraMapSpec(
        Q, R, {name: R.parse(expr) for name, expr in blocks["pi"].items()}, name="pi"
    )
    return DeformationSequence(
        Z, Q, R, iota, pi,
        asserted=dict(blocks.get("asserted", {})),
        name=config.get("name", "config-sequence"),
    )


def cmd_verify_seq(args):
    t0 = time.monotonic()
    params = params_from_args(args)
    D = args.max_ideg
    target = args.target
    if is_builtin(target, registry.SEQUENCE_EXAMPLES):
        report_obj, inputs, extras = registry.run_sequence_check(target, params, D)
        inputs["name"] = target
    else:
        config = load_config(target)
        seq = sequence_from_config(config, D)
        report_obj = check_deformation_sequence(seq, D)
        inputs = {"config": target}
        extras = {"sequence": seq.describe()}
    results = {
        "kind": "sequence-verification",
        "max_ideg": D,
        **extras,
        "report": report_obj.to_json(),
    }
    report = make_report("verify-seq", inputs, results, args.seed)
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    return EXIT_OK if report_obj.passed else EXIT_FAILED


def cmd_smash(args):
    t0 = time.monotonic()
    params = params_from_args(args)
    D = args.max_ideg
    out, eq_report, verification, inputs = registry.run_smash(
        args.m_sequence, args.c_sequence, params, D
    )
    results = {
        "kind": "smash",
        "max_ideg": D,
        "equivariance": eq_report.to_json(),
        "verification": verification.to_json() if verification else None,
        "sequence": out.describe() if out else None,
        "target_dimension": out.R.dimension() if out else None,
    }
    report = make_report(
        "smash", {**inputs, "m": args.m_sequence, "c": args.c_sequence}, results, args.seed
    )
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    passed = eq_report.passed and verification is not None and verification.passed
    return EXIT_OK if passed else EXIT_FAILED


def cmd_verify_ttp(args):
    t0 = time.monotonic()
    params = params_from_args(args)
    D = args.max_ideg
    target = args.target
    if is_builtin(target, registry.TTP_EXAMPLES):
        validation, flatness, inputs = registry.run_ttp(target, params, D)
        inputs["name"] = target
    else:
        config = load_config(target)
        block = config["ttp"]
        field = FieldSpec.parse(config["field"]) if config.get("field") else None
        Q = algebra_from_block(block["Q"], field, cutoff=D, require_graded=False)
        H = algebra_from_block(block["H"], field, cutoff=D, require_graded=False)
        from .twisted import flip_twisting, validate_twisting_map

        if block.get("kind", "flip") != "flip":
            raise ValueError("config twisting maps support kind = 'flip' only")
        t = flip_twisting(H, Q, D)
        validation = validate_twisting_map(t, D, seed=args.seed)
        flatness = None
        inputs = {"config": target}
    results = {
        "kind": "ttp",
        "max_ideg": D,
        "validation": validation.to_json(),
        "flatness": flatness.to_json() if flatness else None,
    }
    report = make_report("verify-ttp", inputs, results, args.seed)
    emit(report, args.output, args.out, round((time.monotonic() - t0) * 1000, 3))
    passed = validation.passed and (flatness is None or flatness.passed)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_examples(args):
    if is_builtin(args.target, registry.ALGEBRA_EXAMPLES):
        return cmd_ext(args)
    if is_builtin(args.target, registry.SEQUENCE_EXAMPLES):
        return cmd_verify_seq(args)
    if is_builtin(args.target, registry.TTP_EXAMPLES):
        return cmd_verify_ttp(args)
    raise KeyError(f"unknown example {args.target!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boso-kit",
        description="Exact smash-product and cohomology computations at desk scale",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_N=True):
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--q", default=None, help="scalar literal, e.g. zeta3 or -1")
        p.add_argument("--q11", default=None)
        p.add_argument("--q22", default=None)
        p.add_argument("--q12", default=None)
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--q-order", dest="q_order", type=int, default=None)
        p.add_argument("--field", default=None, help='field literal, e.g. F5 or Q(zeta4)')
        if with_N:
            p.add_argument("--N", type=int, default=8, help="max homological degree")
        p.add_argument("--max-ideg", dest="max_ideg", type=int, default=12,
                       help="max internal degree for truncated checks")
        p.add_argument("--output", choices=("json", "csv", "tex"), default="json")
        p.add_argument("--out", default=None, help="output path (stdout otherwise)")
        p.add_argument("--seed", type=int, default=0)

    p_ext = sub.add_parser("ext", help="Ext table of a finite-dimensional algebra")
    p_ext.add_argument("target", help="builtin name or config path")
    common(p_ext)
    p_ext.set_defaults(func=cmd_ext)

    p_seq = sub.add_parser("verify-seq", help="verify a deformation sequence")
    p_seq.add_argument("target", help="builtin name or config path")
    common(p_seq)
    p_seq.set_defaults(func=cmd_verify_seq)

    p_smash = sub.add_parser("smash", help="smash a sequence with a Hopf sequence")
    p_smash.add_argument("m_sequence")
    p_smash.add_argument("c_sequence")
    common(p_smash)
    p_smash.set_defaults(func=cmd_smash)

    p_ttp = sub.add_parser("verify-ttp", help="validate a twisted tensor product")
    p_ttp.add_argument("target", help="builtin name or config path")
    common(p_ttp)
    p_ttp.set_defaults(func=cmd_verify_ttp)

    p_ex = sub.add_parser("examples", help="run a named built-in example")
    p_ex.add_argument("target")
    common(p_ex)
    p_ex.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"boso-kit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
