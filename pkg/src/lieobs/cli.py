"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violated,
3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .ce import cohomology
from .coup import combine
from .errors import InputError, InvariantViolation, NotCouplingHomomorphism, NotDerivation
from .lie import center, derivation_spaces, validate
from .linalg import format_fraction
from .obstruction import construct_extension, obstruction_class, verify_independence

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_IO = 0, 1, 2, 3

COMMANDS = ("analyze", "coupling-check", "obstruction", "extend", "combine", "cohomology", "independence")


@dataclass
class RunConfig:
    command: str
    inputs: list
    output: str | None = None
    fmt: str = "json"
    seed: int | None = None
    trials: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command}")
        if self.command != "independence" and (self.seed is not None or self.trials is not None):
            raise ValueError("--seed and --trials only apply to 'independence'")


def _fmt_vec(values) -> str:
    return "(" + ", ".join(format_fraction(v) for v in values) + ")"


def _fmt_combination(terms, prefix: str) -> str:
    out = ""
    for k, v in terms:
        sign = "-" if v < 0 else "+"
        mag = "" if abs(v) == 1 else format_fraction(abs(v)) + " "
        out += f" {sign} {mag}{prefix}{k + 1}"
    out = out.strip()
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _emit(config: RunConfig, payload: dict, text: str) -> None:
    body = io.dumps(payload) if config.fmt == "json" else text.rstrip("\n") + "\n"
    if config.output:
        try:
            Path(config.output).write_text(body)
        except OSError as exc:
            raise io.ParseError(f"cannot write {config.output}: {exc}") from exc
    else:
        sys.stdout.write(body)


def run_analyze(config: RunConfig) -> int:
    g = io.parse_algebra(io.read_json(config.inputs[0]))
    report = validate(g)
    if not report.valid:
        _emit(config, {"valid": False, "violations": report.summary()}, f"invalid: {report.summary()}")
        return EXIT_INPUT
    spaces = derivation_spaces(g)
    z = center(g)
    payload = {
        "valid": True,
        "dim": g.dim,
        "center_dim": z.dim,
        "center_basis": [io.rats(v) for v in z.vectors()],
        "der_dim": spaces.der.dim,
        "inn_dim": spaces.inn.dim,
        "out_dim": spaces.out_dim,
        "out_algebra": io.algebra_json(spaces.out_algebra),
    }
    lines = [
        f"algebra of dimension {g.dim}: " + ", ".join(g.basis_names),
        f"center {z.dim}, der {spaces.der.dim}, inn {spaces.inn.dim}, out {spaces.out_dim}",
    ]
    grouped: dict = {}
    for i, j, k, v in spaces.out_bracket:
        grouped.setdefault((i, j), []).append((k, v))
    for (i, j), terms in sorted(grouped.items()):
        lines.append(f"  [o{i + 1}, o{j + 1}] = " + _fmt_combination(terms, "o"))
    _emit(config, payload, "\n".join(lines))
    return EXIT_OK


def run_coupling_check(config: RunConfig) -> int:
    parts = io.parse_coupling_parts(io.read_json(config.inputs[0]))
    try:
        c = io.validate_coupling(*parts)
    except NotCouplingHomomorphism as exc:
        payload = {
            "valid": False,
            "error": "NotCouplingHomomorphism",
            "pair": list(exc.pair),
            "defect": io.matrix_json(exc.defect),
            "outer_distance": exc.distance,
        }
        _emit(config, payload, f"not a coupling: {exc}")
        return EXIT_INPUT
    except NotDerivation as exc:
        _emit(config, {"valid": False, "error": "NotDerivation", "index": exc.index}, f"not a coupling: {exc}")
        return EXIT_INPUT
    payload = {
        "valid": True,
        "center_dim": c.zmodule.module_dim,
        "center_action": [io.matrix_json(a) for a in c.zmodule.action],
        "outer": [io.rats(v) for v in c.outer_images()],
    }
    lines = [f"valid coupling; center dimension {c.zmodule.module_dim}"]
    for i, v in enumerate(c.outer_images()):
        lines.append(f"  Xi(X{i + 1}) in Out: {_fmt_vec(v)}")
    _emit(config, payload, "\n".join(lines))
    return EXIT_OK


def run_obstruction(config: RunConfig) -> int:
    c = io.parse_coupling(io.read_json(config.inputs[0]))
    r = obstruction_class(c)
    text = (
        f"center dimension {r.center_dim}, dim H^3 = {r.betti3}\n"
        f"class {_fmt_vec(r.cls.coordinates)}: {'trivial' if r.trivial else 'NONTRIVIAL'}"
    )
    _emit(config, io.obstruction_json(r), text)
    return EXIT_OK


def run_extend(config: RunConfig) -> int:
    c = io.parse_coupling(io.read_json(config.inputs[0]))
    e = construct_extension(c)
    if e is None:
        cls = obstruction_class(c).cls
        _emit(config, {"extended": False, "class": io.class_json(cls)}, f"no extension: obstruction class {_fmt_vec(cls.coordinates)}")
        return EXIT_OK
    text = f"extension of dimension {e.total.dim}: " + ", ".join(e.total.basis_names)
    _emit(config, io.extension_json(e), text)
    return EXIT_OK


def run_combine(config: RunConfig) -> int:
    c1 = io.parse_element(io.read_json(config.inputs[0]))
    c2 = io.parse_element(io.read_json(config.inputs[1]))
    alpha, beta = io._rational(config.extra["alpha"]), io._rational(config.extra["beta"])
    r = combine(c1, c2, alpha, beta)
    a = r.audit
    text = (
        f"alpha {format_fraction(alpha)}, beta {format_fraction(beta)}\n"
        f"uobs(c1) {_fmt_vec(a.class1.coordinates)}\nuobs(c2) {_fmt_vec(a.class2.coordinates)}\n"
        f"uobs(c3) {_fmt_vec(a.class3.coordinates)}\nlinearity: pass"
    )
    _emit(config, io.combine_json(r), text)
    return EXIT_OK


def run_cohomology(config: RunConfig) -> int:
    module = io.parse_module(io.read_json(config.inputs[0]))
    k = config.extra["degree"]
    b = cohomology(module, k).betti if 0 <= k <= module.base.dim else 0
    if not (0 <= k <= module.base.dim):
        module.require_flat()
    _emit(config, {"degree": k, "betti": b}, f"dim H^{k} = {b}")
    return EXIT_OK


def run_independence(config: RunConfig) -> int:
    c = io.parse_coupling(io.read_json(config.inputs[0]))
    report = verify_independence(c, config.trials, config.seed, workers=config.extra.get("workers", 1))
    payload = {
        "trials": report.trials,
        "seed": report.seed,
        "default_class": io.class_json(report.default),
        "classes": [io.class_json(x) for x in report.classes],
        "all_equal": report.passed,
    }
    text = f"{report.trials} trials, seed {report.seed}: all {report.trials + 1} classes equal {_fmt_vec(report.default.coordinates)}"
    _emit(config, payload, text)
    return EXIT_OK


RUNNERS = {
    "analyze": run_analyze,
    "coupling-check": run_coupling_check,
    "obstruction": run_obstruction,
    "extend": run_extend,
    "combine": run_combine,
    "cohomology": run_cohomology,
    "independence": run_independence,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which the exit-code contract reserves
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lieobs", description="Obstruction classes of Lie algebra couplings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, inputs, help, default_fmt="json"):
        p = sub.add_parser(name, help=help)
        for arg in inputs:
            p.add_argument(arg)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
        p.set_defaults(fmt=default_fmt)
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        return p

    add("analyze", ["algebra"], "center, derivations and outer derivations of an algebra", default_fmt="text")
    add("coupling-check", ["coupling"], "validate a coupling")
    add("obstruction", ["coupling"], "obstruction class of a coupling")
    add("extend", ["coupling"], "build the extension when the obstruction vanishes")
    p = add("combine", ["element1", "element2"], "linear combination of two elements of Coup(Z)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p = add("cohomology", ["module"], "Betti number of a flat module")
    p.add_argument("--degree", type=int, required=True)
    p = add("independence", ["coupling"], "check the class does not depend on the choices of lifts")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    inputs = [getattr(args, n) for n in ("algebra", "coupling", "module", "element1", "element2") if getattr(args, n, None)]
    extra = {k: getattr(args, k) for k in ("alpha", "beta", "degree", "workers") if getattr(args, k, None) is not None}
    return RunConfig(
        command=args.command,
        inputs=inputs,
        output=args.output,
        fmt=args.fmt,
        seed=getattr(args, "seed", None),
        trials=getattr(args, "trials", None),
        extra=extra,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        return RUNNERS[config.command](config)
    except io.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
