"""Command-line entry point: ``tqft <command> [flags]``.

Reports are JSON by default (``--format table`` for people). Exact scalars
are printed as ``p/q`` strings. Exit status: 0 success, 1 a verification
failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra import Algebra, matrix_algebra
from .bordism import TypeMismatch
from .dsl import ParseError, parse_bordism_dsl
from .evaluate import OneDTheory, TwoDTheory, evaluate
from .frobenius import (
    FrobeniusAlgebra,
    InvalidAlgebra,
    is_semisimple,
    loads_algebra,
    partition_function,
    truncated_polynomial,
    validate,
)
from .gauge import (
    InvalidGroup,
    UnknownGroup,
    center_frobenius_algebra,
    convolution_algebra,
    count_homs,
    load_group,
    mednykh_verify,
    push_pull_map,
)
from .linalg import ExactMatrix, scalar_str
from .morita import (
    AlgebraMismatch,
    NotIntertwiner,
    adjunction_from_json,
    check_adjunction,
    check_duality_data,
    duality_from_json,
    hochschild_h0,
    hochschild_h0_relative,
    matrix_adjunction,
    standard_duality,
)


class InputError(Exception):
    pass


INPUT_ERRORS = (InputError, ParseError, TypeMismatch, UnknownGroup, InvalidGroup,
                AlgebraMismatch, NotIntertwiner, OSError, json.JSONDecodeError, ValueError,
                KeyError)


# -- inputs -----------------------------------------------------------------------

class Inputs:
    """Collects everything a report depends on, for the digest."""

    def __init__(self, command: str, args: dict):
        self.command = command
        self.args = args
        self.files: dict[str, str] = {}

    def read(self, path: str) -> str:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        self.files[os.path.basename(path)] = text
        return text

    def digest(self) -> str:
        blob = json.dumps({"command": self.command, "args": self.args, "files": self.files},
                          sort_keys=True, ensure_ascii=False)
        return "sha256:" + hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _load_group(spec: str, inputs: Inputs):
    if os.path.exists(spec):
        inputs.read(spec)
    return load_group(spec)


def _load_frobenius(spec: str, inputs: Inputs) -> FrobeniusAlgebra:
    """A file, ``truncpoly<k>`` or ``center:<group>``."""
    if os.path.exists(spec):
        return loads_algebra(inputs.read(spec))
    s = spec.strip().lower()
    m = re.fullmatch(r"truncpoly(\d+)", s)
    if m:
        return truncated_polynomial(int(m.group(1)))
    if s.startswith("center:"):
        return center_frobenius_algebra(load_group(s[len("center:"):]))
    raise InputError(f"no algebra file or builtin named {spec!r}")


def _load_plain_algebra(spec: str, inputs: Inputs) -> Algebra:
    """A file, ``matrix<n>``, ``map:<group>`` or any Frobenius builtin."""
    if os.path.exists(spec):
        return loads_algebra(inputs.read(spec), commutative=False).underlying()
    s = spec.strip().lower()
    m = re.fullmatch(r"matrix(\d+)", s)
    if m:
        return matrix_algebra(int(m.group(1)))
    if s.startswith("map:"):
        return convolution_algebra(load_group(s[len("map:"):]))
    return _load_frobenius(spec, inputs).underlying()


def _load_word(spec: str, inputs: Inputs):
    text = inputs.read(spec) if os.path.exists(spec) else spec
    return parse_bordism_dsl(text)


def _load_json(path: str, inputs: Inputs) -> dict:
    return json.loads(inputs.read(path))


# -- report values ----------------------------------------------------------------

def _matrix(m: ExactMatrix) -> list[list[str]]:
    return [[scalar_str(x) for x in row] for row in m.to_lists()]


def _scalar(x) -> str:
    return scalar_str(Fraction(x))


def _float(x: float) -> str:
    return f"{x:.12g}"


# -- commands -----------------------------------------------------------------------

def cmd_validate_algebra(ns, inputs: Inputs):
    a = _load_frobenius(ns.algebra, inputs)
    report = validate(a)
    results = {
        "dim": a.dim,
        "labels": list(a.labels),
        "violations": [{"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                       for v in report.violations],
    }
    if report.valid:
        results["semisimple"] = is_semisimple(a)
        results["partition_function"] = {str(g): _scalar(partition_function(a, g)) for g in range(3)}
    return results, report.valid


def cmd_eval(ns, inputs: Inputs):
    w = _load_word(ns.word, inputs)
    if w.dimension == 1:
        if ns.dim is None:
            raise InputError("a 1D word needs --dim")
        theory = OneDTheory(ns.dim)
    else:
        if ns.algebra is None:
            raise InputError("a 2D word needs --algebra")
        try:
            theory = TwoDTheory(_load_frobenius(ns.algebra, inputs))
        except InvalidAlgebra as exc:
            raise InputError(f"invalid algebra: {exc}") from exc
    m = evaluate(theory, w)
    results = {"word": w.dsl() if w.slices else "", "source": str(w.source),
               "target": str(w.target), "shape": [m.rows, m.cols]}
    if m.shape == (1, 1):
        results["result"] = scalar_str(m[0, 0])
    else:
        results["matrix"] = _matrix(m)
    return results, None


def cmd_count_homs(ns, inputs: Inputs):
    g = _load_group(ns.group, inputs)
    n = count_homs(g, ns.genus, ns.threads)
    return {"group": g.name, "order": g.order, "genus": ns.genus, "count": str(n),
            "partition_function": _scalar(Fraction(n, g.order))}, None


def cmd_mednykh(ns, inputs: Inputs):
    g = _load_group(ns.group, inputs)
    rep = mednykh_verify(g, ns.genus, ns.threads)
    v = rep.values
    return {"group": g.name, "order": g.order, "classes": v["classes"], "genus": ns.genus,
            "lhs": str(v["lhs"]), "rhs": _scalar(v["rhs"])}, rep.passed


def cmd_pushpull(ns, inputs: Inputs):
    from .bordism import open_surface_word

    g = _load_group(ns.group, inputs)
    m = push_pull_map(g, ns.genus, ns.inputs, ns.outputs, ns.threads)
    oracle = evaluate(TwoDTheory(center_frobenius_algebra(g)),
                      open_surface_word(ns.genus, ns.inputs, ns.outputs))
    return {"group": g.name, "genus": ns.genus, "inputs": ns.inputs, "outputs": ns.outputs,
            "basis": [g.class_label(k) for k in range(g.conjugacy.count)],
            "shape": [m.rows, m.cols], "matrix": _matrix(m),
            "matches_frobenius_evaluation": m == oracle}, m == oracle


def cmd_hochschild(ns, inputs: Inputs):
    if (ns.group is None) == (ns.algebra is None):
        raise InputError("give exactly one of --group or --algebra")
    results = {}
    if ns.group is not None:
        g = _load_group(ns.group, inputs)
        a = convolution_algebra(g)
        results["group"] = g.name
        results["conjugacy_classes"] = g.conjugacy.count
    else:
        a = _load_plain_algebra(ns.algebra, inputs)
    direct = hochschild_h0(a)
    rel = hochschild_h0_relative(a)
    results.update({"dim": a.dim, "hh0": direct, "hh0_relative_tensor": rel.dim,
                    "relative_tensor_ambient_dim": rel.projection.cols})
    ok = direct == rel.dim
    if ns.group is not None:
        ok = ok and direct == results["conjugacy_classes"]
    return results, ok


def _checks(rep) -> list[dict]:
    return [{"name": c.name, "pass": c.passed, **c.detail} for c in rep.checks]


def cmd_duality_check(ns, inputs: Inputs):
    if ns.data is not None:
        d = duality_from_json(_load_json(ns.data, inputs))
    elif ns.dim is not None:
        d = standard_duality(ns.dim)
    else:
        raise InputError("give --dim or --data")
    if ns.scale_coev != "1" or ns.scale_ev != "1":
        from .morita import DualityData
        sc, se = Fraction(ns.scale_coev), Fraction(ns.scale_ev)
        d = DualityData(d.object_dim, d.dual_dim, tuple(sc * x for x in d.coevaluation),
                        tuple(se * x for x in d.evaluation))
    rep = check_duality_data(d)
    return {"object_dim": d.object_dim, "dual_dim": d.dual_dim, "checks": _checks(rep)}, rep.passed


def cmd_adjunction_check(ns, inputs: Inputs):
    if ns.data is not None:
        adj = adjunction_from_json(_load_json(ns.data, inputs))
    else:
        adj = matrix_adjunction(ns.matrix_size)
    unit = adj.unit.scale(Fraction(ns.scale_unit))
    counit = adj.counit.scale(Fraction(ns.scale_counit))
    try:
        rep = check_adjunction(adj.f, adj.g, unit, counit)
    except NotIntertwiner as exc:
        return {"error": str(exc), **exc.witness}, False
    return {"dims": rep.values["dims"], "checks": _checks(rep)}, rep.passed


COMMANDS = {
    "validate-algebra": cmd_validate_algebra,
    "eval": cmd_eval,
    "count-homs": cmd_count_homs,
    "mednykh": cmd_mednykh,
    "pushpull": cmd_pushpull,
    "hochschild": cmd_hochschild,
    "duality-check": cmd_duality_check,
    "adjunction-check": cmd_adjunction_check,
}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=_nonneg, default=None,
                        help="worker processes for enumeration (default: all cores)")
    common.add_argument("--timing", action="store_true", help="add wall-clock duration to the report")

    p = argparse.ArgumentParser(prog="tqft", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate-algebra", parents=[common])
    s.add_argument("--algebra", required=True, help="file, truncpoly<k> or center:<group>")

    s = sub.add_parser("eval", parents=[common])
    s.add_argument("--word", required=True, help="DSL text or a file containing it")
    s.add_argument("--algebra", help="Frobenius algebra for 2D words")
    s.add_argument("--dim", type=_nonneg, help="vector space dimension for 1D words")

    for name in ("count-homs", "mednykh"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--group", required=True)
        s.add_argument("--genus", type=_nonneg, required=True)

    s = sub.add_parser("pushpull", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--genus", type=_nonneg, default=0)
    s.add_argument("--inputs", type=_nonneg, required=True)
    s.add_argument("--outputs", type=_nonneg, required=True)

    s = sub.add_parser("hochschild", parents=[common])
    s.add_argument("--group", help="use the convolution algebra of this group")
    s.add_argument("--algebra", help="file, matrix<n>, map:<group> or a Frobenius builtin")

    s = sub.add_parser("duality-check", parents=[common])
    s.add_argument("--dim", type=_nonneg, help="check the standard duality on Q^n")
    s.add_argument("--data", help="duality data file")
    s.add_argument("--scale-coev", default="1")
    s.add_argument("--scale-ev", default="1")

    s = sub.add_parser("adjunction-check", parents=[common])
    s.add_argument("--data", help="adjunction data file (default: column/row over M_n)")
    s.add_argument("--matrix-size", type=int, default=2)
    s.add_argument("--scale-unit", default="1")
    s.add_argument("--scale-counit", default="1")
    return p


def _table(report: dict) -> str:
    lines = []

    def emit(key: str, value, indent: int):
        pad = " " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 2)
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            width = max((len(str(x)) for row in value for x in row), default=1)
            for row in value:
                lines.append(pad + "  [ " + "  ".join(str(x).rjust(width) for x in row) + " ]")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(pad + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key + ':':<28} {value}")

    for k, v in report.items():
        emit(k, v, 0)
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ns = build_parser().parse_args(argv)
    args = {k: v for k, v in sorted(vars(ns).items())
            if k not in ("command", "format", "timing", "threads")}
    inputs = Inputs(ns.command, args)
    start = time.perf_counter()
    try:
        results, verdict = COMMANDS[ns.command](ns, inputs)
        code = 0 if verdict in (None, True) else 1
        status = {None: "ok", True: "pass", False: "fail"}[verdict]
    except INPUT_ERRORS as exc:
        results = {"error": f"{type(exc).__name__}: {exc}"}
        code, status = 2, "input-error"
    report = {"command": ns.command, "version": __version__, "arguments": args,
              "inputs_digest": inputs.digest(), "results": results, "verdict": status}
    if ns.timing:
        report["duration_seconds"] = _float(time.perf_counter() - start)
    if ns.format == "json":
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(_table(report))
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
