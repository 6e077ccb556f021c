"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
errors (bad arguments, unknown space, unparsable expression).
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from dataclasses import dataclass, field

from .expr import ParseError, parse_expr, parse_unipoly
from .numfield import QQ, format_scalar, interpolate
from .pvcat import (
    CATALOG, Check, NotRadialError, ProportionalityError, abstract_component, bfunction,
    evaluate_xye, igusa_closure, load_space, radial_component, u_points, verify_space,
)
from .smith import SPresentation, UPresentation, s_normalize, u_normalize


class UsageError(Exception):
    pass


REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "checks", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "space": {"type": "string"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "flag"]},
                    "detail": {"type": "string"},
                },
            },
        },
        "values": {"type": "object"},
        "elapsed_ms": {"type": ["number", "null"]},
    },
}


@dataclass
class Report:
    command: str
    space: str | None = None
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def check(self, name, passed, detail=""):
        self.checks.append(Check(name, "pass" if passed else "fail", detail))

    def to_dict(self):
        out = {"command": self.command}
        if self.space is not None:
            out["space"] = self.space
        out["checks"] = [c.as_dict() for c in self.checks]
        if self.values:
            out["values"] = self.values
        out["elapsed_ms"] = self.elapsed_ms
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(
            command=data["command"],
            space=data.get("space"),
            checks=[Check(c["name"], c["status"], c.get("detail", "")) for c in data["checks"]],
            values=data.get("values", {}),
            elapsed_ms=data.get("elapsed_ms"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.space is not None:
            lines.append(f"space: {self.space}")
        for c in self.checks:
            lines.append(f"{c.status.upper():4} {c.name}" + (f": {c.detail}" if c.detail else ""))
        for key, value in self.values.items():
            if isinstance(value, list):
                value = "[" + ", ".join(str(v) for v in value) + "]"
            lines.append(f"{key} = {value}")
        if self.elapsed_ms is not None:
            lines.append(f"elapsed_ms = {self.elapsed_ms}")
        n_fail = sum(c.status == "fail" for c in self.checks)
        lines.append("result: " + ("all checks passed" if not n_fail else f"{n_fail} check(s) failed"))
        return "\n".join(lines) + "\n"


def _space(name):
    try:
        return load_space(name)
    except KeyError:
        raise UsageError(f"unknown space {name!r}; catalog: {', '.join(CATALOG)}") from None
    except (ValueError, ParseError) as exc:
        raise UsageError(f"cannot load space {name!r}: {exc}") from None


def cmd_spaces(args, rep):
    rep.values["spaces"] = [f"{name}: {desc}" for name, (_, _, desc) in CATALOG.items()]


def cmd_verify(args, rep):
    space = _space(args.space)
    rep.space = space.name
    result = verify_space(space, args.max_power)
    rep.checks.extend(result.checks)
    rep.values.update(result.values)


def cmd_bfunction(args, rep):
    space = _space(args.space)
    rep.space = space.name
    K = space.d0 + 3 if args.max_power is None else args.max_power
    if K < space.d0 + 2:
        raise UsageError(f"--max-power must be at least d0 + 2 = {space.d0 + 2}")
    try:
        b = bfunction(space, K)
    except ProportionalityError as exc:
        rep.check("b_proportionality", False, str(exc))
        return
    rep.check("b_proportionality", True, f"Y Delta^(k+1) = b(k) Delta^k for k <= {K}")
    rep.values["b"] = [format_scalar(v) for v in b]


def cmd_ufunction(args, rep):
    space = _space(args.space)
    rep.space = space.name
    K = space.d0 + 3 if args.max_power is None else args.max_power
    if K < space.d0 + 2:
        raise UsageError(f"--max-power must be at least d0 + 2 = {space.d0 + 2}")
    try:
        b = bfunction(space, K)
    except ProportionalityError as exc:
        rep.check("b_proportionality", False, str(exc))
        return
    pts = u_points(space, b)
    u = interpolate(pts[:space.d0 + 1])
    misses = [t for t, v in pts[space.d0 + 1:] if u(t) != v]
    rep.check("u_stability", not misses, "extra b-points lie on u_bar" if not misses
              else f"misses at t = {misses}")
    rep.check("u_at_zero", u(0) == 0)
    rep.values["u"] = u.format()


def cmd_radial(args, rep):
    space = _space(args.space)
    rep.space = space.name
    try:
        words = parse_expr(args.expr, "XYE")
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    op = evaluate_xye(words, space)
    try:
        radial = radial_component(space, op)
    except NotRadialError as exc:
        rep.check("radial", False, str(exc))
        return
    rep.values["radial"] = radial.format()
    try:
        abstract = abstract_component(space, words)
    except (ProportionalityError, ArithmeticError) as exc:
        rep.check("radial_vs_abstract", False, str(exc))
        return
    rep.check("radial_vs_abstract", radial == abstract,
              "agrees with U(QQ, u_bar, d0)" if radial == abstract else f"abstract side gives {abstract}")


def cmd_normalform(args, rep):
    if (args.u is None) == (args.f is None):
        raise UsageError("give exactly one of --u and --f")
    if args.n < 1:
        raise UsageError("--n must be a positive integer")
    try:
        poly = parse_unipoly(args.u if args.u is not None else args.f)
        words = parse_expr(args.expr, "xye")
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    terms = {"".join(w): c for w, c in words.items()}
    if args.u is not None:
        nf = u_normalize(terms, UPresentation(QQ, poly, args.n))
    else:
        nf = s_normalize(terms, SPresentation(QQ, poly, args.n))
    rep.values["normal_form"] = nf.format()


def cmd_igusa(args, rep):
    space = _space(args.space)
    rep.space = space.name
    if args.depth < 1:
        raise UsageError("--depth must be at least 1")
    dims = igusa_closure(space, args.depth)
    rep.values["dims"] = dims
    stable = len(dims) >= 2 and dims[-1] == dims[-2]
    rep.values["closure"] = (f"stabilized at {dims[-1]}" if stable
                             else "still growing at the requested depth")


def build_parser():
    parser = argparse.ArgumentParser(prog="smithalg", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--out", help="write the report to this file as well")
    parser.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        # accepted after the subcommand as well
        p.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS)
        p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
        return p

    common(sub.add_parser("spaces", help="list the built-in catalog")).set_defaults(fn=cmd_spaces)

    for name, fn, helptext in [("verify", cmd_verify, "run the verification suite"),
                               ("bfunction", cmd_bfunction, "b(k) with Y Delta^(k+1) = b(k) Delta^k"),
                               ("ufunction", cmd_ufunction, "interpolated u_bar")]:
        p = common(sub.add_parser(name, help=helptext))
        p.add_argument("space", help="catalog name or space-definition file")
        p.add_argument("--max-power", type=int, default=None)
        p.set_defaults(fn=fn)

    p = common(sub.add_parser("radial", help="radial component of a word in X, Y, E"))
    p.add_argument("space")
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=cmd_radial)

    p = common(sub.add_parser("normalform", help="normal form in U(QQ, u, n) or S(QQ, f, n)"))
    p.add_argument("--u")
    p.add_argument("--f")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=cmd_normalform)

    p = common(sub.add_parser("igusa", help="Lie closure dimensions of {X, Y}"))
    p.add_argument("space")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(fn=cmd_igusa)
    return parser


def _echo(argv):
    return shlex.join(argv)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report(command=_echo(argv))
    start = time.perf_counter()
    try:
        args.fn(args, rep)
    except UsageError as exc:
        print(f"smithalg: error: {exc}", file=stderr)
        return 2
    if args.timing:
        rep.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    text = rep.to_json() if args.format == "json" else rep.to_text()
    stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if rep.ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
