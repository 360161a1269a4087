"""Command-line front end.

Exit codes: 0 success, 1 unexpected error, 2 parse or usage error,
3 precondition violated, 4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import blockmatrix, cadic, fraciter, maps
from .errors import (
    FormalFlowsError,
    ParseError,
    PreconditionError,
    RingError,
    VerificationError,
)
from .mapfile import load_map, map_to_json, render_map_file
from .monomial import format_monomial
from .rings import QQ, ring_from_spec
from .sumfn import fit_char0, fit_charc

FORMAT = "formalflows/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFY = 4


class Output:
    def __init__(self, command: str, as_json: bool):
        self.as_json = as_json
        self.payload = {"format": FORMAT, "command": command}
        self.lines: list[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def field(self, key, value):
        self.payload[key] = value

    def map(self, key: str, g: maps.FormalMap, name: str, comments=()):
        self.payload[key] = map_to_json(g, name)
        self.lines.append(render_map_file(g, name, comments).rstrip("\n"))

    def render(self) -> str:
        if self.as_json:
            return json.dumps(self.payload, indent=2, sort_keys=False) + "\n"
        return "\n".join(self.lines) + "\n"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise ParseError(f"--{name.replace('_', '-')} is required for '{args.command}'")
    return val


def _load(args, which="map"):
    return load_map(_need(args, which), args.cap_override)


def _report_integrality(out: Output, h, base):
    bad = fraciter.integrality_report(h, base)
    entries = [
        {"component": i + 1, "monomial": format_monomial(m), "coeff": str(c)} for i, m, c in bad
    ]
    out.field("integrality", {"base_ring": str(base), "outside": entries})
    if base == QQ:
        return ["integrality: base ring Q, nothing to check"]
    if not bad:
        return [f"integrality: all coefficients lie in {base}"]
    lines = [f"integrality: {len(bad)} coefficient(s) outside {base}"]
    lines += [f"  component {e['component']} {e['monomial']}: {e['coeff']}" for e in entries]
    return lines


def cmd_iterate(args, out):
    g = _load(args)
    k = _need(args, "k")
    out.map("result", maps.iterate(g, k), f"g_iter_{k}".replace("-", "m"))


def cmd_inverse(args, out):
    g = _load(args)
    out.map("result", maps.invert(g), "g_inv")


def cmd_compose(args, out):
    f, g = _load(args), _load(args, "map2")
    out.map("result", maps.compose(f, g), "f_o_g")


def cmd_frac(args, out):
    g = _load(args)
    alpha = _rational(_need(args, "alpha"))
    h = fraciter.frac_iterate(g, alpha)
    notes = _report_integrality(out, h, g.ring)
    out.field("alpha", str(alpha))
    out.map("result", h, "g_frac", comments=[f"alpha = {alpha}"] + notes)


def cmd_root(args, out):
    g = _load(args)
    n = _need(args, "n")
    h = fraciter.nth_root(g, n)
    if maps.iterate(h, n) != g.change_ring(QQ):
        raise VerificationError("root does not reproduce the input map")
    notes = _report_integrality(out, h, g.ring)
    out.field("n", n)
    out.map("result", h, f"g_root_{n}", comments=[f"compositional root of order {n}"] + notes)


def cmd_cadic(args, out):
    g = _load(args)
    c = g.ring.characteristic
    if c == 0:
        raise PreconditionError("cadic needs a ring of positive characteristic")
    raw = _need(args, "digits")
    try:
        digs = tuple(int(d) for d in raw.split(","))
    except ValueError:
        raise ParseError(f"bad digit list {raw!r}") from None
    z = cadic.CAdicInt(c, digs)
    out.field("digits", list(z.digits))
    out.field("modulus", z.modulus)
    h = cadic.cadic_iterate(g, z)
    out.map("result", h, "g_cadic",
            comments=[f"z digits {z} (mod {c}^{z.precision} = {z.modulus}), value {z.value}"])


def cmd_cadic_root(args, out):
    g = _load(args)
    n = _need(args, "n")
    h = cadic.cadic_root(g, n)
    out.field("n", n)
    out.map("result", h, f"g_root_{n}", comments=[f"compositional root of order {n}, via the c-adic integer 1/{n}"])


def cmd_order(args, out):
    g = _load(args)
    bound = args.order_bound or 64
    n = maps.order_upto(g, bound)
    out.field("order", n)
    out.field("bound", bound)
    out.field("cap", g.cap)
    if n is None:
        out.text(f"order: none <= {bound} at cap {g.cap}")
    else:
        out.text(f"order: {n} at cap {g.cap}")


def cmd_commute_check(args, out):
    g, h = _load(args), _load(args, "map2")
    a = _rational(args.alpha or "1")
    b = _rational(args.beta or "1")
    ok = fraciter.commuting_pair_check(g, h, a, b)
    out.field("alpha", str(a))
    out.field("beta", str(b))
    out.field("commute", ok)
    out.text(f"commute: {'true' if ok else 'false'} (alpha {a}, beta {b}, cap {g.cap})")
    if not ok:
        raise VerificationError("fractional iterates do not commute")


def cmd_sumfn_fit(args, out):
    if args.map:
        _sumfn_fit_map(args, out)
        return
    raw = _need(args, "values")
    if args.char:
        R = ring_from_spec("Fp", args.char)
    else:
        R = ring_from_spec(args.ring or "Q")
    vals = [R.parse(v) for v in raw.split(",")]
    h = fit_char0(vals, R) if R.characteristic == 0 else fit_charc(vals, R)
    n = max(len(vals), len(h.coeffs)) + (0 if R.characteristic else 2)
    table = h.values(n)
    out.field("ring", str(R))
    out.field("coefficients", [R.format(c) for c in h.coeffs])
    out.field("values", [R.format(v) for v in table])
    out.text(f"ring: {R}")
    out.text(f"coefficients: {h.to_text()}")
    out.text("values: " + " ".join(R.format(v) for v in table))


def _sumfn_fit_map(args, out):
    g = _load(args)
    rows = []
    if g.ring.characteristic == 0:
        interp = fraciter.interpolant(g)
        for m, P in interp.polys.items():
            for i, coeffs in enumerate(P.power_coefficients()):
                if coeffs:
                    poly = " + ".join(f"({c})*t^{e}" for e, c in enumerate(coeffs) if c)
                    rows.append((i + 1, format_monomial(m), poly))
    else:
        for m, (period, hs) in cadic.coefficient_sumfunctions(g).items():
            for i, h in enumerate(hs):
                if not h.is_zero():
                    rows.append((i + 1, format_monomial(m), f"{h.to_text()} period {period}"))
    out.field("coefficients", [{"component": i, "monomial": m, "fit": s} for i, m, s in rows])
    for i, m, s in rows:
        out.text(f"component {i} {m}: {s}")


def _matrix_limit(c: int) -> int:
    return 4 if c in (2, 3) else 3


def cmd_matrix(args, out):
    c, r = _need(args, "char"), args.r if args.r is not None else 1
    if r > _matrix_limit(c):
        raise PreconditionError(f"r = {r} exceeds the CLI limit {_matrix_limit(c)} for c = {c}")
    B = blockmatrix.block_matrix(c, r)
    out.field("char", c)
    out.field("r", r)
    out.field("rows", B.rows())
    out.text(B.to_block_notation() if args.blocks else B.to_text())


def cmd_factor(args, out):
    h = _load(args)
    u, torsion, s = fraciter.factor_finite_linear_part(h, args.order_bound or 24)
    out.field("s", s)
    out.text(f"# linear part has order {s}")
    out.map("tangent", u, "u", comments=["tangent-to-identity factor, commutes with h"])
    out.map("torsion", torsion, "torsion", comments=[f"h^-1 o u, order {s}"])


COMMANDS = {
    "iterate": cmd_iterate,
    "inverse": cmd_inverse,
    "compose": cmd_compose,
    "frac": cmd_frac,
    "root": cmd_root,
    "cadic": cmd_cadic,
    "cadic-root": cmd_cadic_root,
    "order": cmd_order,
    "commute-check": cmd_commute_check,
    "sumfn-fit": cmd_sumfn_fit,
    "matrix": cmd_matrix,
    "factor": cmd_factor,
}


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="formalflows", description="Exact iteration of formal maps.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--map")
    p.add_argument("--map2")
    p.add_argument("--k", type=int)
    p.add_argument("--alpha")
    p.add_argument("--beta", help="second exponent for commute-check")
    p.add_argument("--n", type=int)
    p.add_argument("--digits")
    p.add_argument("--char", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--blocks", action="store_true", help="render r=2 matrices as multiples of T")
    p.add_argument("--values", help="comma-separated values for sumfn-fit")
    p.add_argument("--ring", choices=["Z", "Q"], help="ring for sumfn-fit values")
    p.add_argument("--cap-override", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--order-bound", type=int)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        stderr.write(f"formalflows: {exc}\n")
        return EXIT_PARSE
    out = Output(args.command, args.json)
    try:
        COMMANDS[args.command](args, out)
    except VerificationError as exc:
        stdout.write(out.render())
        stderr.write(f"formalflows: verification failed: {exc}\n")
        return EXIT_VERIFY
    except (ParseError, RingError) as exc:
        stderr.write(f"formalflows: parse error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        stderr.write(f"formalflows: precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except FormalFlowsError as exc:
        stderr.write(f"formalflows: {exc}\n")
        return EXIT_ERROR
    except OSError as exc:
        stderr.write(f"formalflows: {exc}\n")
        return EXIT_PARSE
    stdout.write(out.render())
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
