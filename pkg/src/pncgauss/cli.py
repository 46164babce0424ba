"""Command-line front end (``pncgauss <subcommand> ...``)."""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from contextlib import contextmanager

import numpy as np

from .diffs import characteristic_set
from .gaussint import GInt, is_gaussian_prime, is_rational_prime, parse_gint
from .mapping import NcMapping, cosets, vector_dual_mapping
from .metrics import dmin_at_gain, l_min, zero_lmin_gains
from .residue import build_field
from .sim import ChannelConfig, compare_mappings, estimate_ser
from .verify import SUITES, verify
from .voronoi import adjacency_table, sample_surface


class UsageError(Exception):
    """Bad input; reported as a single line with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^([+-]?{_NUM})$")
_IMAG = re.compile(rf"^([+-]?)({_NUM})?i$")
_BOTH = re.compile(rf"^([+-]?{_NUM})([+-])({_NUM})?i$")


def parse_complex(text: str) -> complex:
    """Parse ``1.0+1.0i``, ``-0.5i``, ``2``, ``1-i``."""
    s = text.strip().replace(" ", "")
    if m := _REAL.match(s):
        return complex(float(m[1]), 0.0)
    if m := _IMAG.match(s):
        mag = float(m[2]) if m[2] else 1.0
        return complex(0.0, -mag if m[1] == "-" else mag)
    if m := _BOTH.match(s):
        mag = float(m[3]) if m[3] else 1.0
        return complex(float(m[1]), -mag if m[2] == "-" else mag)
    raise UsageError(f"malformed complex literal: {text!r}")


def _gint(text: str) -> GInt:
    try:
        return parse_gint(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _field(text: str):
    q = _gint(text)
    if not is_gaussian_prime(q):
        raise UsageError("q is not a Gaussian prime")
    return build_field(q)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            yield fh


# subcommands ----------------------------------------------------------------------

def cmd_field(args) -> int:
    f = _field(args.q)
    print(_dump({"q": f.q.to_json(), "norm": f.order,
                 "elements": [e.to_json() for e in f.elements], "mu": f.mu}))
    return 0


def cmd_cosets(args) -> int:
    f = _field(args.q)
    try:
        m = NcMapping.make(_gint(args.alpha), _gint(args.beta), f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    part = cosets(m, f)
    print(_dump({
        "q": f.q.to_json(),
        "mapping": [m.alpha.to_json(), m.beta.to_json()],
        "classes": [
            {"nc_symbol": label.to_json(), "members": [[a.to_json(), b.to_json()] for a, b in mem]}
            for label, mem in part.classes
        ],
    }))
    return 0


def cmd_dual_map(args) -> int:
    q = _gint(args.q)
    if q.im != 0 or not is_rational_prime(abs(q.re)):
        raise UsageError("dual-map requires a real integer prime q")
    try:
        sol = vector_dual_mapping(_gint(args.dA), _gint(args.dB), abs(q.re))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if sol is None:
        print("NO_DUAL_MAPPING")
    else:
        print(_dump({"q": sol.q, "alpha": [sol.alpha_re, sol.alpha_im],
                     "matrix": [list(r) for r in sol.matrix]}))
    return 0


def _gain_json(g):
    return g.to_json()


def cmd_chardiffs(args) -> int:
    f = _field(args.q)
    for cd in characteristic_set(f):
        print(_dump({"dA": cd.dA.to_json(), "dB": cd.dB.to_json(), "eta": _gain_json(cd.generator)}))
    return 0


def cmd_gains(args) -> int:
    f = _field(args.q)
    if args.radius <= 0:
        raise UsageError("radius must be positive")
    for g, cd in zero_lmin_gains(f, args.radius):
        print(_dump({"eta": _gain_json(g), "char": cd.to_json(), "dmin_opt": dmin_at_gain(cd)}))
    return 0


def cmd_lmin(args) -> int:
    f = _field(args.q)
    value, cd = l_min(parse_complex(args.eta), f)
    print(_dump({"lmin": value, "argmin": cd.to_json()}))
    return 0


def cmd_voronoi(args) -> int:
    f = _field(args.q)
    if args.resolution < 2:
        raise UsageError("resolution must be at least 2")
    if args.radius <= 0:
        raise UsageError("radius must be positive")
    r = args.radius
    grid = sample_surface(f, (-r, r, -r, r), args.resolution, args.metric)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["eta_re", "eta_im", "value", "gen_dA", "gen_dB", "on_edge"])
        for eta, value, cd, edge in grid.rows():
            w.writerow([repr(float(eta.real)), repr(float(eta.imag)), repr(value),
                        str(cd.dA), str(cd.dB), "true" if edge else "false"])
    return 0


def cmd_adjacency(args) -> int:
    f = _field(args.q)
    table = adjacency_table(f)
    out = [
        {"generator": cd.to_json(), "adjacent": [c.to_json() for c in sorted(table[cd], key=type(cd).key)]}
        for cd in characteristic_set(f)
    ]
    print(_dump(out))
    return 0


def _config(args, snr_db: float) -> ChannelConfig:
    f = _field(args.q)
    hb = parse_complex(args.hB)
    if hb == 0:
        raise UsageError("hB must be nonzero")
    return ChannelConfig(f, parse_complex(args.hA), hb, snr_db)


def cmd_simulate(args) -> int:
    cfg = _config(args, args.snr_db)
    parts = args.mapping.split(",")
    if len(parts) != 2:
        raise UsageError("--mapping expects 'alpha,beta'")
    try:
        m = NcMapping.make(_gint(parts[0]), _gint(parts[1]), cfg.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.trials < 1:
        raise UsageError("trials must be positive")
    est = estimate_ser(cfg, m, args.trials, args.seed)
    print(_dump(est.to_json()))
    return 0


def _sweep(spec: str) -> list[float]:
    try:
        lo, step, hi = (float(x) for x in spec.split(":"))
    except ValueError:
        raise UsageError("--snr-sweep expects start:step:stop") from None
    if step <= 0 or hi < lo:
        raise UsageError("--snr-sweep expects start:step:stop with step > 0")
    return [float(x) for x in np.round(np.arange(lo, hi + step / 2, step), 10)]


def cmd_compare(args) -> int:
    snrs = _sweep(args.snr_sweep)
    if args.trials < 1:
        raise UsageError("trials must be positive")
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["snr_db", "mapping", "ser", "ci95"])
        for snr in snrs:
            for row in compare_mappings(_config(args, snr), args.trials, args.seed):
                w.writerow([repr(snr), f"{row.mapping.alpha},{row.mapping.beta}",
                            repr(row.estimate.ser), repr(row.estimate.half_width_95)])
    return 0


def cmd_verify(args) -> int:
    f = _field(args.q)
    reports = verify(f, args.suite)
    ok = True
    for r in reports:
        ok &= r.passed
        print(f"{r.status} {r.suite} q={f.q} {_dump(r.details)}")
        for msg in r.failures:
            print(f"  - {msg}")
    return 0 if ok else 1


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pncgauss", description="Linear PNC over Gaussian-integer residue fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("field", cmd_field, "print the representatives of Z[i]/q and mu as JSON")
    sp.add_argument("--q", required=True)

    sp = add("cosets", cmd_cosets, "print the coset partition induced by (alpha, beta)")
    sp.add_argument("--q", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)

    sp = add("dual-map", cmd_dual_map, "vector-formulation dual mapping for a real prime q")
    sp.add_argument("--q", required=True)
    sp.add_argument("--dA", required=True)
    sp.add_argument("--dB", default="1", help="second difference component (default 1)")

    sp = add("chardiffs", cmd_chardiffs, "list characteristic differences as JSON lines")
    sp.add_argument("--q", required=True)

    sp = add("gains", cmd_gains, "list zero-l_min channel gains within a radius as JSON lines")
    sp.add_argument("--q", required=True)
    sp.add_argument("--radius", type=float, default=2.0)

    sp = add("lmin", cmd_lmin, "l_min and its minimizing characteristic difference at eta")
    sp.add_argument("--q", required=True)
    sp.add_argument("--eta", required=True)

    sp = add("voronoi", cmd_voronoi, "sample the l_min or d_min surface on a square grid (CSV)")
    sp.add_argument("--q", required=True)
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--resolution", type=int, default=200)
    sp.add_argument("--metric", choices=("lmin", "dmin"), default="dmin")
    sp.add_argument("--out", default=None)

    sp = add("adjacency", cmd_adjacency, "generator adjacency list as JSON")
    sp.add_argument("--q", required=True)

    for name, func, text in (
        ("simulate", cmd_simulate, "Monte-Carlo SER of one mapping (JSON)"),
        ("compare", cmd_compare, "SER of every canonical mapping over an SNR sweep (CSV)"),
    ):
        sp = add(name, func, text)
        sp.add_argument("--q", required=True)
        sp.add_argument("--hA", required=True)
        sp.add_argument("--hB", default="1")
        sp.add_argument("--trials", type=int, default=100000)
        sp.add_argument("--seed", type=int, default=0)
        if name == "simulate":
            sp.add_argument("--snr-db", type=float, required=True)
            sp.add_argument("--mapping", required=True, help="alpha,beta e.g. i,-i")
        else:
            sp.add_argument("--snr-sweep", required=True, help="start:step:stop in dB")
            sp.add_argument("--out", default=None)

    sp = add("verify", cmd_verify, "run oracle suites and report PASS/FAIL")
    sp.add_argument("--q", required=True)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return p


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--beta -i`` into ``--beta=-i`` so negative literals are not read as flags."""
    out: list[str] = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None
                and nxt.startswith("-") and not nxt.startswith("--") and nxt != "-h"):
            out.append(f"{tok}={nxt}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

