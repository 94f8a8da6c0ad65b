"""Command-line front end.

Every report starts with a ``#`` provenance header (tool version and input
hashes) and contains no timestamps, so equal inputs give byte-identical
output.  Exit codes: 0 success, 1 computational failure, 2 usage or input
error.  Messages carry the prefixes ``usage error:``, ``input error:``,
``infeasible:`` or ``computation error:``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from . import catalog
from .complex import (
    InfeasibleSize,
    cohomology_dim,
    format_cochain,
    homology,
    is_coboundary,
    is_cocycle,
    parse_cochain,
    shift_cochain,
)
from .coeff import is_prime
from .diagram import BraidParseError, parse_braid, state_sum_2, state_sum_3_shadow, tangle_state_sum
from .quandle import QuandleError, build_quandle, format_quandle, orbit_decomposition, quandle_isomorphic, trivial
from .reproduce import CRITERIA, run_criteria
from .skein import solve_skein, solve_skein_shadow

__all__ = ["main", "run", "UsageError", "InputError"]

CATALOG_PREFIX = "catalog:"
CATALOG_COCYCLES = {
    "theta": catalog.theta_z8_t5,
    "theta-literal": catalog.theta_z8_t5_literal,
    "s4": catalog.s4_cocycle,
    "r4": catalog.r4_cocycle,
    "xi": catalog.r3_xi,
    "phi3": catalog.r3_phi3,
}


class UsageError(Exception):
    pass


class InputError(UsageError):
    """Unreadable or malformed input file."""


class ComputationFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.ok = True

    def add(self, line: str = ""):
        self.lines.append(line)


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _quandle(spec: str, inputs: dict):
    try:
        X = build_quandle(spec)
    except QuandleError as exc:
        raise UsageError(f"bad quandle: {exc}") from None
    inputs[f"quandle {spec}"] = _hash(format_quandle(X))
    return X


def _cocycle(source: str, X, inputs: dict):
    if source.startswith(CATALOG_PREFIX):
        name = source[len(CATALOG_PREFIX):]
        if name not in CATALOG_COCYCLES:
            raise UsageError(f"unknown catalog cocycle {name!r}; known: {', '.join(sorted(CATALOG_COCYCLES))}")
        f = CATALOG_COCYCLES[name]()
        if X is not None and f.X != X:
            raise UsageError(f"catalog cocycle {name!r} lives on {f.X.label}, not {X.label}")
        text = format_cochain(f)
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read cocycle file {source!r}: {exc.strerror}") from None
        try:
            f = parse_cochain(text, X)
        except (ValueError, QuandleError) as exc:
            raise InputError(f"bad cocycle file {source!r}: {exc}") from None
    inputs[f"cocycle {source}"] = _hash(text)
    return f


def _braid(text: str, closed: bool):
    try:
        return parse_braid(text, closed=closed)
    except (BraidParseError, ValueError) as exc:
        raise UsageError(f"bad braid {text!r}: {exc}") from None


def _colors(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad color vector {text!r}; expected e.g. 0,1") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_homology(args, rep: Report, inputs: dict):
    X = _quandle(args.quandle, inputs)
    if args.variant not in ("R", "D", "Q"):
        raise UsageError("variant must be R, D or Q")
    if args.n < 1:
        raise UsageError("degree must be at least 1")
    H = homology(X, args.n, args.variant)
    rep.add(f"H_{args.n}^{args.variant}({X.label}; Z) = {H}")
    rep.data.update(quandle=X.label, n=args.n, variant=args.variant, homology=str(H), free_rank=H.free_rank, torsion=list(H.torsion))
    if args.mod is not None:
        if not is_prime(args.mod):
            raise UsageError("--mod needs a prime")
        d = cohomology_dim(X, args.n, args.mod, args.variant)
        rep.add(f"dim H^{args.n}_{args.variant}({X.label}; Z_{args.mod}) = {d}")
        rep.data.update(mod=args.mod, cohomology_dim=d)


def _invariant(args, rep: Report, inputs: dict, shadow: bool):
    X = _quandle(args.quandle, inputs)
    f = _cocycle(args.cocycle, X, inputs)
    want = 3 if shadow else 2
    if f.n != want:
        raise UsageError(f"{'shadow-invariant' if shadow else 'invariant'} needs a {want}-cocycle; file has degree {f.n}")
    if args.p is not None and args.p != f.p:
        raise UsageError(f"modulus mismatch: cocycle has p={f.p}, --p {args.p}")
    top = _colors(args.top)
    left = getattr(args, "shadow_left", None)
    b = _braid(args.braid, closed=top is None)
    rep.data.update(braid=args.braid, quandle=X.label, p=f.p, cocycle_is_cocycle=is_cocycle(f))
    if not is_cocycle(f):
        rep.add("warning: the cochain is not a cocycle; the result need not be an invariant")
    if top is not None:
        if shadow and left is None:
            raise UsageError("a shadow tangle query needs --shadow-left")
        try:
            bottom, w = tangle_state_sum(b, X, f, top, shadow_left=left if shadow else None)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rep.add(f"top {top} -> bottom {bottom}: {w}")
        rep.data.update(top=list(top), bottom=list(bottom), value=str(w))
        return
    s = state_sum_3_shadow(b, X, f) if shadow else state_sum_2(b, X, f)
    rep.add(str(s))
    rep.data.update(value=str(s), coefficients=list(s.coeffs), colorings=s.augmentation())


def cmd_invariant(args, rep, inputs):
    _invariant(args, rep, inputs, shadow=False)


def cmd_shadow_invariant(args, rep, inputs):
    _invariant(args, rep, inputs, shadow=True)


def cmd_skein(args, rep: Report, inputs: dict):
    X = _quandle(args.quandle, inputs)
    f = _cocycle(args.cocycle, X, inputs)
    if not args.tangle:
        raise UsageError("skein needs at least one --tangle")
    tangles = [_braid(t, closed=False) for t in args.tangle]
    if len({t.width for t in tangles}) != 1:
        raise UsageError("all tangles must have the same width")
    if (f.n == 3) != bool(args.shadow):
        raise UsageError("use a 3-cocycle with --shadow and a 2-cocycle without it")
    try:
        sy = (solve_skein_shadow if args.shadow else solve_skein)(tangles, X, f)
    except ValueError as exc:
        rep.add(f"boundary profile: differ ({exc})")
        rep.data.update(profile_equal=False, message=str(exc))
        rep.ok = False
        return
    for ln in sy.transcript():
        rep.add(ln)
    rep.data.update(
        tangles=args.tangle,
        quandle=X.label,
        p=sy.p,
        shadow=sy.shadow,
        profile_equal=True,
        value_tuples=[[str(t) for t in tup] for tup in sy.value_tuples],
        class_sizes=sy.class_sizes,
        equations=sy.equations(),
        basis=[[str(c) for c in b] for b in sy.basis],
    )


def cmd_shift(args, rep: Report, inputs: dict):
    X = _quandle(args.quandle, inputs) if args.quandle else None
    f = _cocycle(args.cocycle, X, inputs)
    g = shift_cochain(f)
    src, dst = is_cocycle(f), is_cocycle(g)
    rep.add(f"input: degree {f.n} on {f.X.label}, p={f.p}, cocycle: {src}")
    rep.add(f"shifted: degree {g.n}, cocycle: {dst}")
    if dst:
        rep.add(f"shifted is a coboundary: {is_coboundary(g)}")
    for ln in format_cochain(g).splitlines():
        rep.add(ln)
    rep.data.update(input_cocycle=src, shifted_cocycle=dst, shifted=format_cochain(g))


def cmd_orbit(args, rep: Report, inputs: dict):
    X = _quandle(args.quandle, inputs)
    orb = orbit_decomposition(X)
    k = len(orb.orbits)
    iso = quandle_isomorphic(orb.orbit_quandle, trivial(k))
    if iso is not None:
        rep.add(f"Orb ≅ trivial:{k}")
    else:
        rep.add(f"Orb has {k} elements and is not trivial:")
        for ln in format_quandle(orb.orbit_quandle).splitlines():
            rep.add(ln)
    for i, o in enumerate(orb.orbits):
        rep.add(f"orbit {i}: {' '.join(map(str, o))}")
    rep.data.update(quandle=X.label, orbits=[list(o) for o in orb.orbits], trivial=iso is not None)


def cmd_verify(args, rep: Report, inputs: dict):
    which = sorted(CRITERIA)
    if args.criteria:
        try:
            which = sorted({int(c) for c in args.criteria.split(",")})
        except ValueError:
            raise UsageError("--criteria takes a comma-separated list such as 1,3,7") from None
        if any(c not in CRITERIA for c in which):
            raise UsageError(f"criteria are numbered {min(CRITERIA)}..{max(CRITERIA)}")
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda k: run_criteria([k], seed=args.seed), which))
    claims = [c for group in results for c in group]
    for c in claims:
        rep.add(c.line())
    failed = sorted({c.criterion for c in claims if not c.passed})
    rep.add(f"{sum(c.passed for c in claims)}/{len(claims)} claims pass; criteria failing: {', '.join(map(str, failed)) or 'none'}")
    rep.data.update(
        claims=[dict(criterion=c.criterion, name=c.name, expected=c.expected, got=c.got, passed=c.passed) for c in claims],
        failing_criteria=failed,
    )
    rep.ok = not failed


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = _Parser(prog="quandlecoh", description="Quandle cohomology and cocycle invariants.", parents=[common])
    ap.add_argument("--version", action="version", version=f"quandlecoh {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    h = sub.add_parser("homology", parents=[common], help="homology and cohomology dimensions")
    h.add_argument("quandle")
    h.add_argument("n", type=int)
    h.add_argument("variant", nargs="?", default="Q")
    h.add_argument("--mod", type=int)

    for name, fn in (("invariant", cmd_invariant), ("shadow-invariant", cmd_shadow_invariant)):
        s = sub.add_parser(name, parents=[common], help=f"{'3-cocycle shadow' if 'shadow' in name else '2-cocycle'} state-sum")
        s.add_argument("--braid", required=True, help='e.g. "w2: 1 1 1 1"')
        s.add_argument("--quandle", required=True)
        s.add_argument("--cocycle", required=True, help="cochain file or catalog:<name>")
        s.add_argument("--p", type=int)
        s.add_argument("--top", help="top colors of an open tangle, e.g. 0,1")
        if "shadow" in name:
            s.add_argument("--shadow-left", type=int)
        s.set_defaults(func=fn)

    k = sub.add_parser("skein", parents=[common], help="solve for skein relations")
    k.add_argument("--tangle", action="append", default=[])
    k.add_argument("--quandle", required=True)
    k.add_argument("--cocycle", required=True)
    k.add_argument("--shadow", action="store_true")
    k.set_defaults(func=cmd_skein)

    s = sub.add_parser("shift", parents=[common], help="apply the dimension shift to a cocycle")
    s.add_argument("--cocycle", required=True)
    s.add_argument("--quandle")
    s.set_defaults(func=cmd_shift)

    o = sub.add_parser("orbit", parents=[common], help="orbit quandle")
    o.add_argument("--quandle", required=True)
    o.set_defaults(func=cmd_orbit)

    v = sub.add_parser("verify", parents=[common], help="run the reproduction suite")
    v.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,7")
    v.set_defaults(func=cmd_verify)

    h.set_defaults(func=cmd_homology)
    return ap


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(("homology", "invariant", "shadow-invariant", "skein", "shift", "orbit", "verify")))
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        rep, inputs = Report(), {}
        args.func(args, rep, inputs)
    except InputError as exc:
        print(f"input error: {exc}", file=err)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except InfeasibleSize as exc:
        print(f"infeasible: {exc}", file=err)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"computation error: {exc}", file=err)
        return 1
    header = [f"# quandlecoh {__version__}", f"# command: {args.command}"]
    header += [f"# input {k} sha256:{v}" for k, v in sorted(inputs.items())]
    if args.json:
        payload = {"version": __version__, "command": args.command, "inputs": dict(sorted(inputs.items())), "ok": rep.ok, "report": rep.lines, **rep.data}
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False), file=out)
    else:
        for ln in header + rep.lines:
            print(ln, file=out)
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
