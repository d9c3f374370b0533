"""Command-line front end.

Subcommands::

    monoqubit repro 1|2|3
    monoqubit sweep --measure c --beta 0:2:0.02 --alpha 2:10:0.08 --out u.csv
    monoqubit sample --qubits 3 --trials 10000 --seed 1 --measure c --beta 1 --alpha 2
    monoqubit measure --state w.json --cut 0|12 --measure eof
    monoqubit check --state w.json --measure c --beta 1 --alpha 2

JSON goes to standard output, diagnostics to standard error.  Exit status
is 0 on success, 1 when a tolerance check fails or a violation is found,
and 2 for usage, parse and validation errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .campaign import run_campaign
from .linalg import DomainError, PureState
from .measures import (
    Bipartition,
    Measure,
    concurrence_two_qubit,
    convex_roof_upper_bound,
    cren_two_qubit,
    eof_two_qubit,
    negativity,
    pure_measure,
)
from .monogamy import (
    RESIDUAL_TOL,
    ExponentPair,
    certify_ordering,
    chain_residual,
    pure_profile,
    state_profile,
    tripartite_residual,
)
from . import repro
from .schmidt3 import SchmidtParams, measure_triple
from .statefile import StateFileError, load_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONVENTIONS = {
    "negativity": "doubled: ||rho^T_A||_1 - 1 (twice the half-sum convention)",
    "entropy": "S(rho) = -Tr rho log2 rho, in bits",
    "weight": "r = 2^(beta/alpha) - 1",
    "residual": "lhs - rhs; negative below -1e-9 is a violation",
}


class UsageError(Exception):
    """Bad command-line input; reported with exit status 2."""


def _clean(obj):
    """Make numpy scalars, tuples and non-finite floats JSON friendly."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _emit(command: str, payload: dict, seed=None) -> None:
    doc = {"version": __version__, "command": command, "seed": seed,
           "conventions": CONVENTIONS, **payload}
    json.dump(_clean(doc), sys.stdout, indent=2)
    sys.stdout.write("\n")


# argument parsing helpers ---------------------------------------------------

def parse_real(token: str) -> float:
    """A float, or the tokens ``sqrt2`` / ``-sqrt2``."""
    t = token.strip().lower()
    sign = -1.0 if t.startswith("-") else 1.0
    if t.lstrip("+-") in ("sqrt2", "sqrt(2)"):
        return sign * math.sqrt(2.0)
    try:
        x = float(t)
    except ValueError:
        raise UsageError(f"not a number: {token!r}") from None
    if not math.isfinite(x):
        raise UsageError(f"not a finite number: {token!r}")
    return x


def parse_range(text: str) -> np.ndarray:
    """``a:b:step`` (inclusive of b when it lies on the grid) or a single value ``a``."""
    parts = text.split(":")
    if len(parts) == 1:
        return np.array([parse_real(parts[0])])
    if len(parts) != 3:
        raise UsageError(f"range {text!r} must look like start:stop:step")
    start, stop, step = map(parse_real, parts)
    try:
        return repro.grid_axis(start, stop, step)
    except ValueError as err:
        raise UsageError(f"range {text!r}: {err}") from None


def parse_cut(text: str, nsub: int) -> Bipartition:
    """Cut syntax ``0|12`` or ``0,1|2,3``; a lone side ``0`` means that side against the rest."""
    def side(s):
        s = s.strip()
        if not s:
            return []
        tokens = s.split(",") if "," in s else list(s)
        try:
            return [int(x) for x in tokens]
        except ValueError:
            raise UsageError(f"cut {text!r}: subsystem indices must be integers") from None

    halves = text.split("|")
    if len(halves) > 2:
        raise UsageError(f"cut {text!r} has more than one '|'")
    a = side(halves[0])
    try:
        cut = Bipartition.of(a, nsub)
        if len(halves) == 2 and set(side(halves[1])) != set(cut.side_b):
            raise UsageError(f"cut {text!r} does not split subsystems 0..{nsub - 1} in two")
    except DomainError as err:
        raise UsageError(f"cut {text!r}: {err}") from None
    return cut


def _exponents(beta: float, alpha: float, measure: Measure) -> ExponentPair:
    try:
        return ExponentPair(beta, alpha, measure.regime)
    except DomainError as err:
        raise UsageError(str(err)) from None


def _default_alpha(measure: Measure) -> float:
    return math.sqrt(2.0) if measure.regime == "eof" else 2.0


def _load(path):
    try:
        return load_state(path)
    except StateFileError as err:
        raise UsageError(str(err)) from None


# subcommands ------------------------------------------------------------------

def cmd_repro(args) -> int:
    report = {1: repro.example1, 2: repro.example2, 3: repro.example3}[args.example]()
    _emit("repro", report)
    for c in report["checks"]:
        if not c["passed"]:
            print(f"FAIL {c['name']}: computed {c['computed']:.9g}, quoted {c['quoted']:.9g}",
                  file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def sweep_triple(target: str, measure: Measure):
    """(total, AB, AC) of the sweep target under `measure`."""
    if target == "example2":
        return measure_triple(SchmidtParams.example2(), measure)
    if target == "example3":
        total, pair = pure_profile(repro.w_state(3), measure)
        return total, pair[0], pair[1]
    state = _load(target)
    if not isinstance(state, PureState) or state.dims != (2, 2, 2):
        raise UsageError(f"{target}: sweep targets must be pure three-qubit states")
    total, pair = pure_profile(state, measure)
    return total, pair[0], pair[1]


def cmd_sweep(args) -> int:
    measure = Measure.parse(args.measure)
    grid = repro.default_axes(measure.regime, args.alpha_max)
    betas = parse_range(args.beta) if args.beta else grid[0]
    alphas = parse_range(args.alpha) if args.alpha else grid[1]
    # 0 <= beta <= alpha at every grid point reduces to the two corners
    _exponents(float(betas.min()), float(alphas.min()), measure)
    _exponents(float(betas.max()), float(alphas.min()), measure)
    target = args.target or ("example3" if measure.regime == "eof" else "example2")
    total, v_ab, v_ac = sweep_triple(target, measure)
    res = repro.tripartite_surface(total, v_ab, v_ac, betas, alphas)
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["beta", "alpha", "residual"])
            for i, b in enumerate(betas):
                for j, a in enumerate(alphas):
                    w.writerow([f"{b:.12g}", f"{a:.12g}", f"{res[i, j]:.12g}"])
    except OSError as err:
        raise UsageError(f"{args.out}: cannot write ({err.strerror})") from None
    i, j = np.unravel_index(int(np.argmin(res)), res.shape)
    print(f"sweep {target} {measure.value}: {res.size} points, minimum residual "
          f"{res[i, j]:.12g} at beta={betas[i]:.12g}, alpha={alphas[j]:.12g}", file=sys.stderr)
    return EXIT_FAIL if res.min() < -RESIDUAL_TOL else EXIT_OK


def cmd_sample(args) -> int:
    measure = Measure.parse(args.measure)
    alpha = parse_real(args.alpha) if args.alpha else _default_alpha(measure)
    e = _exponents(parse_real(args.beta), alpha, measure)
    if not 3 <= args.qubits <= 6:
        raise UsageError("--qubits must lie in 3..6")
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    (summary,) = run_campaign(args.qubits, args.trials, args.seed, measure, [e],
                              min_certified=args.min_certified)
    _emit("sample", {"summary": summary.to_dict()}, seed=args.seed)
    return EXIT_FAIL if summary.violations else EXIT_OK


def measure_value(state, cut: Bipartition, measure: Measure, restarts: int, seed: int):
    """(value, method) for one state and cut; method says how exact the value is."""
    if isinstance(state, PureState):
        return float(pure_measure(state, measure, cut)), "exact (pure state)"
    if measure is Measure.NEGATIVITY:
        return float(negativity(state, sorted(cut.side_a))), "exact (partial transpose)"
    if state.dims == (2, 2):
        fn = {Measure.CONCURRENCE: concurrence_two_qubit, Measure.CREN: cren_two_qubit,
              Measure.EOF: eof_two_qubit}[measure]
        return float(fn(state)), "exact (two-qubit closed form)"
    value = convex_roof_upper_bound(state, cut, measure, restarts=restarts, seed=seed)
    return float(value), "upper bound (convex-roof decomposition search)"


def cmd_measure(args) -> int:
    state = _load(args.state)
    measure = Measure.parse(args.measure)
    cut = parse_cut(args.cut, state.nsub) if args.cut else Bipartition.of({0}, state.nsub)
    value, method = measure_value(state, cut, measure, args.restarts, args.seed)
    _emit("measure", {"state": args.state, "kind": "pure" if isinstance(state, PureState)
                      else "mixed", "dims": list(state.dims), "cut": str(cut),
                      "measure": measure.value, "value": value, "method": method,
                      "upper_bound": method.startswith("upper")}, seed=args.seed)
    return EXIT_OK


def cmd_check(args) -> int:
    state = _load(args.state)
    measure = Measure.parse(args.measure)
    alpha = parse_real(args.alpha) if args.alpha else _default_alpha(measure)
    e = _exponents(parse_real(args.beta), alpha, measure)
    if any(d != 2 for d in state.dims) or not 3 <= state.nsub <= 6:
        raise UsageError("check needs a state of 3 to 6 qubits")
    try:
        total, pair, exact = state_profile(state, measure, restarts=args.restarts, seed=args.seed)
    except DomainError as err:
        raise UsageError(str(err)) from None
    note = "" if exact else ("one-to-rest value is a convex-roof upper bound: a negative "
                             "residual is still a genuine violation, a positive one is "
                             "inconclusive")
    payload = {"state": args.state, "n_qubits": state.nsub, "exact_total": exact}
    if state.nsub == 3:
        rep = tripartite_residual(pair[0], pair[1], total, e, measure)
        report = rep.to_dict() | {"certified": exact, "note": note}
        payload["report"] = report | {"holds": rep.holds}
        status = "holds" if rep.holds else "violated"
    else:
        cert = certify_ordering(state)
        payload["ordering"] = cert.to_dict()
        if cert.m is None:
            payload["report"] = None
            status = "undecided" if cert.undecided else "out_of_hypothesis"
        else:
            rep = chain_residual(pair, total, e, cert.m, measure, certified=exact, note=note)
            payload["report"] = rep.to_dict() | {"holds": rep.holds}
            status = "holds" if rep.holds else "violated"
    if status == "holds" and not exact:
        status = "inconclusive"
    payload["status"] = status
    _emit("check", payload, seed=args.seed)
    return EXIT_FAIL if status == "violated" else EXIT_OK


# entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoqubit",
                                description="Weighted monogamy relations for qubit entanglement.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    measures = "c|n|cren|eof"

    r = sub.add_parser("repro", help="reproduce a worked example (JSON report)")
    r.add_argument("example", type=int, choices=(1, 2, 3))
    r.set_defaults(func=cmd_repro)

    s = sub.add_parser("sweep", help="residual grid over (beta, alpha) as CSV")
    s.add_argument("--measure", default="c", help=measures)
    s.add_argument("--beta", help="start:stop:step (default depends on the measure)")
    s.add_argument("--alpha", help="start:stop:step; 'sqrt2' is accepted")
    s.add_argument("--alpha-max", type=float, default=10.0,
                   help="upper alpha cut of the default grid (default 10)")
    s.add_argument("--target", help="example2, example3 or a pure three-qubit state file")
    s.add_argument("--out", required=True, help="CSV output path")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("sample", help="Haar sampling campaign")
    m.add_argument("--qubits", type=int, default=3)
    m.add_argument("--trials", type=int, default=1000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--measure", default="c", help=measures)
    m.add_argument("--beta", default="1")
    m.add_argument("--alpha", help="default 2, or sqrt2 for eof")
    m.add_argument("--min-certified", type=int, default=None,
                   help="keep sampling until this many trials are certified")
    m.set_defaults(func=cmd_sample)

    for name, func, helptext in (("measure", cmd_measure, "evaluate a measure on a state file"),
                                 ("check", cmd_check, "monogamy report for a state file")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--state", required=True, help="JSON state file")
        q.add_argument("--measure", default="c", help=measures)
        q.add_argument("--seed", type=int, default=0, help="seed of the convex-roof search")
        q.add_argument("--restarts", type=int, default=200,
                       help="random restarts of the convex-roof search (mixed states)")
        if name == "measure":
            q.add_argument("--cut", help="e.g. 0|12 or 0,1|2,3 (default: 0 against the rest)")
        else:
            q.add_argument("--beta", default="1")
            q.add_argument("--alpha", help="default 2, or sqrt2 for eof")
        q.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as err:
        print(f"monoqubit {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
