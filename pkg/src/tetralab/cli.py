"""Command-line front end.

Every command prints (or writes with ``--report``) a JSON report and exits
with 0 when all checks pass, 1 when a check fails and 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core.rings import SingularError, format_rat
from .lattice.hirota import hirota_propagate, random_tau_init, verify_hirota_to_eom
from .lattice.kagome import evolve_steps, kagome_random, simple_invariants
from .maps.geometric import geo_pentagon_inverse_pairs, geo_pentagon_pairs, verify_geometric
from .maps.local import pentagon_forward, pentagon_inverse, tetra_map
from .maps.verify import (
    PHASE,
    RATIONAL,
    cyclic_sampler,
    verify_pentagon,
    verify_structure_random,
    verify_ten_term,
    verify_tetrahedron,
)
from .pentagon_algebra import MTensor, verify_associativity
from .report import CONVENTIONS, Report, encode
from .serialize import SchemaError, load_state, load_tau, save_state, write_coefficients_csv
from .spectral import boundary_checks, check_polygon, quantum_spectral_suite, spectral_J, verify_invariance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COMMANDS = (
    "verify-pentagon",
    "verify-ten-term",
    "verify-tetrahedron",
    "verify-structure",
    "evolve",
    "spectral",
    "quantum",
    "hirota",
    "geometric",
    "pentagon-algebra",
)


class UsageError(Exception):
    pass


def _sampler(args):
    if args.ring == "rational":
        return RATIONAL
    return cyclic_sampler(args.rep_dim)


def _pairs_ring(args):
    # pair-level checks also accept plain unit complex numbers
    return PHASE if args.ring == "complex" else _sampler(args)


def cmd_verify_pentagon(args):
    return [verify_pentagon(pentagon_forward, pentagon_inverse, args.trials, args.seed, _pairs_ring(args), args.tol)]


def cmd_verify_ten_term(args):
    return [verify_ten_term(pentagon_forward, pentagon_inverse, args.trials, args.seed, _pairs_ring(args), args.tol)]


def cmd_verify_tetrahedron(args):
    variant = args.variant
    f = lambda a, b, c: tetra_map(a, b, c, variant)  # noqa: E731
    return [verify_tetrahedron(f, args.trials, args.seed, _pairs_ring(args), args.tol)]


def cmd_verify_structure(args):
    sampler = _sampler(args)
    tetra = lambda a, b, c: tetra_map(a, b, c, args.variant)  # noqa: E731
    reps = [
        verify_structure_random(pentagon_forward, 2, args.trials, args.seed, sampler, args.tol),
        verify_structure_random(tetra, 3, args.trials, args.seed, sampler, args.tol),
    ]
    reps[0].check, reps[1].check = "structure(pentagon)", "structure(tetrahedral)"
    return reps


def _state(args):
    if args.state:
        return load_state(args.state)
    return kagome_random(args.n, args.ring, args.seed, args.rep_dim)


def cmd_evolve(args):
    s = _state(args)
    states = evolve_steps(s, args.steps)
    rep = Report(check="simple-invariants", ring=s.ring, seed=args.seed)
    U0, V0 = simple_invariants(s)
    exact = s.ring == "rational"
    for t, st in enumerate(states[1:], 1):
        U, V = simple_invariants(st)
        for x, y in zip(U0 + V0, U + V):
            if exact:
                res = abs(x - y)
                rep.record(float(res), res == 0, trial=t)
            else:
                res = float(abs(x.a - y.a).max())
                rep.record(res, res <= args.tol, trial=t)
    if exact:
        rep.details["U"] = [format_rat(x) for x in U0]
        rep.details["V"] = [format_rat(x) for x in V0]
    if args.out:
        save_state(states[-1], args.out)
        rep.details["written"] = str(args.out)
    return [rep]


def cmd_spectral(args):
    s = _state(args)
    if s.ring != "rational":
        raise UsageError("spectral works on rational states; use 'quantum' for cyclic ones")
    kinds = (1, 2) if args.kind is None else (args.kind,)
    polys = {k: spectral_J(k, s) for k in kinds}
    reps = []
    for k in kinds:
        reps.append(check_polygon(polys[k]))
        reps.append(boundary_checks(polys[k], s))
    if args.steps:
        reps.append(verify_invariance(s, args.steps))
    if args.out:
        n = write_coefficients_csv(polys, args.out)
        reps[0].details["csv_rows"] = n
    reps[0].details["coefficients"] = {k: {f"{a},{b}": c for (a, b), c in sorted(polys[k].coeffs.items())} for k in kinds}
    return reps


def cmd_quantum(args):
    s = kagome_random(1, "cyclic", args.seed, args.rep_dim)
    return [quantum_spectral_suite(s, tol=args.tol)]


def cmd_hirota(args):
    if args.tau:
        tau1, tau2 = load_tau(args.tau)
        if any(len(t.values) != t.block[0] * t.block[1] * t.block[2] for t in (tau1, tau2)):
            tau1, tau2 = hirota_propagate(tau1), hirota_propagate(tau2)
        return [verify_hirota_to_eom(tau1, tau2)]
    block = (args.block,) * 3
    rep = Report(check="hirota-eom", ring="rational", seed=args.seed)
    for t in range(args.trials):
        tau1 = hirota_propagate(random_tau_init(block, 2 * (args.seed * 1000 + t)))
        tau2 = hirota_propagate(random_tau_init(block, 2 * (args.seed * 1000 + t) + 1))
        rep.merge(verify_hirota_to_eom(tau1, tau2))
    return [rep]


def cmd_geometric(args):
    tol = args.tol
    return [
        verify_geometric(args.trials, args.seed, tol),
        verify_pentagon(geo_pentagon_pairs, geo_pentagon_inverse_pairs, args.trials, args.seed, PHASE, max(tol, 1e-8)),
        verify_ten_term(geo_pentagon_pairs, geo_pentagon_inverse_pairs, args.trials, args.seed, PHASE, max(tol, 1e-8)),
    ]


def cmd_pentagon_algebra(args):
    Ks = [args.K] if args.K else list(range(1, 6))
    return [verify_associativity(MTensor.cyclic(K), corrected=not args.printed) for K in Ks]


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tetralab", description="Verification suites for tetrahedral and pentagon maps.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=1, help="lattice size N")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ring", choices=("rational", "cyclic", "complex"), default="rational")
    p.add_argument("--rep-dim", type=int, default=2, help="cyclic representation dimension M")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--kind", type=int, choices=(1, 2), default=None)
    p.add_argument("--variant", choices=("A", "B"), default="A", help="tetrahedral map ordering")
    p.add_argument("--block", type=int, default=3, help="tau block edge length")
    p.add_argument("--K", type=int, default=None, help="pentagon-algebra modulus (default: 1..5)")
    p.add_argument("--printed", action="store_true", help="use the printed associativity index pattern")
    p.add_argument("--state", type=Path)
    p.add_argument("--tau", type=Path)
    p.add_argument("--out", type=Path)
    p.add_argument("--report", type=Path, help="write the JSON report here instead of stdout")
    return p


def validate(args, parser):
    if args.n < 1:
        parser.error("--n must be >= 1")
    if args.tol <= 0:
        parser.error("--tol must be > 0")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if args.steps < 0:
        parser.error("--steps must be >= 0")
    if args.ring == "cyclic" and args.rep_dim < 2:
        parser.error("--rep-dim must be >= 2 for the cyclic ring")
    if args.block < 2:
        parser.error("--block must be >= 2")
    if args.K is not None and not 1 <= args.K <= 6:
        parser.error("--K must be in 1..6")
    if args.ring == "complex" and args.command in ("verify-structure", "evolve", "spectral"):
        parser.error(f"--ring complex is not available for {args.command}")
    if args.command == "spectral" and args.n > 4:
        parser.error("spectral supports --n up to 4")


def _config(args) -> dict:
    keys = ("n", "steps", "trials", "ring", "rep_dim", "tol", "kind", "variant", "block", "K", "printed")
    cfg = {k: getattr(args, k) for k in keys}
    for k in ("state", "tau", "out"):
        val = getattr(args, k)
        cfg[k] = str(val) if val is not None else None
    return cfg


def make_report(command: str, args, reps) -> dict:
    failures = []
    for r in reps:
        failures.extend({"check": r.check, **f} for f in r.failures)
    passes = all(r.passed for r in reps)
    return {
        "command": command,
        "config": _config(args),
        "seed": args.seed,
        "passes": passes,
        "failures": encode(failures),
        "max_residual": max((r.max_residual for r in reps), default=0.0),
        "checks": [r.to_dict() for r in reps],
        "conventions": dict(CONVENTIONS),
    }


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    validate(args, parser)
    try:
        reps = HANDLERS[args.command](args)
    except (SchemaError, UsageError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"tetralab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularError as exc:
        rep = Report(check=args.command)
        rep.record(0.0, False, note=f"singular: {exc}")
        reps = [rep]
    report = make_report(args.command, args, reps)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.report:
        args.report.write_text(text)
    else:
        sys.stdout.write(text)
    for r in reps:
        print(r.summary(), file=sys.stderr)
    return EXIT_OK if report["passes"] else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
