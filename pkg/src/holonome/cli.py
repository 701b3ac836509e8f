"""Command-line surface: gate construction, searches, sweeps, figures, audits.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
All outputs are deterministic; angles are accepted in radians only.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from holonome import adiabatic, deformation, holonomy, reporting, spin_model, synthesis
from holonome.errors import DomainError
from holonome.matrix_kernel import phase_invariant_distance


def _parse_vector(text: str):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse vector {text!r}") from None
    if len(parts) != 3:
        raise DomainError("axis must have exactly three components")
    return tuple(parts)


def _parse_floats(text: str):
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse list {text!r}") from None


def _write_report(report: dict, out_path, stream):
    text = reporting.dumps_report(report)
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _merge_config(args):
    """CLI flags win over values from an optional JSON config file."""
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        conf = json.load(fh)
    for key, value in conf.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)
    return args


def cmd_one_qubit(args, stream):
    gen = deformation.one_qubit_generator(_parse_vector(args.n), args.kappa)
    model = spin_model.build_one_dimer(args.omega, args.j1)
    conn = holonomy.connection_on_ground_space(gen, model)
    numeric = holonomy.holonomy(conn)
    analytic = holonomy.analytic_one_qubit_gate(gen.loop)
    audit = deformation.leakage_audit(gen, model)
    report = reporting.build_report(
        "holonomy",
        inputs={"n": list(gen.loop.n), "kappa": gen.loop.kappa,
                "omega": args.omega, "j1": args.j1},
        outputs={
            "theta_kappa": gen.loop.theta_kappa,
            "m": list(gen.loop.m),
            "gamma": reporting.matrix_payload(analytic.gamma),
            "closure_residual": deformation.closure_residual(gen.x),
            "analytic_vs_numeric_distance": phase_invariant_distance(
                analytic.gamma, numeric.gamma
            ),
            "leakage_audit_passed": audit.passed,
        },
    )
    _write_report(report, args.out, stream)
    return 0


def cmd_two_qubit(args, stream):
    gen = deformation.two_qubit_generator(args.kp, args.km, args.kprime)
    model = spin_model.build_two_dimer(args.j1, args.j2)
    conn = holonomy.connection_on_ground_space(gen, model)
    numeric = holonomy.holonomy(conn)
    fact = holonomy.analytic_two_qubit_gate(gen.loop)
    audit = deformation.leakage_audit(gen, model)
    report = reporting.build_report(
        "holonomy",
        inputs={"kappa_plus": args.kp, "kappa_minus": args.km,
                "kappa_prime": args.kprime, "j1": args.j1, "j2": args.j2},
        outputs={
            "coupling_j": gen.loop.coupling_j,
            "n2z": gen.loop.n2z,
            "controlled_phase_angle": 2.0 * gen.loop.coupling_j,
            "gamma_exact": reporting.matrix_payload(fact.gamma_exact),
            "closure_residual": deformation.closure_residual(gen.x),
            "analytic_vs_numeric_distance": phase_invariant_distance(
                fact.gamma_exact, numeric.gamma
            ),
            "factorization_discrepancy": fact.discrepancy,
            "leakage_audit_passed": audit.passed,
        },
    )
    _write_report(report, args.out, stream)
    return 0


def _search_result_payload(result):
    return {
        "params": dict(result.params),
        "angle_error": result.angle_error,
        "gate_distance": result.gate_distance,
        "exhausted": result.exhausted,
        "gate": reporting.matrix_payload(result.gate),
    }


def cmd_search(args, stream):
    target = args.target
    inputs = {"target": target, "eps": args.eps}
    if target == "hadamard":
        best = None
        for kappa in range(1, args.kappa_max + 1):
            loop = deformation.OneQubitLoop.create(synthesis.HADAMARD_AXIS, kappa)
            gate = holonomy.analytic_one_qubit_gate(loop).gamma
            dist = phase_invariant_distance(gate, synthesis.HADAMARD)
            if best is None or dist < best[0]:
                best = (dist, kappa, gate)
        dist, kappa, gate = best
        inputs["kappa_max"] = args.kappa_max
        payload = {
            "params": {"kappa": kappa},
            "gate_distance": dist,
            "exhausted": dist >= args.eps,
            "gate": reporting.matrix_payload(gate),
        }
    elif target in ("rx", "ry"):
        if args.theta is None:
            raise DomainError(f"--theta is required for target {target}")
        inputs.update({"theta": args.theta, "kappa_max": args.kappa_max})
        result = synthesis.search_rotation(
            target[-1], args.theta, args.eps, args.kappa_max
        )
        payload = _search_result_payload(result)
    elif target in ("cphase", "cz"):
        theta = np.pi / 2.0 if target == "cz" else args.theta
        if theta is None:
            raise DomainError("--theta is required for target cphase")
        inputs.update({"theta": theta, "kp_max": args.kp_max, "n_max": args.n_max})
        result = synthesis.search_controlled_phase(
            theta, args.eps, args.kp_max, args.n_max
        )
        payload = _search_result_payload(result)
    else:
        raise DomainError(f"unknown search target {target!r}")
    report = reporting.build_report("search", inputs=inputs, outputs=payload)
    _write_report(report, args.out, stream)
    return 0


def cmd_sweep(args, stream):
    t_list = _parse_floats(args.T)
    if args.n is not None:
        gen = deformation.one_qubit_generator(_parse_vector(args.n), args.kappa)
        model = spin_model.build_one_dimer(args.j1, args.j1)
        inputs = {"n": list(gen.loop.n), "kappa": gen.loop.kappa, "T": t_list}
    elif args.kp is not None:
        gen = deformation.two_qubit_generator(args.kp, args.km, args.kprime)
        model = spin_model.build_two_dimer(args.j1, args.j2)
        inputs = {"kappa_plus": args.kp, "kappa_minus": args.km,
                  "kappa_prime": args.kprime, "T": t_list}
    else:
        raise DomainError("sweep needs either --n/--kappa or --kp/--km/--kprime")
    conn = holonomy.connection_on_ground_space(gen, model)
    gate = holonomy.holonomy(conn)
    runs = adiabatic.adiabatic_sweep(model, gen, gate, t_list)
    rows = [(run.T, run.fidelity, run.leakage) for run in runs]
    if args.csv:
        reporting.emit_csv(args.csv, ["T", "fidelity", "leakage"], rows)
    report = reporting.build_report(
        "sweep",
        inputs=inputs,
        outputs={"rows": [list(r) for r in rows]},
    )
    _write_report(report, args.out, stream)
    return 0


def cmd_figure(args, stream):
    header, rows = synthesis.figure_table(
        args.which, caption_convention=args.caption_convention
    )
    if args.csv:
        reporting.emit_csv(args.csv, header, rows)
        return 0
    report = reporting.build_report(
        "figure",
        inputs={"which": args.which, "caption_convention": args.caption_convention},
        outputs={"header": header, "rows": [list(r) for r in rows]},
    )
    _write_report(report, args.out, stream)
    return 0


def cmd_audit(args, stream):
    if args.j_zero:
        loop = deformation.TwoQubitLoop.with_forced_zero_coupling(args.kp, args.kprime)
        inputs = {"kappa_plus": args.kp, "kappa_prime": args.kprime, "j_zero": True}
    else:
        loop = deformation.TwoQubitLoop.create(args.kp, args.km, args.kprime)
        inputs = {"kappa_plus": args.kp, "kappa_minus": args.km,
                  "kappa_prime": args.kprime, "j_zero": False}
    fact = holonomy.analytic_two_qubit_gate(loop)
    report = reporting.build_report(
        "audit", inputs=inputs, outputs=reporting.audit_payload(fact)
    )
    _write_report(report, args.out, stream)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holonome",
        description="Holonomic quantum gates from isospectral Ising-dimer deformations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("one-qubit", help="construct a one-qubit holonomy gate")
    p.add_argument("--n", required=True, help="loop axis, e.g. 1,0,0")
    p.add_argument("--kappa", type=int, required=True, help="winding number")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--j1", type=float, default=1.0)
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_one_qubit)

    p = sub.add_parser("two-qubit", help="construct a two-qubit holonomy gate")
    p.add_argument("--kp", type=int, required=True, help="kappa_plus")
    p.add_argument("--km", type=int, required=True, help="kappa_minus")
    p.add_argument("--kprime", type=int, required=True, help="kappa_prime")
    p.add_argument("--j1", type=float, default=1.0)
    p.add_argument("--j2", type=float, default=1.0)
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_two_qubit)

    p = sub.add_parser("search", help="approximate a target gate")
    p.add_argument("--target", required=True,
                   choices=["hadamard", "rx", "ry", "cphase", "cz"])
    p.add_argument("--theta", type=float, help="target angle in radians")
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--kappa-max", type=int, default=500, dest="kappa_max")
    p.add_argument("--kp-max", type=int, default=10, dest="kp_max")
    p.add_argument("--n-max", type=int, default=500, dest="n_max")
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="adiabatic convergence sweep over total time")
    p.add_argument("--T", required=True, help="comma-separated list of total times")
    p.add_argument("--n", help="one-qubit loop axis")
    p.add_argument("--kappa", type=int, help="one-qubit winding number")
    p.add_argument("--kp", type=int)
    p.add_argument("--km", type=int)
    p.add_argument("--kprime", type=int, default=1)
    p.add_argument("--j1", type=float, default=1.0)
    p.add_argument("--j2", type=float, default=1.0)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="emit figure data")
    p.add_argument("which", choices=["fig2", "fig3", "fig4"])
    p.add_argument("--csv")
    p.add_argument("--out")
    p.add_argument("--caption-convention", action="store_true",
                   dest="caption_convention")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("audit", help="audit the two-qubit factorization claim")
    p.add_argument("--kp", type=int, required=True)
    p.add_argument("--km", type=int)
    p.add_argument("--kprime", type=int, default=1)
    p.add_argument("--j-zero", action="store_true", dest="j_zero",
                   help="force the inter-dimer coupling to zero (commuting limit)")
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_audit)

    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        args = _merge_config(args)
        if args.command == "audit" and not args.j_zero and args.km is None:
            raise DomainError("audit needs --km unless --j-zero is given")
        return args.func(args, stdout)
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
