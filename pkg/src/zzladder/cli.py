"""Command-line interface.

Subcommands cover the geometry export, the circuit-element calculators,
the three benchmark experiments and the compiler pipeline.  Experiment
commands write delimited data plus a rendered figure into the output
directory (flag --outdir, falling back to the ZZLADDER_OUTDIR
environment variable, then the working directory).  Exit codes: 0 on
success, 1 on user error, 2 on internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from pathlib import Path

import numpy as np

from . import device, protocols, report, simulator
from .hamiltonian import blockade_ratio, DeviceParams
from .lattice import LatticeError, build_ladder, build_row
from .protocols import (
    LogicalCircuit,
    ProtocolError,
    PulseSchedule,
    WellFormedState,
    compile_logical_circuit,
    expand_well_formed,
    logical_circuit_unitary,
)
from .qcore import QuantumError, SparseState, StateVector, fidelity


class UserError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UserError(message)


def _outdir(args):
    out = args.outdir or os.environ.get("ZZLADDER_OUTDIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_config(args, parser_defaults):
    """Fill unset flags from a JSON config file; explicit flags win."""
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None and attr in parser_defaults:
            setattr(args, attr, value)


def _apply_defaults(args, defaults):
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _write(path, text):
    Path(path).write_text(text)
    print(f"wrote {path}")


def cmd_layout(args):
    layout = build_ladder(args.n)
    text = layout.to_json()
    if args.out == "-":
        print(text)
    else:
        out = args.out or _outdir(args) / f"layout_n{args.n}.json"
        _write(out, text)
    return 0


def cmd_params(args):
    with open(args.values) as fh:
        vals = json.load(fh)
    hbar = vals.get("hbar", 1.0)
    out = {}
    if {"E_J", "E_C"} <= vals.keys():
        out["omega_transmon"] = device.transmon_frequency(vals["E_J"], vals["E_C"], hbar)
    if {"C_d", "C_Sigma", "L_J", "C_s"} <= vals.keys():
        out["drive_constant"] = device.drive_constant(
            vals["C_d"], vals["C_Sigma"], vals["L_J"], vals["C_s"], hbar
        )
    zetas = {}
    if {"g_A", "g_B", "delta_A", "delta_B", "Delta_A", "Delta_B"} <= vals.keys():
        zetas["cavity"] = device.zz_cavity(
            vals["g_A"], vals["g_B"], vals["delta_A"], vals["delta_B"],
            vals["Delta_A"], vals["Delta_B"],
        )
    if {"E_J_coupler", "E_C", "E_J"} <= vals.keys():
        zetas["direct"] = device.zz_direct(vals["E_J_coupler"], vals["E_C"], vals["E_J"], hbar)
    if {"g", "alpha_A", "alpha_B", "Delta_AB"} <= vals.keys():
        zetas["capacitive"] = device.zz_capacitive(
            vals["g"], vals["alpha_A"], vals["alpha_B"], vals["Delta_AB"]
        )
    out["zeta"] = zetas
    omega_rabi = vals.get("omega_rabi")
    if omega_rabi:
        out["eta_br"] = {
            name: blockade_ratio(DeviceParams(0, 0, 0, zeta=z, omega_rabi=omega_rabi))
            for name, z in zetas.items()
            if z != 0
        }
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.out == "-":
        print(text)
    else:
        _write(args.out or _outdir(args) / "params.json", text)
    return 0


def cmd_blockade(args):
    _apply_defaults(args, {"eta": 20.0, "samples": 50})
    outdir = _outdir(args)
    labels = {"ggg": "ggg", "gge": "gge", "gg+": "ggplus"}
    trajs = {}
    summary = {"eta": args.eta}
    for label, stem in labels.items():
        traj = simulator.blockade_experiment(label, args.eta, args.samples)
        trajs[label] = traj
        _write(outdir / f"blockade_{stem}.csv", traj.to_csv())
        summary[f"final_P_e_qB_{stem}"] = float(traj.populations[-1, 1])
        summary[f"target_fidelity_{stem}"] = fidelity(
            traj.final_state, simulator.blockade_target(label)
        )
    _write(outdir / "blockade_report.json", json.dumps(summary, indent=2, sort_keys=True))
    report.plot_trajectories(
        trajs, outdir / "blockade.png", title=f"blockade, eta={args.eta}"
    )
    print(f"wrote {outdir / 'blockade.png'}")
    return 0


def cmd_shift_demo(args):
    _apply_defaults(args, {"eta": 20.0, "backend": "rwa_exact", "samples": 50})
    outdir = _outdir(args)
    res = simulator.interface_motion_experiment(
        args.eta, backend=args.backend, samples_per_segment=args.samples
    )
    traj = res["trajectory"]
    stages = {
        "before": list(traj.populations[0]),
        "mid": [res["mid_state"].population(q) for q in range(6)],
        "after": list(traj.populations[-1]),
    }
    lines = ["stage," + ",".join(f"P_e_q{k}" for k in range(6))]
    for name, pops in stages.items():
        lines.append(name + "," + ",".join(f"{p:.12g}" for p in pops))
    _write(outdir / "shift_demo.csv", "\n".join(lines) + "\n")
    summary = {
        "eta": args.eta,
        "backend": args.backend,
        "fidelity": res["fidelity"],
        "mid_entropy_bits": res["mid_entropy_bits"],
    }
    _write(outdir / "shift_demo.json", json.dumps(summary, indent=2, sort_keys=True))
    report.plot_population_bars(
        stages, outdir / "shift_demo.png",
        title=f"interface move, {args.backend}, eta={args.eta}",
    )
    print(f"wrote {outdir / 'shift_demo.png'}")
    return 0


def cmd_fidelity_sweep(args):
    _apply_defaults(args, {"etas": "2,3,5,8", "samples": 100, "seed": 7, "backend": "rwa_exact"})
    outdir = _outdir(args)
    if isinstance(args.etas, str):
        etas = [float(x) for x in args.etas.split(",") if x]
    else:
        etas = [float(x) for x in args.etas]
    results = simulator.hadamard_fidelity_sweep(
        etas, args.samples, args.seed, backend=args.backend
    )
    _write(
        outdir / "fidelity_sweep.json", json.dumps(results, indent=2, sort_keys=True)
    )
    report.plot_sweep(
        results, outdir / "fidelity_sweep.png", title="Hadamard fidelity sweep"
    )
    print(f"wrote {outdir / 'fidelity_sweep.png'}")
    return 0


def cmd_compile(args):
    with open(args.circuit) as fh:
        circuit = LogicalCircuit.from_json(fh.read())
    layout = build_ladder(circuit.n_logical)
    schedule = compile_logical_circuit(circuit, layout)
    outdir = _outdir(args)
    _write(outdir / "schedule.json", schedule.to_json())
    rep = {
        "n_logical": circuit.n_logical,
        "n_gates": len(circuit.gates),
        "n_segments": len(schedule),
        "total_duration": schedule.total_duration(),
    }
    if not args.skip_verify:
        ground = SparseState.from_config("g" * layout.n_qubits)
        final = simulator.apply_schedule(schedule, ground, layout)
        n = circuit.n_logical
        uvec = logical_circuit_unitary(circuit)[:, 2 ** n - 1]
        target = expand_well_formed(
            WellFormedState(2 * n + 3, StateVector(uvec, tuple(range(n)))), layout
        )
        rep["verification_fidelity"] = fidelity(final, target)
    _write(outdir / "compile_report.json", json.dumps(rep, indent=2, sort_keys=True))
    return 0


def _parse_initial(spec_str, layout):
    if spec_str is None or spec_str == "ground":
        return SparseState.from_config("g" * layout.n_qubits)
    if spec_str.startswith("wf:"):
        _, k, logical = spec_str.split(":")
        return expand_well_formed(
            WellFormedState(int(k), StateVector.from_config(logical)), layout
        )
    if len(spec_str) == layout.n_qubits and set(spec_str) <= {"g", "e"}:
        return SparseState.from_config(spec_str)
    raise UserError(f"cannot parse initial state {spec_str!r}")


def cmd_run(args):
    _apply_defaults(
        args, {"eta": 20.0, "backend": "effective", "samples": 1, "crossed": ""}
    )
    with open(args.schedule) as fh:
        schedule = PulseSchedule.from_json(fh.read())
    if args.ladder:
        layout = build_ladder(args.ladder)
    elif args.row:
        crossed = [int(x) for x in str(args.crossed).split(",") if x != ""]
        layout = build_row(args.row, crossed)
    else:
        raise UserError("specify the system with --ladder N or --row PATTERN")
    initial = _parse_initial(args.initial, layout)
    if args.backend != "effective":
        initial = initial.to_dense()
    params = simulator.default_params(args.eta)
    traj = simulator.run(
        schedule, initial, layout, params, backend=args.backend,
        samples_per_segment=args.samples,
    )
    outdir = _outdir(args)
    _write(outdir / "trajectory.csv", traj.to_csv())
    report.plot_trajectories(
        {"run": traj}, outdir / "trajectory.png",
        title=f"{args.backend}, eta={args.eta}",
    )
    print(f"wrote {outdir / 'trajectory.png'}")
    return 0


def build_parser():
    parser = _Parser(prog="zzladder", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--outdir", default=None)
        p.add_argument("--config", default=None, help="JSON file of flag defaults")
        return p

    p = add("layout", cmd_layout, help="export the ladder geometry as JSON")
    p.add_argument("n", type=int)
    p.add_argument("--out", default=None)

    p = add("params", cmd_params, help="circuit-element calculators")
    p.add_argument("--values", required=True, help="JSON file of circuit elements")
    p.add_argument("--out", default=None)

    p = add("blockade", cmd_blockade, help="three-qubit blockade benchmark")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)

    p = add("shift-demo", cmd_shift_demo, help="interface motion benchmark")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--backend", default=None, choices=[None, "effective", "rwa_exact"])
    p.add_argument("--samples", type=int, default=None)

    p = add("fidelity-sweep", cmd_fidelity_sweep, help="Hadamard fidelity vs blockade ratio")
    p.add_argument("--etas", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--backend", default=None, choices=[None, "effective", "rwa_exact"])

    p = add("compile", cmd_compile, help="logical circuit to pulse schedule")
    p.add_argument("--circuit", required=True)
    p.add_argument("--skip-verify", action="store_true")

    p = add("run", cmd_run, help="execute a schedule JSON")
    p.add_argument("--schedule", required=True)
    p.add_argument("--ladder", type=int, default=None)
    p.add_argument("--row", default=None)
    p.add_argument("--crossed", default=None)
    p.add_argument("--initial", default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--backend", default=None,
                   choices=[None, "effective", "rwa_exact", "lab_frame"])
    p.add_argument("--samples", type=int, default=None)
    return parser


USER_ERRORS = (
    UserError,
    LatticeError,
    ProtocolError,
    QuantumError,
    device.DeviceModelError,
    json.JSONDecodeError,
    FileNotFoundError,
    ValueError,
)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _load_config(args, vars(args))
        return args.func(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
