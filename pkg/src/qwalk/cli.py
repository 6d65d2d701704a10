"""Command line front end: ``qwalk run|qasm|costs|compare``."""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import oracle
from . import simulator as sim
from .circulant import basic_walk_via_circulant, circulant_sigma_from_spectra
from .experiment import (
    ConfigError, VerificationError, build_circuit, convolution_spectra, emit_cost_table,
    emit_histogram, load_config, prepared_circuit, run_experiment,
)
from .gates import CircuitError
from .qasm import to_qasm
from .walk import walk_circuit

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 2, 3
COMPARE_TOL = 1e-9


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_run(args) -> int:
    config = load_config(args.config)
    report = run_experiment(config)
    outputs = set(config.outputs)
    if args.out is None:
        sys.stdout.write(report.to_json())
        if "histogram_text" in outputs:
            sys.stdout.write(emit_histogram(report.ideal_distribution))
        return EXIT_OK
    os.makedirs(args.out, exist_ok=True)
    _write(os.path.join(args.out, "report.json"), report.to_json())
    if "distribution_csv" in outputs:
        _write(os.path.join(args.out, "distribution.csv"),
               sim.distribution_to_csv(report.ideal_distribution))
    if "counts_csv" in outputs:
        _write(os.path.join(args.out, "counts.csv"), sim.counts_to_csv(report.sampled_counts))
    if "histogram_text" in outputs:
        _write(os.path.join(args.out, "histogram.txt"), emit_histogram(report.ideal_distribution))
    if "qasm" in outputs:
        _write(os.path.join(args.out, "circuit.qasm"), to_qasm(prepared_circuit(config)))
    if "cost_table" in outputs:
        n = config.body.n
        _write(os.path.join(args.out, "costs.csv"), emit_cost_table(n, n))
    print(f"wrote outputs to {args.out}")
    return EXIT_OK


def cmd_qasm(args) -> int:
    config = load_config(args.config)
    text = to_qasm(prepared_circuit(config))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_costs(args) -> int:
    sys.stdout.write(emit_cost_table(args.n_min, args.n_max))
    return EXIT_OK


def cmd_compare(args) -> int:
    """Build the same propagation several ways and report the worst disagreement."""
    config = load_config(args.config)
    body = config.body
    N = 2**body.n
    alpha, theta = body.angles()
    results: dict[str, float] = {}
    if config.walk is not None:
        spec = config.walk.to_spec()
        u_qft = sim.circuit_unitary(walk_circuit(replace(spec, shift_impl="qft")))
        u_mcx = sim.circuit_unitary(walk_circuit(replace(spec, shift_impl="mcx")))
        u_circ = sim.circuit_unitary(basic_walk_via_circulant(body.n, alpha, theta, body.steps))
        T = np.linalg.matrix_power(oracle.step_matrix(N, alpha, theta), body.steps)
        results["qft_vs_mcx"] = oracle.max_deviation(u_qft, u_mcx)
        results["qft_vs_oracle"] = oracle.max_deviation(T, u_qft)
        results["circulant_vs_qft"] = oracle.max_deviation(u_qft, u_circ, up_to_global_phase=True)
    else:
        th_c, th_c2 = convolution_spectra(config.convolution)
        u = sim.circuit_unitary(circulant_sigma_from_spectra(th_c, th_c2))
        dense = oracle.block_diag(
            oracle.circulant_matrix(np.fft.ifft(np.exp(1j * th_c))),
            oracle.circulant_matrix(np.fft.ifft(np.exp(1j * th_c2))),
        )
        results["circulant_sigma_vs_oracle"] = oracle.max_deviation(dense, u)
        u_walk = sim.circuit_unitary(build_circuit(config))
        T = dense @ np.kron(oracle.scattering_matrix(alpha, theta), np.eye(N))
        results["walk_vs_oracle"] = oracle.max_deviation(
            np.linalg.matrix_power(T, body.steps), u_walk)
    for name, dev in results.items():
        print(f"{name}: max deviation {dev:.3e}")
    worst = max(results.values())
    print(f"max deviation {worst:.3e} (tolerance {args.tol:.0e})")
    if worst > args.tol:
        raise VerificationError(f"max deviation {worst:.3e} exceeds {args.tol:.0e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwalk", description="Discrete-time quantum walk circuits.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="simulate an experiment config and report")
    r.add_argument("config")
    r.add_argument("--out", help="directory for report.json and requested outputs")
    r.set_defaults(func=cmd_run)

    q = sub.add_parser("qasm", help="emit OpenQASM 2.0 for an experiment config")
    q.add_argument("config")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_qasm)

    c = sub.add_parser("costs", help="gate-count and depth table as CSV")
    c.add_argument("--n-min", type=int, default=2)
    c.add_argument("--n-max", type=int, default=8)
    c.set_defaults(func=cmd_costs)

    m = sub.add_parser("compare", help="check independent constructions agree")
    m.add_argument("config")
    m.add_argument("--tol", type=float, default=COMPARE_TOL)
    m.set_defaults(func=cmd_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
