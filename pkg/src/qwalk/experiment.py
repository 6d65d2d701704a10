"""Experiment configs, the runner, and text/CSV reporting."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import costs, oracle
from . import simulator as sim
from .circulant import KernelError, circulant_sigma_from_spectra, parse_spectrum
from .gates import Circuit, compose, depth, size
from .walk import (
    HADAMARD_LIKE, WalkSpec, preparation_circuit, scattering_circuit, shift_qft, walk_circuit,
)

CONFIG_VERSION = 1
OUTPUT_KINDS = ("distribution_csv", "counts_csv", "qasm", "cost_table", "histogram_text")
SCATTERING_PRESETS = {"hadamard-like": HADAMARD_LIKE}
HISTOGRAM_WIDTH = 40


class ConfigError(ValueError):
    """Config is unreadable or violates the schema (exit code 2)."""


class VerificationError(RuntimeError):
    """An internal cross-check failed (exit code 3)."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class _WalkCommon(_Strict):
    n: int = Field(ge=1)
    steps: int = Field(default=1, ge=0)
    alpha: Optional[float] = None
    theta: Optional[float] = None
    scattering: Optional[Literal["hadamard-like"]] = None
    initial: Optional[str] = Field(default=None, pattern=r"^[01]+$")

    @model_validator(mode="after")
    def _check(self):
        if self.scattering is not None and (self.alpha is not None or self.theta is not None):
            raise ValueError("give either a scattering preset or alpha/theta, not both")
        if (self.alpha is None) != (self.theta is None):
            raise ValueError("alpha and theta must be given together")
        if self.initial is not None and len(self.initial) != self.n + 1:
            raise ValueError(f"initial must have n+1 = {self.n + 1} characters")
        return self

    def angles(self) -> tuple[float, float]:
        if self.alpha is None:
            return SCATTERING_PRESETS[self.scattering or "hadamard-like"]
        return self.alpha, self.theta

    def initial_bits(self) -> str:
        return self.initial or "0" * (self.n + 1)


class WalkConfig(_WalkCommon):
    shift: Literal["qft", "mcx"] = "qft"
    mcx_method: Literal["no_ancilla", "ancilla"] = "no_ancilla"

    def to_spec(self) -> WalkSpec:
        alpha, theta = self.angles()
        return WalkSpec(self.n, self.steps, alpha, theta, self.shift, self.initial_bits(),
                        self.mcx_method)


class KernelConfig(_Strict):
    kind: Literal["first_row", "phases"]
    values: list


class ConvolutionConfig(_WalkCommon):
    kernelC: KernelConfig
    kernelC2: KernelConfig


class ExperimentConfig(_Strict):
    version: Literal[1] = CONFIG_VERSION
    walk: Optional[WalkConfig] = None
    convolution: Optional[ConvolutionConfig] = None
    shots: int = Field(default=1024, ge=1)
    seed: int
    outputs: list[Literal[OUTPUT_KINDS]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.walk is None) == (self.convolution is None):
            raise ValueError("config needs exactly one of 'walk' or 'convolution'")
        return self

    @property
    def body(self) -> _WalkCommon:
        return self.walk if self.walk is not None else self.convolution


def parse_config(data: dict | str) -> ExperimentConfig:
    try:
        if isinstance(data, str):
            return ExperimentConfig.model_validate_json(data)
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def convolution_spectra(conv: ConvolutionConfig) -> tuple[np.ndarray, np.ndarray]:
    try:
        return (parse_spectrum(conv.kernelC.model_dump(), conv.n),
                parse_spectrum(conv.kernelC2.model_dump(), conv.n))
    except KernelError as exc:
        raise ConfigError(str(exc)) from exc


def build_circuit(config: ExperimentConfig) -> Circuit:
    """The walk circuit (without initial-state preparation)."""
    if config.walk is not None:
        return walk_circuit(config.walk.to_spec())
    conv = config.convolution
    alpha, theta = conv.angles()
    sigma = circulant_sigma_from_spectra(*convolution_spectra(conv))
    step = compose(scattering_circuit(conv.n, alpha, theta), sigma)
    return Circuit(conv.n + 1, step.gates * conv.steps)


def prepared_circuit(config: ExperimentConfig) -> Circuit:
    """Walk circuit preceded by the X gates that prepare the initial basis state."""
    body = config.body
    return compose(preparation_circuit(body.initial_bits()), build_circuit(config))


def paper_size_formula(config: ExperimentConfig) -> int | None:
    w = config.walk
    if w is None:
        return None
    if w.shift == "qft":
        return costs.qft_walk_size(w.n, w.steps)
    direction = 2 * w.n + 1
    if w.mcx_method == "no_ancilla" and w.n >= 3:
        return w.steps * (costs.mcx_shift_no_ancilla(w.n)[0] + direction)
    if w.mcx_method == "ancilla" and w.n >= 4:
        return w.steps * (costs.mcx_shift_ancilla(w.n)[0] + direction)
    return None


@dataclass
class ExperimentReport:
    ideal_distribution: dict[str, float]
    sampled_counts: dict[str, int]
    circuit_size: int
    circuit_depth: int
    paper_size_formula: int | None
    l1_sampled_vs_ideal: float
    shots: int
    seed: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ideal_distribution"] = {k: d["ideal_distribution"][k] for k in sorted(d["ideal_distribution"])}
        d["sampled_counts"] = {k: d["sampled_counts"][k] for k in sorted(d["sampled_counts"])}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    body = config.body
    circuit = build_circuit(config)
    psi0 = sim.basis_state(body.n + 1, body.initial_bits())
    ideal = sim.distribution(sim.run(circuit, psi0))
    counts = sim.sample(ideal, config.shots, config.seed)
    return ExperimentReport(
        ideal_distribution=ideal,
        sampled_counts=counts,
        circuit_size=size(circuit),
        circuit_depth=depth(circuit),
        paper_size_formula=paper_size_formula(config),
        l1_sampled_vs_ideal=oracle.l1_distance(sim.empirical(counts), ideal),
        shots=config.shots,
        seed=config.seed,
    )


def oracle_distribution(config: ExperimentConfig) -> dict[str, float]:
    """Ideal distribution from dense matrices only (no circuits)."""
    body = config.body
    N = 2**body.n
    alpha, theta = body.angles()
    if config.walk is not None:
        T = oracle.step_matrix(N, alpha, theta)
    else:
        c, c2 = (oracle.circulant_matrix(np.fft.ifft(np.exp(1j * t)))
                 for t in convolution_spectra(config.convolution))
        T = oracle.block_diag(c, c2) @ np.kron(oracle.scattering_matrix(alpha, theta), np.eye(N))
    psi = np.zeros(2 * N, dtype=complex)
    psi[int(body.initial_bits(), 2)] = 1
    psi = np.linalg.matrix_power(T, body.steps) @ psi
    probs = np.abs(psi) ** 2
    return {format(i, f"0{body.n + 1}b"): float(p) for i, p in enumerate(probs) if p > 1e-12}


def emit_histogram(dist: dict, threshold: float = 1e-12) -> str:
    rows = []
    for b in sorted(dist):
        p = dist[b]
        if p < threshold:
            continue
        rows.append(f"{b}  {p:.4f}  {'#' * int(round(HISTOGRAM_WIDTH * p))}")
    return "\n".join(rows) + ("\n" if rows else "")


COST_COLUMNS = (
    "n",
    "qft_shift_size", "qft_shift_depth",
    "qft_walk_size", "qft_walk_depth", "claimed_qft_walk_depth",
    "mcx_shift_size", "mcx_shift_depth",
    "mcx_anc_shift_size", "mcx_anc_shift_depth", "mcx_anc_ancillas",
)


def cost_rows(n_min: int, n_max: int) -> list[dict]:
    """One row per n. QFT figures come from the constructed circuits; the
    generalized CNOT columns are closed forms and stay empty outside their domain."""
    if n_min < 1 or n_max < n_min:
        raise ConfigError(f"bad range n_min={n_min}, n_max={n_max}")
    rows = []
    for n in range(n_min, n_max + 1):
        shift = shift_qft(n)
        walk = walk_circuit(WalkSpec(n, 1))
        row = {
            "n": n,
            "qft_shift_size": size(shift), "qft_shift_depth": depth(shift),
            "qft_walk_size": size(walk), "qft_walk_depth": depth(walk),
            "claimed_qft_walk_depth": 3 * n + 1,
            "mcx_shift_size": None, "mcx_shift_depth": None,
            "mcx_anc_shift_size": None, "mcx_anc_shift_depth": None, "mcx_anc_ancillas": None,
        }
        if n >= 3:
            row["mcx_shift_size"], row["mcx_shift_depth"] = costs.mcx_shift_no_ancilla(n)
        if n >= 4:
            (row["mcx_anc_shift_size"], row["mcx_anc_shift_depth"],
             row["mcx_anc_ancillas"]) = costs.mcx_shift_ancilla(n)
        rows.append(row)
    return rows


def emit_cost_table(n_min: int, n_max: int) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COST_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in cost_rows(n_min, n_max):
        w.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()
