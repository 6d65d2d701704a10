"""Circuits and simulation for one-dimensional discrete-time quantum walks."""
from .gates import Circuit, compose, depth, inverse, size
from .simulator import basis_state, circuit_unitary, distribution, run, sample
from .walk import WalkSpec, walk_circuit

__version__ = "0.1.0"

__all__ = [
    "Circuit", "WalkSpec", "basis_state", "circuit_unitary", "compose", "depth",
    "distribution", "inverse", "run", "sample", "size", "walk_circuit",
]
