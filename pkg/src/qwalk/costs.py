"""Closed-form cost models for generalized CNOT blocks and the shift circuits.

Sizes count gates acting on at most two qubits; depths are in the same units.
"""
from __future__ import annotations

from typing import Literal, NamedTuple

McxMethod = Literal["no_ancilla", "ancilla"]
MCX_METHODS: tuple[str, ...] = ("no_ancilla", "ancilla")


class BlockCost(NamedTuple):
    size: int
    depth: int
    ancillas: int


def mcx_cost(n_total: int, method: McxMethod = "no_ancilla") -> BlockCost:
    """Cost of a generalized CNOT over ``n_total`` qubits (controls plus target).

    ``no_ancilla`` gives size 2n^2-6n+5 and depth 8n-20 for n >= 3.
    ``ancilla`` gives size 20(n-3), depth 16(n-3) with n-3 ancillas for n >= 4.
    """
    if method == "no_ancilla":
        if n_total < 3:
            raise ValueError(f"no_ancilla cost model needs n_total >= 3, got {n_total}")
        n = n_total
        return BlockCost(2 * n * n - 6 * n + 5, 8 * n - 20, 0)
    if method == "ancilla":
        if n_total < 4:
            raise ValueError(f"ancilla cost model needs n_total >= 4, got {n_total}")
        m = n_total - 3
        return BlockCost(20 * m, 16 * m, m)
    raise ValueError(f"unknown method {method!r}")


def block_cost(n_total: int, method: McxMethod = "no_ancilla") -> BlockCost:
    """Like :func:`mcx_cost` but total over every width.

    One- and two-qubit blocks (X, CNOT) count as a single gate, and the
    ancilla method falls back to the Toffoli cost at width 3.
    """
    if n_total <= 2:
        return BlockCost(1, 1, 0)
    if method == "ancilla" and n_total == 3:
        return mcx_cost(3, "no_ancilla")
    return mcx_cost(n_total, method)


def mcx_shift_no_ancilla(n: int) -> tuple[int, int]:
    if n < 3:
        raise ValueError(f"closed form needs n >= 3, got {n}")
    size, rem = divmod(n * (2 * n * n - 6 * n + 7), 3)
    assert rem == 0
    return size, 2 * (2 * n * n - 8 * n + 9)


def mcx_shift_ancilla(n: int) -> tuple[int, int, int]:
    if n < 4:
        raise ValueError(f"closed form needs n >= 4, got {n}")
    return 10 * n * n - 50 * n + 67, 2 * (4 * n * n - 20 * n + 27), n - 3


def qft_shift_size(n: int) -> int:
    return n * n + 2 * n


def qft_walk_size(n: int, steps: int = 1) -> int:
    return steps * (n * n + 4 * n + 1)
