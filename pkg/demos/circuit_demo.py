#!/usr/bin/env python3
"""Linearize a wasteful depth-2 circuit without changing its map.

The circuit below computes a linear operator through three middle
parity gates, one of them redundant.  Linearization rebuilds it with
parity gates only, at the minimum possible middle width.
"""

from minrank import (
    Depth2Circuit,
    MiddleGate,
    OutputGate,
    emit_ckt,
    evaluate,
    extract_linear_operator,
    linearize,
    matrix_of,
    metrics,
    row_text,
    vec_text,
)

XOR2 = 0b0110  # parity table on two wires

F = Depth2Circuit(
    3,
    middle=(
        MiddleGate((0, 1), XOR2),
        MiddleGate((1, 2), XOR2),
        MiddleGate((0, 2), XOR2),  # redundant: the other two already span it
    ),
    outputs=(
        OutputGate((), (0, 1), XOR2),
        OutputGate((), (2,), 0b10),
    ),
)


def main():
    print("circuit file form:")
    print(emit_ckt(F))

    M = extract_linear_operator(F)
    print("computed operator:")
    for row in M.rows:
        print(" ", vec_text(row, F.n))

    print("\npartial matrix of the circuit (stars at direct wires):")
    A = matrix_of(F)
    for i in range(A.m):
        print(" ", row_text(A.ones[i], A.stars[i], A.n))

    L = linearize(F)
    print(f"\nwidth {F.width} -> {L.width}, degree {F.degree} -> {L.degree}")
    assert all(L.evaluate(x) == evaluate(F, x) for x in range(1 << F.n))
    print("the rebuilt circuit agrees on all", 1 << F.n, "inputs")
    print("metrics:", metrics(F))


if __name__ == "__main__":
    main()
