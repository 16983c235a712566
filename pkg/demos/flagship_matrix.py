#!/usr/bin/env python3
"""Walk through one 3x6 partial matrix from parse to epsilon.

Shows the full pipeline: the forbidden set, a minimum-rank completion,
the linear solution it spans, and the exact optimum found by search.
"""

import math

from minrank import (
    forbidden_set,
    is_solution,
    kernel,
    lin_exact,
    min_rank_completion,
    opt_exact,
    parse_pmx,
    row_text,
    vec_text,
)

TEXT = "10*0*1\n*111**\n0**1**\n"


def main():
    A = parse_pmx(TEXT)
    print("matrix:")
    for i in range(A.m):
        print(" ", row_text(A.ones[i], A.stars[i], A.n))
    print(f"shape {A.m}x{A.n}, {A.star_count} stars")

    F = forbidden_set(A)
    print(f"\nforbidden set has {F.size} vectors:")
    for x in F.vectors():
        print(" ", vec_text(x, A.n))

    r, W = min_rank_completion(A)
    print(f"\nminimum completion rank: {r}")
    for row in W.rows:
        print(" ", vec_text(row, A.n))

    V = kernel(W)
    print(f"\nkernel dimension {V.dim}, so the linear solution has", lin_exact(A))
    assert is_solution(A, set(V.vectors()))

    value, sol = opt_exact(A)
    print(f"optimum solution size: {value}")
    print("witness:")
    for x in sol.sorted_members():
        print(" ", vec_text(x, A.n))

    eps = (A.n - math.log2(value)) / r
    print(f"\nepsilon = (n - log2(opt)) / minrk = {eps}")
    print("the search found nothing beyond the linear solution here")


if __name__ == "__main__":
    main()
