#!/usr/bin/env python3
"""Row and column min-rank can disagree, and neither pins down min-rank.

A 3x4 example has three independent rows in every completion but only
two independent star-free columns.  Code matrices push the other way:
their column invariant stays tiny while the true min-rank grows.
"""

from minrank import (
    CodeMatrixSpec,
    code_matrix,
    code_row_min_rank,
    col_min_rank,
    min_rank,
    parse_pmx,
    row_text,
    row_min_rank,
)

TEXT = "11*1\n101*\n1*00\n"


def main():
    A = parse_pmx(TEXT)
    print("matrix:")
    for i in range(A.m):
        print(" ", row_text(A.ones[i], A.stars[i], A.n))
    print("row_min_rank:", row_min_rank(A))
    print("col_min_rank:", col_min_rank(A))
    print("min_rank:    ", min_rank(A))
    print("so rows certify rank 3 here while columns only certify 2")

    print("\ncode matrices keep both certificates small:")
    print("   n  r  col  row  minrk")
    for n, r in ((5, 1), (6, 2), (7, 2)):
        spec = CodeMatrixSpec(n, r)
        A = code_matrix(spec)
        print(
            f"  {n:2d} {r:2d} {col_min_rank(A):4d}"
            f" {code_row_min_rank(spec):4d} {min_rank(A):6d}"
        )
    print("columns never beat r + 1 and rows never beat 2r on this family")


if __name__ == "__main__":
    main()
