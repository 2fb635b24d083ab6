"""Exact Smith normal form over the integers.

Plain Python ints throughout: relator matrices stay small but their entries
can grow quickly during elimination, so arbitrary precision is required, not
an optimization.
"""

from __future__ import annotations


def smith_normal_form(matrix) -> list:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns [d_1, ..., d_min(m,n)] with d_i >= 0 and d_i | d_{i+1}.
    The input is a sequence of equal-length integer rows and is not modified.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if m and any(len(row) != n for row in a):
        raise ValueError("ragged matrix")

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    diag = []
    t = 0
    while t < m and t < n:
        # Pivot: smallest nonzero |entry| in the trailing block.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # Clear the pivot column, then the pivot row, by division steps.
            done = True
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        swap_rows(t, i)
                    done = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        swap_cols(t, j)
                    done = False
            if done:
                break

        # Divisibility fix-up: the pivot must divide everything below-right.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, n):
                a[t][j] += a[offender][j]
            continue_outer = True
        else:
            continue_outer = False
        if continue_outer:
            continue

        diag.append(abs(a[t][t]))
        t += 1

    diag.extend(0 for _ in range(min(m, n) - len(diag)))
    return diag


def invariant_factors(matrix, n_columns: int | None = None) -> list:
    """Invariant factors of Z^n / (row space): torsion factors then zeros.

    Unit factors are dropped; each 0 stands for an infinite cyclic summand.
    ``n_columns`` must be given when the matrix has no rows.
    """
    m = len(matrix)
    if m == 0:
        if n_columns is None:
            raise ValueError("need n_columns for an empty relator matrix")
         # no relations: free of full rank
        return [0] * n_columns
    n = len(matrix[0])
    if n_columns is not None and n_columns != n:
        raise ValueError("n_columns disagrees with matrix width")
    diag = smith_normal_form(matrix)
    rank = sum(1 for d in diag if d != 0)
    torsion = [d for d in diag if d not in (0, 1)]
    return torsion + [0] * (n - rank)
