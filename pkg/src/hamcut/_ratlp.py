"""Tiny exact LP feasibility over rationals.

Phase-1 simplex with Bland's rule on dense Fraction tableaus.  The systems
solved here have at most a handful of rows, so simplicity and exactness
beat any sparse or floating-point machinery.
"""
from __future__ import annotations

from fractions import Fraction


def solve_feasible(
    a: list[list[Fraction]], b: list[Fraction]
) -> list[Fraction] | None:
    """A point x >= 0 with A x = b, or None when the system is infeasible."""
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in a[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(a[i]))
            rhs.append(b[i])

    # Tableau columns: n structural + m artificial variables.
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # Phase-1 objective: minimize sum of artificials.  Price out the
    # artificial basis so reduced costs start consistent.
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] -= tab[i][j]

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # Unbounded phase-1 objective cannot happen (bounded below by 0).
            return None
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = cost[enter]
        if f != 0:
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter

    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][-1]
    return x
