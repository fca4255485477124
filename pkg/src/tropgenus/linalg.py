"""Exact linear algebra over Q and Z.

Matrices are lists of rows. Entries may be ints or Fractions; results are
Fractions (rational routines) or ints (integer routines).
"""

from fractions import Fraction
from math import gcd


def _to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows, ncols=None):
    """Reduced row echelon form. Returns (rref_rows, pivot_columns)."""
    m = _to_fractions(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][c]
        m[rk] = [x * inv for x in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        pivots.append(c)
        rk += 1
        if rk == len(m):
            break
    return m[:rk], pivots


def rank(rows):
    if not rows or not rows[0]:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        return integer_rank(rows)
    return len(row_echelon(rows)[1])


def integer_rank(rows):
    """Rank of an integer matrix by fraction-free elimination (rows scaled by gcds)."""
    m = [list(r) for r in rows if any(r)]
    rk = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk]
        for i in range(rk + 1, len(m)):
            a = m[i][c]
            if a:
                row = [p[c] * x - a * y for x, y in zip(m[i], p)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        rk += 1
    return rk


def nullspace(rows, ncols):
    """Basis of {z : rows @ z = 0} as a list of Fraction vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        z = [Fraction(0)] * ncols
        z[f] = Fraction(1)
        for row, p in zip(red, pivots):
            z[p] = -row[f]
        basis.append(z)
    return basis


def solve_affine(columns, rhs):
    """Solve sum_j z_j columns[j] = rhs.

    Returns (particular_solution, nullspace_basis) or None if inconsistent.
    """
    n = len(rhs)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [rhs[i]] for i in range(n)]
    red, pivots = row_echelon(aug, k + 1)
    if k in pivots:
        return None
    z0 = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        z0[p] = row[k]
    mat = [[columns[j][i] for j in range(k)] for i in range(n)]
    return z0, nullspace(mat, k)


def smith_invariants(rows):
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    a = [[int(x) for x in row] for row in rows]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    out = []
    t = 0
    while t < min(nr, nc):
        # pick the nonzero entry of least absolute value in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # divisibility of the trailing block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def lattice_index_mod_ones(vectors, dim):
    """Index of the lattice spanned by `vectors` in Z^dim / Z(1,...,1).

    Returns 0 when the span (together with the all-ones vector) is not full rank.
    """
    cols = [list(v) for v in vectors] + [[1] * dim]
    mat = [[c[i] for c in cols] for i in range(dim)]
    inv = smith_invariants(mat)
    if len(inv) < dim:
        return 0
    idx = 1
    for d in inv:
        idx *= d
    return idx


def primitive_mod_ones(v):
    """Canonical primitive representative of an integer vector modulo the all-ones line.

    Shifts so the minimum entry is 0 and divides by the gcd. Zero stays zero.
    """
    lo = min(v)
    shifted = [int(x - lo) for x in v]
    g = 0
    for x in shifted:
        g = gcd(g, x)
    if g == 0:
        return tuple(shifted)
    return tuple(x // g for x in shifted)


def strict_feasible_point(ineqs, nvars):
    """A point s with a.s + b > 0 for every (a, b) in `ineqs`, or None.

    Fourier-Motzkin elimination followed by back-substitution; fine for the
    handful of variables that occur in cone intersections.
    """
    system = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
    stages = []
    for k in range(nvars - 1, -1, -1):
        stages.append(system)
        pos = [(a, b) for a, b in system if a[k] > 0]
        neg = [(a, b) for a, b in system if a[k] < 0]
        nxt = [(a, b) for a, b in system if a[k] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                fp, fn = -an[k], ap[k]
                nxt.append(([fp * x + fn * y for x, y in zip(ap, an)], fp * bp + fn * bn))
        # drop exact duplicates to slow the blow-up
        seen, system = set(), []
        for a, b in nxt:
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                system.append((a, b))
    if any(b <= 0 for _, b in system):
        return None
    s = [Fraction(0)] * nvars
    for k, stage in zip(range(nvars), reversed(stages)):
        lo, hi = None, None
        for a, b in stage:
            rest = b + sum(a[j] * s[j] for j in range(k))
            if a[k] > 0:
                v = -rest / a[k]
                lo = v if lo is None or v > lo else lo
            elif a[k] < 0:
                v = -rest / a[k]
                hi = v if hi is None or v < hi else hi
        if lo is None and hi is None:
            s[k] = Fraction(0)
        elif lo is None:
            s[k] = hi - 1
        elif hi is None:
            s[k] = lo + 1
        else:
            s[k] = (lo + hi) / 2
    return s
