"""Integer linear algebra mod p^N: Smith normal form, affine solve with
full solution enumeration, and column Hermite reduction.

Matrices are plain lists of lists of Python ints.  Sizes here are tiny
(at most a few dozen rows), so the classical algorithms are plenty.
"""

from __future__ import annotations

import math


class SolveBudgetError(RuntimeError):
    """Enumerating a solution set would exceed the stated budget."""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith(A):
    """Smith diagonalization: returns (U, D, V) with U A V = D diagonal,
    U and V unimodular over Z.  No divisibility chain is enforced."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = _identity(m)
    V = _identity(n)
    t = 0
    while t < min(m, n):
        # pick pivot of minimal absolute value in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            D[t], D[i0] = D[i0], D[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            for row in D:
                row[t], row[j0] = row[j0], row[t]
            for row in V:
                row[t], row[j0] = row[j0], row[t]
        # eliminate row t and column t
        dirty = False
        for i in range(t + 1, m):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                if q:
                    for j in range(n):
                        D[i][j] -= q * D[t][j]
                    for j in range(m):
                        U[i][j] -= q * U[t][j]
                if D[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                if q:
                    for i in range(m):
                        D[i][j] -= q * D[i][t]
                    for i in range(n):
                        V[i][j] -= q * V[i][t]
                if D[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        if D[t][t] < 0:
            for j in range(n):
                D[t][j] = -D[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    return U, D, V


def _solution_data(A, b, p, N):
    """Particular solution and kernel basis of A x = b mod p^N, or None.

    Returns (x0, basis, k, M) with ``basis`` a lower-triangular column basis
    of the solution subgroup of (Z/M)^k.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    M = p**N
    # augment: A x + M y = b over Z
    Aaug = [A[i][:] + [M if j == i else 0 for j in range(m)] for i in range(m)]
    U, D, V = smith(Aaug)
    ncols = k + m
    Ub = [sum(U[i][j] * b[j] for j in range(m)) for i in range(m)]
    r = 0
    while r < min(m, ncols) and D[r][r] != 0:
        r += 1
    w0 = []
    for i in range(r):
        if Ub[i] % D[i][i] != 0:
            return None
        w0.append(Ub[i] // D[i][i])
    for i in range(r, m):
        if Ub[i] != 0:
            return None
    w0 += [0] * (ncols - r)
    x0 = tuple(sum(V[i][j] * w0[j] for j in range(ncols)) % M for i in range(k))
    # kernel generators: x-parts of the free columns of V, plus M e_i
    gens = [[V[i][j] for i in range(k)] for j in range(r, ncols)]
    return x0, _subgroup_basis(gens, k, M), k, M


def solve_affine_mod(A, b, p, N, limit=10**6):
    """All solutions x mod p^N of A x = b mod p^N, in canonical order.

    Returns a (possibly empty) sorted list of tuples; raises
    SolveBudgetError if the solution set exceeds ``limit``.
    """
    data = _solution_data(A, b, p, N)
    if data is None:
        return []
    x0, sub, k, M = data
    return _enumerate_coset(x0, sub, k, M, limit)


def iter_affine_mod(A, b, p, N):
    """Yield the solutions of A x = b mod p^N lazily.

    The order is deterministic (fixed traversal of the triangular kernel
    basis) but not globally sorted; intended for first-hit searches.
    """
    data = _solution_data(A, b, p, N)
    if data is None:
        return
    x0, basis, k, M = data
    yield from _iter_coset(x0, basis, k, M)


def span_coset_mod(x0, gens, p, N, limit=10**6):
    """All vectors of x0 + <gens> inside (Z/p^N)^k, in canonical order."""
    k = len(x0)
    M = p**N
    sub = _subgroup_basis([list(g) for g in gens], k, M)
    return _enumerate_coset(tuple(a % M for a in x0), sub, k, M, limit)


def kernel_mod(A, p, N, limit=10**6):
    m = len(A)
    return solve_affine_mod(A, [0] * m, p, N, limit)


def _subgroup_basis(gens, k, M):
    """Lower-triangular basis (list of columns) of the subgroup of (Z/M)^k
    generated by ``gens`` together with M Z^k."""
    cols = [g[:] for g in gens] + [[M if i == j else 0 for i in range(k)]
                                   for j in range(k)]
    basis = []
    row = 0
    while row < k and cols:
        # gcd-reduce entries in this row across columns
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            c0 = nz[0]
            for c in nz[1:]:
                q = c[row] // c0[row]
                for i in range(k):
                    c[i] -= q * c0[i]
        nz = [c for c in cols if c[row] != 0]
        if nz:
            c0 = nz[0]
            if c0[row] < 0:
                for i in range(k):
                    c0[i] = -c0[i]
            basis.append(c0[:])
            cols = [c for c in cols if c is not c0]
        row += 1
    return basis


def _coset_steps(basis, k, M):
    """Cycle length of each basis column inside (Z/M)^k.

    The basis is lower triangular with distinct leading rows, so every
    combination with coefficients below these bounds is a distinct vector.
    """
    steps = []
    for col in basis:
        lead = next((col[i] for i in range(k) if col[i] != 0), M)
        steps.append(M // math.gcd(lead, M))
    return steps


def _iter_coset(x0, basis, k, M):
    steps = _coset_steps(basis, k, M)

    def rec(j, acc):
        if j == len(basis):
            yield tuple(a % M for a in acc)
            return
        vec = list(acc)
        for _ in range(steps[j]):
            yield from rec(j + 1, tuple(vec))
            for i in range(k):
                vec[i] += basis[j][i]
    yield from rec(0, x0)


def _enumerate_coset(x0, basis, k, M, limit):
    count = 1
    for step in _coset_steps(basis, k, M):
        count *= step
        if count > limit:
            raise SolveBudgetError(
                f"solution set has {count}+ elements (limit {limit})")
    return sorted(_iter_coset(x0, basis, k, M))
