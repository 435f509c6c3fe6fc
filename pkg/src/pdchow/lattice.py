"""Integer lattices: Smith-style diagonalization and orders in quotients.

A lattice L in Z^k is given by generating rows.  ``diagonalize`` returns
invariant factors together with a unimodular column transform Q such that
L * Q is spanned by d_1 e_1, ..., d_r e_r.  Orders of elements of Z^k / L
are then read off coordinatewise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class Diagonalization:
    ncols: int
    invariants: tuple  # d_1 | d_2 | ... | d_r, all positive
    transform: tuple  # Q as a tuple of rows, k x k, unimodular

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def apply(self, v: Sequence[int]) -> List[int]:
        """Row vector v times Q."""
        k = self.ncols
        return [sum(v[i] * self.transform[i][j] for i in range(k) if v[i]) for j in range(k)]

    def order(self, v: Sequence[int]) -> int:
        """Additive order of v in Z^k / L; 0 means infinite order."""
        w = self.apply(v)
        result = 1
        for j, wj in enumerate(w):
            if j < self.rank:
                d = self.invariants[j]
                result = _lcm(result, d // gcd(d, wj))
            elif wj:
                return 0
        return result

    def torsion_invariants(self) -> tuple:
        return tuple(d for d in self.invariants if d != 1)


def diagonalize(rows: Sequence[Sequence[int]], ncols: int) -> Diagonalization:
    """Deterministic Smith normal form of the row lattice.

    Only the column transform is tracked; row operations do not change the
    lattice.
    """
    A = [list(r) for r in rows if any(r)]
    for r in A:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a lattice of rank {ncols}")
    Q = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    m = len(A)

    def swap_cols(a: int, b: int) -> None:
        if a == b:
            return
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in Q:
            r[a], r[b] = r[b], r[a]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst -= q * col_src
        if not q:
            return
        for r in A:
            r[dst] -= q * r[src]
        for r in Q:
            r[dst] -= q * r[src]

    invariants = []
    t = 0
    while t < min(m, ncols):
        pivot = None
        for i in range(t, m):
            for j in range(t, ncols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        A[t], A[pivot[0]] = A[pivot[0]], A[t]
        swap_cols(t, pivot[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if dirty:
                best, bval = ("r", t), abs(A[t][t])
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < bval:
                        best, bval = ("r", i), abs(A[i][t])
                for j in range(t + 1, ncols):
                    if A[t][j] and abs(A[t][j]) < bval:
                        best, bval = ("c", j), abs(A[t][j])
                if best[0] == "r":
                    A[t], A[best[1]] = A[best[1]], A[t]
                else:
                    swap_cols(t, best[1])
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                if any(A[i][j] % p for j in range(t + 1, ncols)):
                    bad = i
                    break
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        invariants.append(A[t][t])
        t += 1
    return Diagonalization(ncols, tuple(invariants), tuple(tuple(r) for r in Q))
