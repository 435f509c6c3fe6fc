"""Exact integer combinatorics shared by every other module.

Everything here works on Python ints, so there is no overflow and no
floating point anywhere.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Iterable


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero when k lies outside [0, n]."""
    if n < 0:
        raise ValueError(f"binom: negative n={n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multinom(d: int, parts: Iterable[int]) -> int:
    """d! / (d_1! ... d_r!) for nonnegative parts summing to d."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinom: negative part in {parts}")
    if sum(parts) != d:
        raise ValueError(f"multinom: parts {parts} do not sum to {d}")
    result = 1
    running = 0
    for p in parts:
        running += p
        result *= comb(running, p)
    return result


def sym_power_degree(d: int, e: int) -> int:
    """(de)! / (d! (e!)^d), the degree of Sym^d(Sym^e X) -> Sym^{de} X.

    The quotient is the number of ways to split a set of size de into d
    unordered blocks of size e.
    """
    if d < 1 or e < 1:
        raise ValueError(f"sym_power_degree needs d, e >= 1, got ({d}, {e})")
    num = factorial(d * e)
    den = factorial(d) * factorial(e) ** d
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"sym_power_degree({d}, {e}): inexact division")
    return q


def two_adic_order(n: int) -> int:
    """The exponent v with 2^v exactly dividing n."""
    if n == 0:
        raise ValueError("two_adic_order(0) is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def floor_log2(n: int) -> int:
    if n < 1:
        raise ValueError(f"floor_log2 needs n >= 1, got {n}")
    return n.bit_length() - 1


def factor_N(g: int) -> int:
    """The torsion exponent 1 + floor(log2(3g)) attached to genus g."""
    if g < 1:
        raise ValueError(f"factor_N needs g >= 1, got {g}")
    return 1 + floor_log2(3 * g)


def torsion_bound(n: int) -> int:
    """2^(1 + floor(log2 n)): kills a^[n] whenever 2a = 0."""
    return 2 ** (1 + floor_log2(n))


def verify_binomial_collapse(g: int, M: int) -> bool:
    """Check the alternating binomial sum used for the axis restriction.

    Literal evaluation of

        sum_{n >= 0} C(2g-M, g-n) * sum_{m=0}^{n} C(n, m) (-1)^m  ==  C(2g-M, g)

    No shortcut is taken for the inner sum.
    """
    if g < 1 or not 0 <= M <= 2 * g:
        raise ValueError(f"verify_binomial_collapse: need g >= 1 and 0 <= M <= 2g, got g={g}, M={M}")
    top = 2 * g - M
    lhs = 0
    for n in range(0, g + 1):
        inner = sum(binom(n, m) * (-1) ** m for m in range(n + 1))
        lhs += binom(top, g - n) * inner
    return lhs == binom(top, g)
