"""Integral exterior-algebra model of H*(J^n) for a principally polarized
abelian variety J of dimension g.

Generators of H^1(J^n) are ordered a_1^(1) < b_1^(1) < ... < a_g^(1) < b_g^(1)
< a_1^(2) < ... < b_g^(n); generator number ``k * 2g + t`` is the one of
*type* t (t = 2i for a_{i+1}, 2i+1 for b_{i+1}) on factor k.  A monomial is
a bitmask over these generators, always read in increasing order, and the
volume form is the monomial with every bit set.

Homomorphisms J^m -> J^n are integer n x m matrices.  Pullback acts on
H^1 by the transpose and preserves the type of a generator, so on each
type it is an exterior power of the matrix: the coefficients are minors.
Pushforward is the adjoint of pullback for the unimodular Poincare pairing.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class ModelError(ValueError):
    pass


class ExactDivisionError(ArithmeticError):
    pass


# -- sign bookkeeping -----------------------------------------------------


@lru_cache(maxsize=None)
def _prefix_parity(b: int) -> int:
    """Mask whose bit z is the parity of #{y in b : y < z}."""
    p = b
    shift = 1
    width = b.bit_length()
    while shift < width:
        p ^= p << shift
        shift <<= 1
    p <<= 1
    # bits above the top element of b carry the total parity; keep them so that
    # S(b) is correct for any a, whatever its width
    total = b.bit_count() & 1
    top = width + 1
    p &= (1 << top) - 1
    if total:
        p |= ~((1 << top) - 1)
    return p


def wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b relative to e_{a|b} for disjoint masks."""
    return -1 if (a & _prefix_parity(b)).bit_count() & 1 else 1


@lru_cache(maxsize=None)
def _type_sign(mask: int, g2: int) -> int:
    """Sign of reordering a monomial from factor-major to type-major order."""
    seen = [0] * g2
    inv = 0
    m = mask
    while m:
        low = m & -m
        idx = low.bit_length() - 1
        t = idx % g2
        inv += sum(seen[t + 1:])
        seen[t] += 1
        m ^= low
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def _split_types(mask: int, g2: int) -> Tuple[int, ...]:
    """Per type t, the set of factors (as a bitmask) carrying that type in mask."""
    out = [0] * g2
    m = mask
    while m:
        low = m & -m
        idx = low.bit_length() - 1
        k, t = divmod(idx, g2)
        out[t] |= 1 << k
        m ^= low
    return tuple(out)


@lru_cache(maxsize=None)
def _spread(factors: int, t: int, g2: int) -> int:
    out = 0
    k = 0
    while factors:
        if factors & 1:
            out |= 1 << (k * g2 + t)
        factors >>= 1
        k += 1
    return out


def _bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _det(rows: List[List[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(rows)
    if n == 0:
        return 1
    A = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# -- homomorphisms --------------------------------------------------------


@dataclass(frozen=True)
class HomMatrix:
    """The homomorphism J^m -> J^n, x -> Mx, as an n x m integer matrix."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ModelError("HomMatrix needs at least one row and one column")
        if len({len(r) for r in self.rows}) != 1:
            raise ModelError("ragged HomMatrix")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "HomMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def target(self) -> int:
        return len(self.rows)

    @property
    def source(self) -> int:
        return len(self.rows[0])

    def __matmul__(self, other: "HomMatrix") -> "HomMatrix":
        """Composition self o other."""
        if self.source != other.target:
            raise ModelError(f"cannot compose {self.target}x{self.source} with {other.target}x{other.source}")
        return HomMatrix.of(
            [sum(self.rows[i][k] * other.rows[k][j] for k in range(self.source)) for j in range(other.source)]
            for i in range(self.target)
        )

    def minor(self, row_set: int, col_set: int) -> int:
        return _minor(self.rows, row_set, col_set)

    def col_choices(self, row_set: int) -> Tuple[Tuple[int, int], ...]:
        return _col_choices(self.rows, row_set)

    def row_choices(self, col_set: int) -> Tuple[Tuple[int, int], ...]:
        return _row_choices(self.rows, col_set)

    # -- named maps ------------------------------------------------------
    @classmethod
    def identity(cls, n: int = 1) -> "HomMatrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, k: int, n: int = 1) -> "HomMatrix":
        return cls.of([[k * int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def addition(cls, n: int = 1) -> "HomMatrix":
        """m : J^n x J^n -> J^n."""
        return cls.of([[int(j % n == i) for j in range(2 * n)] for i in range(n)])

    @classmethod
    def diagonal(cls, n: int = 1) -> "HomMatrix":
        """J^n -> J^n x J^n, x -> (x, x)."""
        return cls.of([[int(i % n == j) for j in range(n)] for i in range(2 * n)])

    @classmethod
    def inclusion(cls, positions: Sequence[int], target: int) -> "HomMatrix":
        """J^k -> J^target placing source factor i in slot positions[i], zero elsewhere."""
        return cls.of([[int(positions[j] == i) for j in range(len(positions))] for i in range(target)])

    @classmethod
    def projection(cls, i: int, n: int) -> "HomMatrix":
        return cls.of([[int(j == i) for j in range(n)]])


def _sub_rows(rows, row_set: int, col_set: int) -> List[List[int]]:
    ri = _bits(row_set)
    ci = _bits(col_set)
    return [[rows[i][j] for j in ci] for i in ri]


@lru_cache(maxsize=None)
def _minor(rows, row_set: int, col_set: int) -> int:
    return _det(_sub_rows(rows, row_set, col_set))


@lru_cache(maxsize=None)
def _col_choices(rows, row_set: int) -> Tuple[Tuple[int, int], ...]:
    k = row_set.bit_count()
    m = len(rows[0])
    out = []
    for cols in combinations(range(m), k):
        cs = sum(1 << c for c in cols)
        d = _minor(rows, row_set, cs)
        if d:
            out.append((cs, d))
    return tuple(out)


@lru_cache(maxsize=None)
def _row_choices(rows, col_set: int) -> Tuple[Tuple[int, int], ...]:
    k = col_set.bit_count()
    n = len(rows)
    out = []
    for rs in combinations(range(n), k):
        r = sum(1 << i for i in rs)
        d = _minor(rows, r, col_set)
        if d:
            out.append((r, d))
    return tuple(out)


# -- classes --------------------------------------------------------------


class ExtClass:
    """A sparse integer combination of exterior monomials on J^n."""

    __slots__ = ("g", "n", "coeffs")

    def __init__(self, g: int, n: int, coeffs: Optional[Dict[int, int]] = None):
        if g < 1 or n < 0:
            raise ModelError(f"bad model genus={g} factors={n}")
        self.g = g
        self.n = n
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c}

    @property
    def nbits(self) -> int:
        return 2 * self.g * self.n

    @property
    def full(self) -> int:
        return (1 << self.nbits) - 1

    def same_model(self, other: "ExtClass") -> None:
        if not isinstance(other, ExtClass) or (self.g, self.n) != (other.g, other.n):
            raise ModelError(
                f"model mismatch: (g={self.g}, n={self.n}) vs "
                f"(g={getattr(other, 'g', '?')}, n={getattr(other, 'n', '?')})"
            )

    def __add__(self, other):
        self.same_model(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return ExtClass(self.g, self.n, out)

    def __neg__(self):
        return ExtClass(self.g, self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "ExtClass":
        return ExtClass(self.g, self.n, {m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, k):
        if isinstance(k, int):
            return self.scale(k)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ExtClass) and (self.g, self.n) == (other.g, other.n) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.g, self.n, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def exact_div(self, k: int) -> "ExtClass":
        out = {}
        for m, c in self.coeffs.items():
            q, r = divmod(c, k)
            if r:
                raise ExactDivisionError(f"coefficient {c} of 0x{m:x} not divisible by {k}")
            out[m] = q
        return ExtClass(self.g, self.n, out)

    def degrees(self) -> List[int]:
        return sorted({m.bit_count() for m in self.coeffs})

    def part(self, degree: int) -> "ExtClass":
        """The component in cohomological degree ``degree``."""
        return ExtClass(self.g, self.n, {m: c for m, c in self.coeffs.items() if m.bit_count() == degree})

    def dimension_part(self, dim: int) -> "ExtClass":
        """The component of (complex) cycle dimension ``dim``."""
        return self.part(self.nbits - 2 * dim)

    def cup(self, other: "ExtClass") -> "ExtClass":
        return cup(self, other)

    def star(self, other: "ExtClass") -> "ExtClass":
        return pontryagin(self, other)

    def to_json(self) -> dict:
        width = max(1, (self.nbits + 3) // 4)
        return {
            "genus": self.g,
            "factors": self.n,
            "terms": [[f"0x{m:0{width}x}", str(self.coeffs[m])] for m in sorted(self.coeffs)],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def generator_name(self, idx: int) -> str:
        k, t = divmod(idx, 2 * self.g)
        letter = "ab"[t % 2]
        return f"{letter}{t // 2 + 1}" + ("" if self.n == 1 else f"({k + 1})")

    def __repr__(self):
        if not self.coeffs:
            return f"ExtClass(g={self.g}, n={self.n}, 0)"
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (m.bit_count(), m)):
            word = "".join(self.generator_name(i) for i in _bits(m)) or "1"
            terms.append(f"{self.coeffs[m]}*{word}")
        return f"ExtClass(g={self.g}, n={self.n}, " + " + ".join(terms) + ")"


# -- constructors -----------------------------------------------------------


def zero(g: int, n: int = 1) -> ExtClass:
    return ExtClass(g, n)


def fundamental_class(g: int, n: int = 1) -> ExtClass:
    """[J^n], the unit for the cup product."""
    return ExtClass(g, n, {0: 1})


def point_class(g: int, n: int = 1) -> ExtClass:
    """The class of the origin, the unit for the Pontryagin product."""
    return ExtClass(g, n, {(1 << (2 * g * n)) - 1: 1})


def generator(g: int, n: int, factor: int, t: int) -> ExtClass:
    return ExtClass(g, n, {1 << (factor * 2 * g + t): 1})


def theta(g: int, n: int = 1, factor: int = 0) -> ExtClass:
    """sum_i a_i b_i on one factor of J^n."""
    base = factor * 2 * g
    return ExtClass(g, n, {(0b11 << (base + 2 * i)): 1 for i in range(g)})


def theta_power_divided(g: int, k: int, n: int = 1, factor: int = 0) -> ExtClass:
    """theta^k / k!, built directly as the k-th elementary symmetric sum of the a_i b_i."""
    base = factor * 2 * g
    out = {}
    for S in combinations(range(g), k):
        out[sum(0b11 << (base + 2 * i) for i in S)] = 1
    return ExtClass(g, n, out)


def w_class(g: int, i: int) -> ExtClass:
    """theta^(g-i) / (g-i)!, the model of [W_i] on J."""
    if not 0 <= i <= g:
        raise ModelError(f"W_{i} undefined in genus {g}")
    return cup_power(theta(g), g - i).exact_div(factorial(g - i))


def curve_class(g: int) -> ExtClass:
    """c = theta^(g-1)/(g-1)!, the class of the Abel-Jacobi curve."""
    return w_class(g, 1)


# -- products -------------------------------------------------------------


def cup(x: ExtClass, y: ExtClass) -> ExtClass:
    x.same_model(y)
    out: Dict[int, int] = {}
    ys = [(B, c, _prefix_parity(B)) for B, c in y.coeffs.items()]
    for A, a in x.coeffs.items():
        for B, b, SB in ys:
            if A & B:
                continue
            s = -1 if (A & SB).bit_count() & 1 else 1
            m = A | B
            out[m] = out.get(m, 0) + s * a * b
    return ExtClass(x.g, x.n, out)


def cup_power(x: ExtClass, k: int) -> ExtClass:
    result = fundamental_class(x.g, x.n)
    for _ in range(k):
        result = cup(result, x)
    return result


def external(x: ExtClass, y: ExtClass) -> ExtClass:
    """pr_1^* x ^ pr_2^* y on J^(a+b)."""
    if x.g != y.g:
        raise ModelError("genus mismatch in external product")
    shift = x.nbits
    out = {}
    for A, a in x.coeffs.items():
        for B, b in y.coeffs.items():
            m = A | (B << shift)
            out[m] = out.get(m, 0) + a * b
    return ExtClass(x.g, x.n + y.n, out)


def pontryagin(x: ExtClass, y: ExtClass) -> ExtClass:
    """x * y = m_*(x (x) y), evaluated monomialwise.

    e_A * e_B vanishes unless the complements of A and B are disjoint, and is
    then +-e_{A & B}; the sign is the one produced by the adjoint
    pushforward along m (``pontryagin_via_pushforward`` keeps that route).
    """
    x.same_model(y)
    U = x.full
    xs = []
    for A, a in x.coeffs.items():
        Ac = U ^ A
        sA = -1 if (A & _prefix_parity(Ac)).bit_count() & 1 else 1
        xs.append((A, Ac, a * sA, Ac.bit_count() & 1, _prefix_parity(Ac)))
    ys = []
    for B, b in y.coeffs.items():
        Bc = U ^ B
        sB = -1 if (B & _prefix_parity(Bc)).bit_count() & 1 else 1
        ys.append((B, Bc, b * sB, B.bit_count() & 1, _prefix_parity(Bc)))
    out: Dict[int, int] = {}
    for A, Ac, a, acodd, SAc in xs:
        for B, Bc, b, bodd, SBc in ys:
            if Ac & Bc:
                continue
            res = A & B
            par = (acodd & bodd) + (Ac & SBc).bit_count() + (res & (SAc ^ SBc)).bit_count()
            v = a * b
            out[res] = out.get(res, 0) + (-v if par & 1 else v)
    return ExtClass(x.g, x.n, out)


def pontryagin_via_pushforward(x: ExtClass, y: ExtClass) -> ExtClass:
    x.same_model(y)
    return pushforward(HomMatrix.addition(x.n), external(x, y))


def pontryagin_power(x: ExtClass, k: int) -> ExtClass:
    result = point_class(x.g, x.n)
    for _ in range(k):
        result = pontryagin(result, x)
    return result


# -- functoriality ----------------------------------------------------------


def pullback(f: HomMatrix, x: ExtClass) -> ExtClass:
    """f^* for f : J^m -> J^n, x a class on J^n."""
    if f.target != x.n:
        raise ModelError(f"pullback along J^{f.source} -> J^{f.target} of a class on J^{x.n}")
    g2 = 2 * x.g
    out: Dict[int, int] = {}
    for T, c in x.coeffs.items():
        partial = [(0, c * _type_sign(T, g2))]
        for t, rows in enumerate(_split_types(T, g2)):
            choices = f.col_choices(rows)
            if not choices:
                partial = []
                break
            partial = [(q | _spread(cols, t, g2), v * d) for q, v in partial for cols, d in choices]
        for Q, v in partial:
            out[Q] = out.get(Q, 0) + v * _type_sign(Q, g2)
    return ExtClass(x.g, f.source, out)


def pushforward(f: HomMatrix, x: ExtClass) -> ExtClass:
    """f_* for f : J^m -> J^n, x a class on J^m; adjoint of pullback.

    Characterized by  integrate(f_*(x) ^ y) = integrate(x ^ f^*(y)).
    """
    if f.source != x.n:
        raise ModelError(f"pushforward along J^{f.source} -> J^{f.target} of a class on J^{x.n}")
    g2 = 2 * x.g
    Um = (1 << (g2 * f.source)) - 1
    Un = (1 << (g2 * f.target)) - 1
    out: Dict[int, int] = {}
    for R, c in x.coeffs.items():
        Rc = Um ^ R
        v0 = c * wedge_sign(R, Rc) * _type_sign(Rc, g2)
        partial = [(0, v0)]
        for t, cols in enumerate(_split_types(Rc, g2)):
            choices = f.row_choices(cols)
            if not choices:
                partial = []
                break
            partial = [(q | _spread(rows, t, g2), v * d) for q, v in partial for rows, d in choices]
        for T, v in partial:
            Tc = Un ^ T
            out[Tc] = out.get(Tc, 0) + v * _type_sign(T, g2) * wedge_sign(Tc, T)
    return ExtClass(x.g, f.target, out)


def integrate(x: ExtClass) -> int:
    """Degree: the coefficient of the volume monomial."""
    return x.coeffs.get(x.full, 0)


def pairing(x: ExtClass, y: ExtClass) -> int:
    return integrate(cup(x, y))


# -- divided powers for the Pontryagin product ------------------------------


def star_divided_powers(x: ExtClass, dmax: Optional[int] = None) -> List[ExtClass]:
    """[x^[0], x^[1], ...] with x^[d] = x^{*d} / d!, each division asserted exact.

    Without ``dmax`` the list runs until the powers vanish (at most g*n + 1 terms).
    """
    if x.full in x.coeffs:
        raise ModelError("star divided powers need a class without 0-dimensional part")
    limit = x.g * x.n if dmax is None else dmax
    powers = [point_class(x.g, x.n)]
    for d in range(1, limit + 1):
        nxt = pontryagin(powers[-1], x).exact_div(d)
        if not nxt and dmax is None:
            break
        powers.append(nxt)
    return powers


def star_divided_power(x: ExtClass, d: int) -> ExtClass:
    if d < 0:
        raise ModelError(f"negative divided power index {d}")
    powers = star_divided_powers(x, d)
    return powers[d]


def star_exp(x: ExtClass) -> ExtClass:
    """E(x) = sum_n x^[n]; finite for dimension reasons."""
    total = zero(x.g, x.n)
    for p in star_divided_powers(x):
        total = total + p
    return total


def cup_exp(x: ExtClass) -> ExtClass:
    """sum_k x^k / k! for a class of even degree >= 2, divisions asserted exact."""
    total = fundamental_class(x.g, x.n)
    term = total
    k = 1
    while True:
        term = cup(term, x).exact_div(k)
        if not term:
            return total
        total = total + term
        k += 1


# -- random sampling --------------------------------------------------------


def random_class(
    g: int,
    n: int,
    rng: random.Random,
    terms: int = 3,
    degrees: Optional[Sequence[int]] = None,
    coeff_range: int = 3,
) -> ExtClass:
    nbits = 2 * g * n
    degrees = list(degrees) if degrees is not None else list(range(nbits + 1))
    out: Dict[int, int] = {}
    for _ in range(terms):
        k = rng.choice(degrees)
        mask = sum(1 << i for i in rng.sample(range(nbits), k))
        out[mask] = out.get(mask, 0) + rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
    return ExtClass(g, n, out)


def random_hom(source: int, target: int, rng: random.Random, bound: int = 2) -> HomMatrix:
    return HomMatrix.of([[rng.randint(-bound, bound) for _ in range(source)] for _ in range(target)])


def basis(g: int, n: int = 1, degree: Optional[int] = None) -> List[int]:
    nbits = 2 * g * n
    if degree is None:
        return list(range(1 << nbits))
    return [sum(1 << i for i in c) for c in combinations(range(nbits), degree)]
