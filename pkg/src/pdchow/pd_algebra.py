"""Free divided-power algebras over Z and Z/m.

A monomial u_1^[e_1] ... u_r^[e_r] is stored as the exponent tuple
(e_1, ..., e_r); the product rule is

    u^[a] * u^[b] = C(a+b, a) u^[a+b]

with distinct generators commuting freely.  Divided powers of arbitrary
elements of the augmentation ideal are computed from the divided powers of
scaled monomials using the binomial additivity rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .combinatorics import binom, sym_power_degree, torsion_bound
from .lattice import Diagonalization, diagonalize

Monomial = Tuple[int, ...]


class PDError(ValueError):
    pass


class PDDivisionError(ArithmeticError):
    """An exact division expected by the divided-power rules failed."""


@dataclass(frozen=True)
class PDAlgebra:
    """Descriptor of Z<u_1..u_r> (modulus None) or (Z/m)<u_1..u_r>."""

    rank: int
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.rank < 0:
            raise PDError(f"negative rank {self.rank}")
        if self.modulus is not None and self.modulus < 2:
            raise PDError(f"modulus must be >= 2, got {self.modulus}")

    def reduce(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    def element(self, coeffs: Dict[Monomial, int]) -> "PDElement":
        return PDElement(self, coeffs)

    def zero(self) -> "PDElement":
        return PDElement(self, {})

    def one(self) -> "PDElement":
        return PDElement(self, {(0,) * self.rank: 1})

    def gen(self, i: int, power: int = 1) -> "PDElement":
        """u_i^[power]."""
        if not 0 <= i < self.rank:
            raise PDError(f"generator index {i} out of range for rank {self.rank}")
        e = [0] * self.rank
        e[i] = power
        return PDElement(self, {tuple(e): 1})

    def monomials_of_weight(self, w: int) -> List[Monomial]:
        return list(_compositions(w, self.rank))

    def __str__(self):
        base = "Z" if self.modulus is None else f"Z/{self.modulus}"
        return f"{base}<u1..u{self.rank}>"


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class PDElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: PDAlgebra, coeffs: Dict[Monomial, int]):
        self.algebra = algebra
        clean = {}
        for mono, c in coeffs.items():
            if len(mono) != algebra.rank or any(e < 0 for e in mono):
                raise PDError(f"bad monomial {mono} for {algebra}")
            c = algebra.reduce(c)
            if c:
                clean[tuple(mono)] = c
        self.coeffs = clean

    @classmethod
    def _trusted(cls, algebra: PDAlgebra, coeffs: Dict[Monomial, int]) -> "PDElement":
        """Skip monomial validation for coefficients built internally."""
        self = object.__new__(cls)
        self.algebra = algebra
        if algebra.modulus:
            m = algebra.modulus
            self.coeffs = {k: c % m for k, c in coeffs.items() if c % m}
        else:
            self.coeffs = {k: c for k, c in coeffs.items() if c}
        return self

    # -- basic structure ------------------------------------------------
    def _check(self, other: "PDElement") -> None:
        if not isinstance(other, PDElement) or other.algebra != self.algebra:
            raise PDError(f"ring mismatch: {self.algebra} vs {getattr(other, 'algebra', other)}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return PDElement(self.algebra, out)

    def __neg__(self):
        return PDElement(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "PDElement":
        return PDElement(self.algebra, {m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return pd_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, PDElement) and self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * self.algebra.rank, 0)

    def weights(self) -> set:
        return {sum(m) for m in self.coeffs}

    def max_weight(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    def truncate(self, weight: int) -> "PDElement":
        """Drop every monomial of total weight above ``weight``."""
        return PDElement(self.algebra, {m: c for m, c in self.coeffs.items() if sum(m) <= weight})

    def homogeneous_part(self, weight: int) -> "PDElement":
        return PDElement(self.algebra, {m: c for m, c in self.coeffs.items() if sum(m) == weight})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (sum(m), tuple(-e for e in m))):
            c = self.coeffs[m]
            factors = [f"u{i + 1}" + (f"^[{e}]" if e > 1 else "") for i, e in enumerate(m) if e]
            body = "*".join(factors) or "1"
            terms.append(f"{c}*{body}" if factors else str(c))
        return " + ".join(terms).replace("+ -", "- ")


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    coeff = 1
    for x, y in zip(a, b):
        if x and y:
            coeff *= binom(x + y, x)
    return coeff, tuple(x + y for x, y in zip(a, b))


def pd_mul(a: PDElement, b: PDElement) -> PDElement:
    """Product in the free PD algebra."""
    a._check(b)
    out: Dict[Monomial, int] = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            k, m = _mono_mul(ma, mb)
            out[m] = out.get(m, 0) + k * ca * cb
    return PDElement._trusted(a.algebra, out)


def pd_power(a: PDElement, d: int) -> PDElement:
    result = a.algebra.one()
    for _ in range(d):
        result = pd_mul(result, a)
    return result


@lru_cache(maxsize=None)
def _monomial_gamma(mono: Monomial, d: int) -> Tuple[int, Monomial]:
    """gamma_d of a single monomial with coefficient one, over Z.

    Weight one: u_i^[d].  Otherwise mono^d / d!, the division asserted exact.
    """
    if d == 0:
        return 1, (0,) * len(mono)
    if sum(mono) == 1:
        return 1, tuple(d * e for e in mono)
    coeff, acc = 1, (0,) * len(mono)
    for _ in range(d):
        k, acc = _mono_mul(acc, mono)
        coeff *= k
    q, r = divmod(coeff, factorial(d))
    if r:
        raise PDDivisionError(f"gamma_{d}({mono}): {coeff} not divisible by {d}!")
    return q, acc


def divided_powers(a: PDElement, dmax: int) -> List[PDElement]:
    """[gamma_0(a), ..., gamma_dmax(a)] via additivity over the monomials of a."""
    if a.constant_term():
        raise PDError("divided powers need an element of the augmentation ideal")
    alg = a.algebra
    acc: List[PDElement] = [alg.one()] + [alg.zero()] * dmax
    for mono, lam in a.coeffs.items():
        # gamma_k(lam * mono) = lam^k * gamma_k(mono)
        local = []
        for k in range(dmax + 1):
            q, m = _monomial_gamma(mono, k)
            local.append(PDElement(alg, {m: lam**k * q}))
        acc = [
            _sum(alg, (pd_mul(acc[i], local[d - i]) for i in range(d + 1) if acc[i] and local[d - i]))
            for d in range(dmax + 1)
        ]
    return acc


def _sum(alg: PDAlgebra, items: Iterable[PDElement]) -> PDElement:
    out: Dict[Monomial, int] = {}
    for x in items:
        for m, c in x.coeffs.items():
            out[m] = out.get(m, 0) + c
    return PDElement._trusted(alg, out)


def gamma_d(a: PDElement, d: int) -> PDElement:
    if d < 0:
        raise PDError(f"negative divided power index {d}")
    return divided_powers(a, d)[d]


def star_exp(a: PDElement, truncation: int) -> PDElement:
    """sum_{n <= truncation} gamma_n(a), truncated at weight ``truncation``."""
    return _sum(a.algebra, divided_powers(a, truncation)).truncate(truncation)


# -- axiom checking -------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    cases: int = 0
    witness: Optional[str] = None

    def record(self, ok: bool, witness: str) -> None:
        self.cases += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness


def check_pd_axioms(
    algebra: PDAlgebra,
    samples: Sequence[PDElement],
    dmax: int,
    scalars: Sequence[int] = (-1, 2, 3),
) -> Dict[str, AxiomResult]:
    """Verify the divided-power identities on every sample.

    Checked for every sample x (and consecutive pairs x, y), with d, e >= 1:

    * product rule      gamma_d(x) gamma_e(x) = C(d+e, d) gamma_{d+e}(x),  d*e <= dmax
    * composition rule  gamma_d(gamma_e(x)) = (de)!/(d!(e!)^d) gamma_{de}(x),  d*e <= dmax
    * additivity        gamma_d(x+y) = sum_{i+j=d} gamma_i(x) gamma_j(y),  d <= dmax
    * homogeneity       gamma_d(lx) = l^d gamma_d(x),  d <= dmax
    * integrality       d! gamma_d(x) = x^d,  d <= dmax
    """
    names = ["product", "composition", "additivity", "homogeneity", "integrality"]
    results = {n: AxiomResult(n) for n in names}
    samples = list(samples)
    for x in samples:
        if x.algebra != algebra:
            raise PDError(f"sample from {x.algebra}, expected {algebra}")
    top = dmax + 1
    cache = [divided_powers(x, top) for x in samples]
    for idx, x in enumerate(samples):
        gx = cache[idx]
        xr = repr(x)
        for d in range(1, dmax + 1):
            for e in range(1, dmax // d + 1):
                ok = gx[d] * gx[e] == gx[d + e].scale(binom(d + e, d))
                results["product"].record(ok, f"x={xr}, d={d}, e={e}")
        for e in range(1, dmax + 1):
            ge = divided_powers(gx[e], dmax // e)
            for d in range(1, dmax // e + 1):
                ok = ge[d] == gx[d * e].scale(sym_power_degree(d, e))
                results["composition"].record(ok, f"x={xr}, d={d}, e={e}")
        power = algebra.one()
        for d in range(1, dmax + 1):
            power = power * x
            results["integrality"].record(gx[d].scale(factorial(d)) == power, f"x={xr}, d={d}")
        for lam in scalars:
            glx = divided_powers(x.scale(lam), dmax)
            for d in range(dmax + 1):
                results["homogeneity"].record(glx[d] == gx[d].scale(lam**d), f"x={xr}, lambda={lam}, d={d}")
        y = samples[(idx + 1) % len(samples)]
        gy = cache[(idx + 1) % len(samples)]
        gxy = divided_powers(x + y, dmax)
        yr = repr(y)
        for d in range(dmax + 1):
            rhs = _sum(algebra, (gx[i] * gy[d - i] for i in range(d + 1)))
            results["additivity"].record(gxy[d] == rhs, f"x={xr}, y={yr}, d={d}")
    return results


def random_element(
    algebra: PDAlgebra,
    rng: random.Random,
    max_terms: int = 3,
    max_weight: int = 2,
    coeff_range: int = 3,
) -> PDElement:
    """A random element of the augmentation ideal."""
    coeffs: Dict[Monomial, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.randint(1, max_weight)
        monos = algebra.monomials_of_weight(w)
        m = monos[rng.randrange(len(monos))]
        coeffs[m] = coeffs.get(m, 0) + rng.randint(-coeff_range, coeff_range)
    return PDElement(algebra, coeffs)


# -- PD-ideal quotients ---------------------------------------------------


@dataclass
class PDQuotient:
    """Z<u_1..u_r> modulo the PD ideal generated by homogeneous elements.

    In each degree n the relation lattice is spanned by
    gamma_k(s) * (monomials of degree n - k*deg(s)) for generators s.
    With ``full_products=True`` all products gamma_{i_1}(s) ... gamma_{i_k}(s)
    times monomials are added as well; they lie in the same span, which the
    test suite checks on small degrees.
    """

    algebra: PDAlgebra
    generators: Sequence[PDElement]
    max_degree: int
    full_products: bool = False
    _degrees: Dict[int, Tuple[List[Monomial], Diagonalization]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.algebra.modulus is not None:
            raise PDError("quotients are built over Z")
        self._gen_data = []
        for s in self.generators:
            ws = s.weights()
            if len(ws) != 1 or 0 in ws:
                raise PDError(f"PD-ideal generators must be homogeneous of positive degree: {s!r}")
            w = ws.pop()
            self._gen_data.append((w, divided_powers(s, self.max_degree // w)))

    def relations(self, n: int) -> List[PDElement]:
        alg = self.algebra
        rels: List[PDElement] = []
        monos = {w: [alg.element({m: 1}) for m in alg.monomials_of_weight(w)] for w in range(n + 1)}
        if not self.full_products:
            for w, gs in self._gen_data:
                for k in range(1, n // w + 1):
                    for mono in monos[n - k * w]:
                        rels.append(gs[k] * mono)
            return rels
        # every multiset of (generator, k) with total weight <= n
        items = [(w * k, gs[k]) for w, gs in self._gen_data for k in range(1, n // w + 1)]

        def rec(start: int, weight: int, acc: PDElement):
            if weight:
                for mono in monos[n - weight]:
                    rels.append(acc * mono)
            for i in range(start, len(items)):
                wi, gi = items[i]
                if weight + wi <= n:
                    rec(i, weight + wi, acc * gi)

        rec(0, 0, alg.one())
        return rels

    def degree(self, n: int) -> Tuple[List[Monomial], Diagonalization]:
        if n > self.max_degree:
            raise PDError(f"degree {n} beyond the working degree {self.max_degree}")
        if n not in self._degrees:
            basis = self.algebra.monomials_of_weight(n)
            index = {m: i for i, m in enumerate(basis)}
            rows = []
            for rel in self.relations(n):
                row = [0] * len(basis)
                for m, c in rel.coeffs.items():
                    row[index[m]] = c
                rows.append(row)
            self._degrees[n] = (basis, diagonalize(rows, len(basis)))
        return self._degrees[n]

    def order(self, x: PDElement) -> int:
        """Additive order of the image of a homogeneous x; 0 for infinite."""
        ws = x.weights()
        if not ws:
            return 1
        if len(ws) != 1:
            raise PDError("order() expects a homogeneous element")
        n = ws.pop()
        basis, diag = self.degree(n)
        v = [x.coeffs.get(m, 0) for m in basis]
        return diag.order(v)


def universal_two_torsion_quotient(max_degree: int, full_products: bool = False) -> PDQuotient:
    """Z<u> modulo the PD ideal generated by 2u."""
    alg = PDAlgebra(1)
    return PDQuotient(alg, [alg.gen(0).scale(2)], max_degree, full_products)


def quotient_order(n: int, quotient: Optional[PDQuotient] = None) -> int:
    """Order of u^[n] in Z<u> / PD(2u)."""
    if n < 1:
        raise PDError(f"quotient_order needs n >= 1, got {n}")
    q = quotient or universal_two_torsion_quotient(n)
    return q.order(q.algebra.gen(0, n))


@dataclass
class TorsionRow:
    n: int
    order: int
    bound: int

    @property
    def divides(self) -> bool:
        return self.order != 0 and self.bound % self.order == 0

    @property
    def attained(self) -> bool:
        return self.order == self.bound


def verify_torsion_bound(nmax: int) -> List[TorsionRow]:
    """Measure the order of u^[n] for n <= nmax against 2^(1+floor(log2 n))."""
    q = universal_two_torsion_quotient(nmax)
    return [TorsionRow(n, quotient_order(n, q), torsion_bound(n)) for n in range(1, nmax + 1)]
