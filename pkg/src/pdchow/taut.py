"""The tautological model ring T(g) with basis w_0, ..., w_g.

w_i stands for the class of W_i, the i-th Pontryagin divided power of the
curve class c = w_1.  So w_0 is the point class, w_g the fundamental class,
theta = w_{g-1}.  The two products are

    w_i * w_j           = C(i+j, i) w_{i+j}
    w_{g-m} . w_{g-n}   = C(m+n, m) w_{g-m-n}

and the Fourier operator is the involution-up-to-sign F(w_n) = (-1)^n w_{g-n}.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .cohomology import ExtClass, ModelError, w_class, zero
from .combinatorics import binom
from .pd_algebra import PDAlgebra, PDElement, divided_powers


class TautError(ValueError):
    pass


class TautClass:
    __slots__ = ("g", "coords", "modulus")

    def __init__(self, g: int, coords: Sequence[int], modulus: Optional[int] = None):
        if g < 1:
            raise TautError(f"genus must be >= 1, got {g}")
        if len(coords) != g + 1:
            raise TautError(f"T({g}) needs {g + 1} coordinates, got {len(coords)}")
        if modulus is not None and modulus < 2:
            raise TautError(f"modulus must be >= 2, got {modulus}")
        self.g = g
        self.modulus = modulus
        self.coords: Tuple[int, ...] = tuple(c % modulus if modulus else int(c) for c in coords)

    @classmethod
    def basis(cls, g: int, i: int, modulus: Optional[int] = None) -> "TautClass":
        if not 0 <= i <= g:
            raise TautError(f"w[{i}] is outside the range 0..{g}")
        v = [0] * (g + 1)
        v[i] = 1
        return cls(g, v, modulus)

    @classmethod
    def zero(cls, g: int, modulus: Optional[int] = None) -> "TautClass":
        return cls(g, [0] * (g + 1), modulus)

    def _same(self, other: "TautClass") -> None:
        if not isinstance(other, TautClass):
            raise TautError(f"expected a TautClass, got {type(other).__name__}")
        if self.g != other.g:
            raise TautError(f"genus mismatch: {self.g} vs {other.g}")
        if self.modulus != other.modulus:
            raise TautError(f"coefficient mismatch: {self.modulus} vs {other.modulus}")

    def _new(self, coords: Sequence[int]) -> "TautClass":
        return TautClass(self.g, coords, self.modulus)

    def __add__(self, other):
        self._same(other)
        return self._new([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self._new([-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "TautClass":
        return self._new([k * a for a in self.coords])

    def __eq__(self, other):
        return (
            isinstance(other, TautClass)
            and (self.g, self.modulus, self.coords) == (other.g, other.modulus, other.coords)
        )

    def __hash__(self):
        return hash((self.g, self.modulus, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        terms = [f"{c}*w{i}" for i, c in enumerate(self.coords) if c]
        mod = "" if self.modulus is None else f" mod {self.modulus}"
        return " + ".join(terms) + mod if terms else "0" + mod

    def to_json(self) -> dict:
        return {"genus": self.g, "modulus": self.modulus, "coords": [str(c) for c in self.coords]}


def taut_pontryagin(x: TautClass, y: TautClass) -> TautClass:
    x._same(y)
    g = x.g
    out = [0] * (g + 1)
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if b and i + j <= g:
                out[i + j] += binom(i + j, i) * a * b
    return x._new(out)


def taut_intersect(x: TautClass, y: TautClass) -> TautClass:
    x._same(y)
    g = x.g
    out = [0] * (g + 1)
    for i, a in enumerate(x.coords):
        if not a:
            continue
        m = g - i
        for j, b in enumerate(y.coords):
            n = g - j
            if b and m + n <= g:
                out[g - m - n] += binom(m + n, m) * a * b
    return x._new(out)


def taut_fourier(x: TautClass) -> TautClass:
    g = x.g
    out = [0] * (g + 1)
    for n, a in enumerate(x.coords):
        out[g - n] = -a if n % 2 else a
    return x._new(out)


def taut_fourier_inverse(x: TautClass) -> TautClass:
    """F^{-1} = (-1)^g F, since F^2 = (-1)^g."""
    y = taut_fourier(x)
    return -y if x.g % 2 else y


def _to_pd(x: TautClass) -> PDElement:
    alg = PDAlgebra(1, x.modulus)
    return alg.element({(i,): c for i, c in enumerate(x.coords) if c})


def _from_pd(g: int, a: PDElement, modulus: Optional[int]) -> TautClass:
    out = [0] * (g + 1)
    for (i,), c in a.coeffs.items():
        if i <= g:
            out[i] += c
    return TautClass(g, out, modulus)


def taut_gammas(x: TautClass, dmax: int) -> list:
    """[gamma_0(x), ..., gamma_dmax(x)] for the Pontryagin product.

    Computed in Z<u> with w_i = u^[i], then truncated above weight g.
    """
    if x.coords[0]:
        raise TautError("Pontryagin divided powers need x in span(w_1..w_g)")
    return [_from_pd(x.g, p, x.modulus) for p in divided_powers(_to_pd(x), dmax)]


def taut_gamma(x: TautClass, d: int) -> TautClass:
    if d < 0:
        raise TautError(f"negative divided power index {d}")
    return taut_gammas(x, d)[d]


def taut_delta(x: TautClass, n: int) -> TautClass:
    """Divided powers for the intersection product, by Fourier conjugation.

    delta_n(x) = (-1)^{ng} F(gamma_n(F(x))); this is the normalization with
    delta_1 = id, equivalently F(delta_n(a)) = (-1)^{(n-1)g} F(a)^[n].
    """
    if n < 0:
        raise TautError(f"negative divided power index {n}")
    if x.coords[x.g]:
        raise TautError("intersection divided powers need x in span(w_0..w_{g-1})")
    y = taut_fourier(taut_gamma(taut_fourier(x), n))
    return -y if (n * x.g) % 2 else y


def taut_star_exp(x: TautClass) -> TautClass:
    total = TautClass.zero(x.g, x.modulus)
    for p in taut_gammas(x, x.g):
        total = total + p
    return total


def taut_theta(g: int, modulus: Optional[int] = None) -> TautClass:
    return TautClass.basis(g, g - 1, modulus)


def taut_curve(g: int, modulus: Optional[int] = None) -> TautClass:
    return TautClass.basis(g, 1, modulus)


def embed_taut(x: TautClass) -> ExtClass:
    """w_n -> theta^(g-n)/(g-n)! on J."""
    if x.modulus is not None:
        raise ModelError("only integral tautological classes embed in the cohomology model")
    total = zero(x.g)
    for n, c in enumerate(x.coords):
        if c:
            total = total + w_class(x.g, n).scale(c)
    return total
