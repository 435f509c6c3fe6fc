"""Correspondence kernels on J x J and the integral Fourier transform.

A class eps on J^2 acts on H*(J) in two ways:

    G_eps(x)      = j2^*(eps * j1_*(x))          (Pontryagin-kernel operator)
    [eps]_*(x)    = pr2_*(eps ^ pr1^*(x))        (ordinary correspondence)

and G_eps = [([-1] x id)^* eps]_*.  The Fourier transform is
F = (-1)^g G_{E(gamma)} with gamma = j1_*c + j2_*c - Delta_*c; it agrees
with the correspondence whose kernel is exp(l), l = m^*theta - pr1^*theta - pr2^*theta.

The ``verify_*`` functions return lists of :class:`Check`.  Identities that
hold in Chow groups only after multiplying by a power of 2 are checked
exactly, since the model is torsion-free.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable, Dict, List, Optional

from .cohomology import (
    ExtClass,
    HomMatrix,
    ModelError,
    basis,
    cup,
    cup_exp,
    curve_class,
    external,
    fundamental_class,
    point_class,
    pontryagin,
    pullback,
    pushforward,
    random_class,
    random_hom,
    star_exp,
    theta,
    zero,
)
from .combinatorics import factor_N
from .curve import curve_delta_e, iota_push
from .report import Check, equality_check
from .taut import TautClass, embed_taut, taut_fourier

H = HomMatrix

# J -> J^2
J1 = H.of([[1], [0]])
J2 = H.of([[0], [1]])
DIAG = H.of([[1], [1]])
# J^2 -> J
ADD = H.of([[1, 1]])
PR1 = H.of([[1, 0]])
PR2 = H.of([[0, 1]])
# J^2 -> J^2
SWAP = H.of([[0, 1], [1, 0]])
NEG_ID = H.of([[-1, 0], [0, 1]])
PHI = H.of([[1, 0], [1, -1]])
# J^2 -> J^3
J12 = H.of([[1, 0], [0, 1], [0, 0]])
J23 = H.of([[0, 0], [1, 0], [0, 1]])
J13 = H.of([[1, 0], [0, 0], [0, 1]])
SMALL_DELTA = H.of([[1, 0], [0, 1], [1, 0]])  # (x, y) -> (x, y, x)
DIAG_X_ID = H.of([[1, 0], [1, 0], [0, 1]])  # (x, y) -> (x, x, y)


class LinearOperator:
    """A Z-linear map H*(J^source) -> H*(J^target) stored by its columns."""

    def __init__(self, g: int, source: int, target: int, columns: Dict[int, ExtClass]):
        self.g = g
        self.source = source
        self.target = target
        self.columns = {m: v for m, v in columns.items() if v}

    @classmethod
    def from_function(cls, g: int, fn: Callable[[ExtClass], ExtClass], source: int = 1, target: int = 1):
        cols = {}
        for m in basis(g, source):
            cols[m] = fn(ExtClass(g, source, {m: 1}))
        return cls(g, source, target, cols)

    def __call__(self, x: ExtClass) -> ExtClass:
        if (x.g, x.n) != (self.g, self.source):
            raise ModelError("operator applied to a class of the wrong model")
        total = zero(self.g, self.target)
        for m, c in x.coeffs.items():
            if m in self.columns:
                total = total + self.columns[m].scale(c)
        return total

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        if other.target != self.source or other.g != self.g:
            raise ModelError("operator composition mismatch")
        return LinearOperator(self.g, other.source, self.target, {m: self(v) for m, v in other.columns.items()})

    def scale(self, k: int) -> "LinearOperator":
        return LinearOperator(self.g, self.source, self.target, {m: v.scale(k) for m, v in self.columns.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        cols = dict(self.columns)
        for m, v in other.columns.items():
            cols[m] = cols.get(m, zero(self.g, self.target)) - v
        return LinearOperator(self.g, self.source, self.target, cols)

    def __eq__(self, other):
        return (
            isinstance(other, LinearOperator)
            and (self.g, self.source, self.target) == (other.g, other.source, other.target)
            and self.columns == other.columns
        )

    def to_json(self) -> dict:
        width = max(1, (2 * self.g * self.source + 3) // 4)
        return {
            "genus": self.g,
            "source": self.source,
            "target": self.target,
            "columns": [[f"0x{m:0{width}x}", self.columns[m].to_json()["terms"]] for m in sorted(self.columns)],
        }


def hom_operator(f: HomMatrix, g: int, push: bool) -> LinearOperator:
    if push:
        return LinearOperator.from_function(g, lambda x: pushforward(f, x), f.source, f.target)
    return LinearOperator.from_function(g, lambda x: pullback(f, x), f.target, f.source)


# -- kernels ----------------------------------------------------------------


@lru_cache(maxsize=None)
def gamma_class(g: int) -> ExtClass:
    c = curve_class(g)
    return pushforward(J1, c) + pushforward(J2, c) - pushforward(DIAG, c)


@lru_cache(maxsize=None)
def exp_gamma(g: int) -> ExtClass:
    return star_exp(gamma_class(g))


@lru_cache(maxsize=None)
def poincare_line(g: int) -> ExtClass:
    """l = m^*theta - pr1^*theta - pr2^*theta on J^2."""
    th = theta(g)
    return pullback(ADD, th) - pullback(PR1, th) - pullback(PR2, th)


def diagonal_class(g: int) -> ExtClass:
    return pushforward(DIAG, fundamental_class(g))


def pontryagin_kernel_action(eps: ExtClass, x: ExtClass) -> ExtClass:
    """G_eps(x) = j2^*(eps * j1_*(x))."""
    return pullback(J2, pontryagin(eps, pushforward(J1, x)))


def correspondence_action(kernel: ExtClass, x: ExtClass) -> ExtClass:
    """pr2_*(kernel ^ pr1^*(x))."""
    return pushforward(PR2, cup(kernel, external(x, fundamental_class(x.g))))


class KernelOperator(LinearOperator):
    """G_eps with its matrix on the full basis of H*(J), built once."""

    def __init__(self, kernel: ExtClass, sign: int = 1):
        if kernel.n != 2:
            raise ModelError("a kernel lives on J^2")
        self.kernel = kernel
        g = kernel.g
        cols = {m: pontryagin_kernel_action(kernel, ExtClass(g, 1, {m: 1})).scale(sign) for m in basis(g)}
        super().__init__(g, 1, 1, cols)


def correspondence_operator(kernel: ExtClass) -> LinearOperator:
    return LinearOperator.from_function(kernel.g, lambda x: correspondence_action(kernel, x))


@lru_cache(maxsize=None)
def kernel_fourier(g: int) -> KernelOperator:
    """F = (-1)^g G_{E(gamma)}."""
    return KernelOperator(exp_gamma(g), (-1) ** g)


@lru_cache(maxsize=None)
def exp_line_fourier(g: int) -> LinearOperator:
    """The correspondence with kernel exp(l)."""
    return correspondence_operator(cup_exp(poincare_line(g)))


def fourier(x: ExtClass) -> ExtClass:
    if x.n != 1:
        raise ModelError("the Fourier operator acts on H*(J)")
    return kernel_fourier(x.g)(x)


def fourier_tensor(x: ExtClass) -> ExtClass:
    """(F (x) F) on H*(J^2); F shifts degrees evenly, so no Koszul sign appears."""
    F = kernel_fourier(x.g)
    g2 = 2 * x.g
    low = (1 << g2) - 1
    total = zero(x.g, 2)
    for m, c in x.coeffs.items():
        total = total + external(F.columns.get(m & low, zero(x.g)), F.columns.get(m >> g2, zero(x.g))).scale(c)
    return total


def negation_push(g: int) -> LinearOperator:
    """[-1]_*, which is (-1)^p on degree p."""
    return LinearOperator(g, 1, 1, {m: ExtClass(g, 1, {m: -1 if m.bit_count() % 2 else 1}) for m in basis(g)})


def compose_kernels(eps: ExtClass, eps2: ExtClass) -> ExtClass:
    """The kernel of G_eps2 o G_eps: j13^*(j12_*eps * j23_*eps2)."""
    if eps.n != 2 or eps2.n != 2 or eps.g != eps2.g:
        raise ModelError("compose_kernels needs two kernels on the same J^2")
    return pullback(J13, pontryagin(pushforward(J12, eps), pushforward(J23, eps2)))


# -- verification suites ------------------------------------------------------


def _chk(name: str, lhs, rhs) -> Check:
    return equality_check(name, lhs, rhs)


def _flag(name: str, ok: bool, detail: Optional[str] = None) -> Check:
    return Check(name, ok, None if ok else detail)


def verify_kernel_fourier(g: int) -> List[Check]:
    F = kernel_fourier(g)
    c = curve_class(g)
    sgn = (-1) ** g
    checks = [
        _chk("E(gamma) operator equals exp(l) correspondence", F, exp_line_fourier(g)),
        _chk("F(point) = [J]", F(point_class(g)), fundamental_class(g)),
        _chk("F(theta) = (-1)^(g+1) c", F(theta(g)), c.scale(-sgn)),
        _chk("F(c) = -theta", F(c), -theta(g)),
        _chk("F o F = (-1)^g [-1]_*", F @ F, negation_push(g).scale(sgn)),
        _chk("[2]_* c = 4c", pushforward(H.scalar(2), c), c.scale(4)),
    ]
    bad = []
    for n in range(g + 1):
        w = TautClass.basis(g, n)
        if F(embed_taut(w)) != embed_taut(taut_fourier(w)):
            bad.append(n)
    checks.append(_flag("F(w_n) = (-1)^n w_(g-n) on embedded classes", not bad, f"failing n: {bad}"))
    return checks


def verify_cubical(g: int) -> List[Check]:
    gam = gamma_class(g)
    E = exp_gamma(g)
    diff = pushforward(J12, gam) + pushforward(J23, gam) - pushforward(SMALL_DELTA, gam)
    checks = [
        _chk("cubic relation for gamma", diff, zero(g, 3)),
        _chk(
            "cubic relation for E(gamma)",
            pontryagin(pushforward(J12, E), pushforward(J23, E)),
            pushforward(SMALL_DELTA, E),
        ),
        _chk("iota^3_* Delta_e equals the gamma cubic difference", iota_push(curve_delta_e(g)), diff),
        _chk("Delta_e vanishes in H*(C^3)", curve_delta_e(g), curve_delta_e(g).scale(0)),
    ]
    return checks


def verify_mot_fourier(g: int, j3: bool = True) -> List[Check]:
    """Fourier-transform axioms; ``j3`` toggles the checks living on J^3."""
    F = kernel_fourier(g)
    E = exp_gamma(g)
    sgn = (-1) ** g
    checks = [
        _chk("j1^* E(gamma) = (-1)^g [J]", pullback(J1, E), fundamental_class(g).scale(sgn)),
        _chk("Phi o j1 = Delta", PHI @ J1, DIAG),
        _chk("Phi o j2 = -j2", PHI @ J2, H.of([[0], [-1]])),
        _chk("Phi o Delta = j1", PHI @ DIAG, J1),
        _chk("F^2 = (-1)^g [-1]_*", F @ F, negation_push(g).scale(sgn)),
    ]
    m_push = hom_operator(ADD, g, push=True)
    d_pull = hom_operator(DIAG, g, push=False)
    FF = LinearOperator.from_function(g, fourier_tensor, 2, 2)
    # F o Delta^* = (-1)^g m_* o (F (x) F)  and  F o m_* = Delta^* o (F (x) F)
    checks.append(_chk("F o Delta^* = (-1)^g m_* o (F x F)", F @ d_pull, (m_push @ FF).scale(sgn)))
    checks.append(_chk("F o m_* = Delta^* o (F x F)", F @ m_push, d_pull @ FF))
    if j3:
        checks.append(_chk("kernel of F o F is (-1)^g [Delta_J]", compose_kernels(E, E), diagonal_class(g).scale(sgn)))
    return checks


def verify_elliptic() -> List[Check]:
    g = 1
    E = exp_gamma(g)
    gam = gamma_class(g)
    EE = fundamental_class(g, 2)
    closed = point_class(g, 2) + gam - EE
    checks = [
        _chk("gamma = [E x 0] + [0 x E] - Delta", gam,
             pushforward(J1, fundamental_class(g)) + pushforward(J2, fundamental_class(g)) - diagonal_class(g)),
        _chk("E(gamma) = [(0,0)] + gamma - [E x E]", E, closed),
        _chk("inversion relation", compose_kernels(E, E), -diagonal_class(g)),
        _chk(
            "product relation",
            pushforward(DIAG_X_ID, E),
            pontryagin(pushforward(J13, E), pushforward(J23, E)),
        ),
    ]
    lhs = pontryagin(pushforward(J12, E), pushforward(J23, E))
    rhs = pushforward(SMALL_DELTA, E)
    checks.append(_chk("cubic relation for E(gamma), dimension 2", lhs.dimension_part(2), rhs.dimension_part(2)))
    checks.append(_chk("j12_* gamma * j23_* [E x E] = 0",
                       pontryagin(pushforward(J12, gam), pushforward(J23, EE)), zero(g, 3)))
    checks.append(_chk("j12_* [E x E] * j23_* gamma = 0",
                       pontryagin(pushforward(J12, EE), pushforward(J23, gam)), zero(g, 3)))
    return checks


def verify_kernel_consistency(g: int, rng: random.Random, samples: int) -> List[Check]:
    """Randomized kernel calculus: Pontryagin kernels vs correspondences, composition, F o F."""
    sgn = (-1) ** g
    even = list(range(0, 4 * g + 1, 2))
    corr_bad = comp_bad = graded_bad = None
    for i in range(samples):
        eps = random_class(g, 2, rng, terms=3)
        if KernelOperator(eps) != correspondence_operator(pullback(NEG_ID, eps)):
            corr_bad = corr_bad or eps.serialize()
        if i < max(1, samples // 4):
            # cycle classes have even degree; there the law holds on the nose
            e1 = random_class(g, 2, rng, terms=3, degrees=even)
            e2 = random_class(g, 2, rng, terms=3, degrees=even)
            if KernelOperator(compose_kernels(e1, e2)) != KernelOperator(e2) @ KernelOperator(e1):
                comp_bad = comp_bad or e1.serialize() + " " + e2.serialize()
            # homogeneous kernels of degrees p, q: a Koszul sign (-1)^(pq) appears
            p, q = rng.randrange(4 * g + 1), rng.randrange(4 * g + 1)
            h1 = random_class(g, 2, rng, terms=2, degrees=[p])
            h2 = random_class(g, 2, rng, terms=2, degrees=[q])
            lhs = KernelOperator(compose_kernels(h1, h2), (-1) ** (p * q))
            if lhs != KernelOperator(h2) @ KernelOperator(h1):
                graded_bad = graded_bad or h1.serialize() + " " + h2.serialize()
    checks = [
        _flag("G_eps equals the correspondence of ([-1] x id)^* eps", corr_bad is None, corr_bad),
        _flag("G_eps' o G_eps = G_(composed kernel), even kernels", comp_bad is None, comp_bad),
        _flag("composition law with Koszul sign, homogeneous kernels", graded_bad is None, graded_bad),
        _chk("G of the diagonal is [-1]_*", KernelOperator(diagonal_class(g)), negation_push(g)),
    ]
    F = kernel_fourier(g)
    for n in (-2, -1, 2):
        f = H.scalar(n)
        checks.append(_chk(f"[{n}]^* o F = F o [{n}]_*", hom_operator(f, g, push=False) @ F,
                           F @ hom_operator(f, g, push=True)))
    for t in (-1, 1):
        y = theta(g).scale(t)
        checks.append(_chk(f"F(exp({t} theta)) = (-1)^g E((-1)^g F({t} theta))",
                           F(cup_exp(y)), star_exp(F(y).scale(sgn)).scale(sgn)))
    # the Fourier-dual projection formula, for random homomorphisms J^m -> J^n
    bad = None
    for _ in range(samples):
        m, n = rng.choice([(1, 1), (1, 2), (2, 1)])
        f = random_hom(m, n, rng)
        a = random_class(g, m, rng)
        b = random_class(g, n, rng)
        if pullback(f, pontryagin(pushforward(f, a), b)) != pontryagin(a, pullback(f, b)):
            bad = bad or f"f={f.rows} a={a.serialize()} b={b.serialize()}"
    checks.append(_flag("f^*(f_*(a) * b) = a * f^*(b)", bad is None, bad))
    return checks
