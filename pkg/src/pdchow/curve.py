"""The model H*(C)^{(x)k} = (Z.1 + V + Z.[pt])^{(x)k} of a genus-g curve and its powers.

Slot basis indices: 0 is 1, 1 + 2i is alpha_{i+1}, 2 + 2i is beta_{i+1},
2g + 1 is [pt].  The pairing on V is alpha_i beta_i = [pt] = -beta_i alpha_i.
A basis tensor is a tuple of slot indices; products carry Koszul signs.

Maps C^m -> C^k are described slot by slot: each target slot is either the
base point p0 (``None``) or a source slot, optionally composed with the
hyperelliptic involution, which acts as -1 on V.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import (
    ExtClass,
    ModelError,
    curve_class,
    external,
    point_class,
    zero,
    cup,
)

Tensor = Tuple[int, ...]


def slot_degree(g: int, idx: int) -> int:
    if idx == 0:
        return 0
    if idx == 2 * g + 1:
        return 2
    return 1


def _slot_mul(g: int, i: int, j: int) -> Optional[Tuple[int, int]]:
    if i == 0:
        return 1, j
    if j == 0:
        return 1, i
    pt = 2 * g + 1
    if i == pt or j == pt:
        return None
    # both in V
    if (i - 1) // 2 != (j - 1) // 2 or i == j:
        return None
    return (1, pt) if i % 2 == 1 else (-1, pt)


def _koszul(g: int, x: Tensor, y: Tensor) -> int:
    """Sign of moving each y_s left past x_t for t > s."""
    par = 0
    odd_x_after = 0
    for s in range(len(x) - 1, -1, -1):
        if slot_degree(g, y[s]) == 1:
            par += odd_x_after
        if slot_degree(g, x[s]) == 1:
            odd_x_after += 1
    return -1 if par & 1 else 1


def tensor_mul(g: int, x: Tensor, y: Tensor) -> Optional[Tuple[int, Tensor]]:
    sign = _koszul(g, x, y)
    out = []
    for a, b in zip(x, y):
        r = _slot_mul(g, a, b)
        if r is None:
            return None
        sign *= r[0]
        out.append(r[1])
    return sign, tuple(out)


class CurveClass:
    __slots__ = ("g", "k", "coeffs")

    def __init__(self, g: int, k: int, coeffs: Optional[Dict[Tensor, int]] = None):
        if g < 1 or k < 0:
            raise ModelError(f"bad curve model genus={g} factors={k}")
        self.g = g
        self.k = k
        self.coeffs = {t: c for t, c in (coeffs or {}).items() if c}
        for t in self.coeffs:
            if len(t) != k or any(not 0 <= s <= 2 * g + 1 for s in t):
                raise ModelError(f"bad basis tensor {t} for genus {g}, {k} factors")

    def _same(self, other: "CurveClass") -> None:
        if not isinstance(other, CurveClass) or (self.g, self.k) != (other.g, other.k):
            raise ModelError("curve model mismatch")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return CurveClass(self.g, self.k, out)

    def __neg__(self):
        return CurveClass(self.g, self.k, {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int) -> "CurveClass":
        return CurveClass(self.g, self.k, {t: n * c for t, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, CurveClass) and (self.g, self.k) == (other.g, other.k) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.g, self.k, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def slot_name(self, idx: int) -> str:
        if idx == 0:
            return "1"
        if idx == 2 * self.g + 1:
            return "pt"
        return ("alpha", "beta")[(idx - 1) % 2] + str((idx - 1) // 2 + 1)

    def __repr__(self):
        terms = " + ".join(
            f"{c}*" + "(x)".join(self.slot_name(s) for s in t) for t, c in sorted(self.coeffs.items())
        )
        return f"CurveClass(g={self.g}, k={self.k}, {terms or '0'})"


def curve_mul(x: CurveClass, y: CurveClass) -> CurveClass:
    x._same(y)
    out: Dict[Tensor, int] = {}
    for s, a in x.coeffs.items():
        for t, b in y.coeffs.items():
            r = tensor_mul(x.g, s, t)
            if r is None:
                continue
            out[r[1]] = out.get(r[1], 0) + r[0] * a * b
    return CurveClass(x.g, x.k, out)


def curve_integrate(x: CurveClass) -> int:
    return x.coeffs.get((2 * x.g + 1,) * x.k, 0)


def curve_fundamental(g: int, k: int = 1) -> CurveClass:
    return CurveClass(g, k, {(0,) * k: 1})


def curve_point(g: int, k: int = 1) -> CurveClass:
    return CurveClass(g, k, {(2 * g + 1,) * k: 1})


def curve_basis_class(g: int, t: Sequence[int]) -> CurveClass:
    return CurveClass(g, len(t), {tuple(t): 1})


# -- maps -----------------------------------------------------------------

Slot = Optional[Tuple[int, bool]]


@dataclass(frozen=True)
class CurveMap:
    """C^source -> C^len(slots); slot j is p0 (None) or (source slot, apply involution)."""

    source: int
    slots: Tuple[Slot, ...]

    @property
    def target(self) -> int:
        return len(self.slots)

    @classmethod
    def of(cls, source: int, slots: Sequence) -> "CurveMap":
        norm: List[Slot] = []
        for s in slots:
            if s is None:
                norm.append(None)
            elif isinstance(s, int):
                norm.append((s, False))
            else:
                norm.append((int(s[0]), bool(s[1])))
        for s in norm:
            if s is not None and not 0 <= s[0] < source:
                raise ModelError(f"slot {s} outside a source of {source} factors")
        return cls(source, tuple(norm))


def _slot_pullback(g: int, f: CurveMap, j: int, idx: int) -> Optional[Tuple[int, Tensor]]:
    """f^* of idx placed in target slot j, as a signed basis tensor on C^source."""
    s = f.slots[j]
    if s is None:
        return (1, (0,) * f.source) if idx == 0 else None
    src, inv = s
    sign = -1 if inv and slot_degree(g, idx) == 1 else 1
    t = [0] * f.source
    t[src] = idx
    return sign, tuple(t)


def _pullback_tensor(g: int, f: CurveMap, t: Tensor) -> Optional[Tuple[int, Tensor]]:
    sign = 1
    acc: Tensor = (0,) * f.source
    for j, idx in enumerate(t):
        r = _slot_pullback(g, f, j, idx)
        if r is None:
            return None
        m = tensor_mul(g, acc, r[1])
        if m is None:
            return None
        sign *= r[0] * m[0]
        acc = m[1]
    return sign, acc


def curve_pullback(f: CurveMap, y: CurveClass) -> CurveClass:
    if y.k != f.target:
        raise ModelError("curve pullback: factor mismatch")
    out: Dict[Tensor, int] = {}
    for t, c in y.coeffs.items():
        r = _pullback_tensor(y.g, f, t)
        if r is not None:
            out[r[1]] = out.get(r[1], 0) + r[0] * c
    return CurveClass(y.g, f.source, out)


def _slot_dual(g: int, idx: int) -> int:
    """The slot basis element pairing nontrivially with idx."""
    if idx == 0:
        return 2 * g + 1
    if idx == 2 * g + 1:
        return 0
    return idx + 1 if idx % 2 == 1 else idx - 1


def dual_tensor(g: int, t: Tensor) -> Tuple[int, Tensor]:
    """(sign, d) with integral(e_t . sign*e_d) = 1; e_d pairs to 0 with other basis tensors."""
    d = tuple(_slot_dual(g, idx) for idx in t)
    r = tensor_mul(g, t, d)
    assert r is not None
    return r[0], d


def curve_pushforward(f: CurveMap, x: CurveClass) -> CurveClass:
    """Adjoint of curve_pullback under the Poincare pairing."""
    if x.k != f.source:
        raise ModelError("curve pushforward: factor mismatch")
    g = x.g
    out: Dict[Tensor, int] = {}
    top = (2 * g + 1,) * f.source
    shift = 2 * (f.target - f.source)
    degs = {sum(slot_degree(g, s) for s in t) for t in x.coeffs}
    for t in product(range(2 * g + 2), repeat=f.target):
        if sum(slot_degree(g, s) for s in t) - shift not in degs:
            continue
        ds, d = dual_tensor(g, t)
        r = _pullback_tensor(g, f, d)
        if r is None:
            continue
        total = 0
        for s, c in x.coeffs.items():
            m = tensor_mul(g, s, r[1])
            if m is not None and m[1] == top:
                total += c * m[0]
        if total:
            out[t] = ds * r[0] * total
    return CurveClass(g, f.target, out)


# -- named classes ----------------------------------------------------------


def kunneth_diagonal(g: int) -> CurveClass:
    return curve_pushforward(CurveMap.of(1, [0, 0]), curve_fundamental(g))


_DELTA_E_TERMS = (
    (1, (0, 0, 0)),
    (-1, (0, 0, None)),
    (-1, (0, None, 0)),
    (-1, (None, 0, 0)),
    (1, (0, None, None)),
    (1, (None, 0, None)),
    (1, (None, None, 0)),
)


def curve_delta_e(g: int) -> CurveClass:
    """The seven-term modified small diagonal on C^3 based at p0."""
    total = CurveClass(g, 3)
    one = curve_fundamental(g)
    for sign, slots in _DELTA_E_TERMS:
        total = total + curve_pushforward(CurveMap.of(1, slots), one).scale(sign)
    return total


def check_delta_e_vanishes(g: int) -> bool:
    return not curve_delta_e(g)


def involution_diagonal_relation(g: int) -> CurveClass:
    """[Delta] + [Delta^-] - 2[p0 x C] - 2[C x p0]; zero in the model."""
    one = curve_fundamental(g)
    push = lambda slots: curve_pushforward(CurveMap.of(1, slots), one)  # noqa: E731
    return push([0, 0]) + push([0, (0, True)]) - push([None, 0]).scale(2) - push([0, None]).scale(2)


# -- Abel-Jacobi embedding ----------------------------------------------------


def _iota_slot(g: int, idx: int) -> ExtClass:
    if idx == 0:
        return curve_class(g)
    if idx == 2 * g + 1:
        return point_class(g)
    t = idx - 1  # generator type on J: a_i -> 2(i-1), b_i -> 2(i-1)+1
    return cup(ExtClass(g, 1, {1 << t: 1}), curve_class(g))


def iota_push(x: CurveClass) -> ExtClass:
    """(iota^k)_* : H*(C^k) -> H*(J^k), slotwise via the external product."""
    g = x.g
    total = zero(g, x.k)
    cache = {i: _iota_slot(g, i) for i in range(2 * g + 2)}
    for t, c in x.coeffs.items():
        term = ExtClass(g, 0, {0: 1})
        for idx in t:
            term = external(term, cache[idx])
        total = total + term.scale(c)
    return total


def iota_pull(y: ExtClass) -> CurveClass:
    """(iota^k)^*: a_i, b_i on factor j go to alpha_i, beta_i in slot j."""
    g, k = y.g, y.n
    out = CurveClass(g, k)
    for mask, c in y.coeffs.items():
        acc = curve_fundamental(g, k)
        m = mask
        pos = 0
        while m:
            if m & 1:
                j, t = divmod(pos, 2 * g)
                slot = [0] * k
                slot[j] = t + 1
                acc = curve_mul(acc, curve_basis_class(g, slot))
                if not acc:
                    break
            m >>= 1
            pos += 1
        out = out + acc.scale(c)
    return out


def random_curve_class(g: int, k: int, rng: random.Random, terms: int = 3) -> CurveClass:
    out: Dict[Tensor, int] = {}
    for _ in range(terms):
        t = tuple(rng.randrange(2 * g + 2) for _ in range(k))
        out[t] = out.get(t, 0) + rng.choice([-2, -1, 1, 2])
    return CurveClass(g, k, out)
