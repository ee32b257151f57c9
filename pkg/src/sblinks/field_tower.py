"""Radical towers L = K[r1][r2]... over K = Q(zeta)(t1,...,tn).

Elements are coordinate vectors over the power basis of each radical,
recursively down to reduced rational functions.  Every radicand is required
to be a nonzero element of the base field K, which keeps the per-radical
Galois generators honest automorphisms of the whole tower (a radical never
appears inside the radicand of a later one).

Arithmetic is exact and canonical: equal values have identical
representations, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ActionMismatch,
    BadExtension,
    NotInExtension,
    SblinksError,
    ZeroInverse,
)
from .multipoly import (
    MPoly,
    exact_div,
    gcd,
    squarefree_decomposition,
)
from .scalars import QZeta, qzeta_nth_root


# ---------------------------------------------------------------------------
# rational functions over Q(zeta)


class RationalFunction:
    """num / den with gcd(num, den) = 1 and den monic under grlex."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            num, den = _reduce_pair(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_poly(p: MPoly) -> "RationalFunction":
        return RationalFunction(p, _one_poly(p.nvars), reduce=False)

    @staticmethod
    def const(nvars: int, c) -> "RationalFunction":
        if isinstance(c, (int, Fraction)):
            c = QZeta(c)
        return RationalFunction.from_poly(MPoly.const(nvars, c))

    @staticmethod
    def t_var(nvars: int, i: int) -> "RationalFunction":
        return RationalFunction.from_poly(MPoly.variable(nvars, i, QZeta.one()))

    # -- queries -------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_const() and self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def constant_value(self) -> QZeta:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return QZeta.zero()
        return self.num.const_coeff() * self.den.const_coeff().inverse()

    def zero(self) -> "RationalFunction":
        return RationalFunction(MPoly.zero(self.nvars), _one_poly(self.nvars), reduce=False)

    def one(self) -> "RationalFunction":
        return RationalFunction.const(self.nvars, 1)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            if self.den.is_const():
                num = self.num + other.num
                if num.is_zero():
                    return self.zero()
                return RationalFunction(num, self.den, reduce=False)
            return RationalFunction(self.num + other.num, self.den)
        g = gcd(self.den, other.den)
        if g.is_const():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RationalFunction(num, den)
        da = exact_div(self.den, g)
        db = exact_div(other.den, g)
        num = self.num * db + other.num * da
        den = da * other.den
        return RationalFunction(num, den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero() or other.is_zero():
            return self.zero() if self.is_zero() else other.zero()
        if self.den.is_const() and other.den.is_const():
            return RationalFunction(self.num * other.num, self.den, reduce=False)
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else exact_div(self.num, g1)
        d2 = other.den if g1.is_const() else exact_div(other.den, g1)
        n2 = other.num if g2.is_const() else exact_div(other.num, g2)
        d1 = self.den if g2.is_const() else exact_div(self.den, g2)
        return RationalFunction(n1 * n2, d1 * d2, reduce=False)._monic_den()

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroInverse("0 has no inverse")
        return RationalFunction(self.den, self.num, reduce=False)._monic_den()

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        r = self.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b if k > 1 else b
            k >>= 1
        return r

    def _monic_den(self) -> "RationalFunction":
        c = self.den.lc()
        if c.is_one():
            return self
        ci = c.inverse()
        return RationalFunction(self.num.scale(ci), self.den.scale(ci), reduce=False)

    def conj_zeta(self) -> "RationalFunction":
        """zeta -> zeta^2 on all coefficients."""
        return RationalFunction(
            self.num.map_coeffs(lambda c: c.conj()),
            self.den.map_coeffs(lambda c: c.conj()),
        )

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.den.is_const() and self.den.const_coeff().is_one():
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"

    # -- json -----------------------------------------------------------------

    def to_json(self):
        return {"num": poly_to_json(self.num), "den": poly_to_json(self.den)}

    @staticmethod
    def from_json(data, nvars: int) -> "RationalFunction":
        return RationalFunction(
            poly_from_json(data["num"], nvars), poly_from_json(data["den"], nvars)
        )


def _one_poly(nvars: int) -> MPoly:
    return MPoly.const(nvars, QZeta.one())


def _reduce_pair(num: MPoly, den: MPoly):
    if num.is_zero():
        return num, _one_poly(num.nvars)
    g = gcd(num, den)
    if not g.is_const():
        num = exact_div(num, g)
        den = exact_div(den, g)
    c = den.lc()
    if not c.is_one():
        ci = c.inverse()
        num = num.scale(ci)
        den = den.scale(ci)
    return num, den


def poly_str(p: MPoly, names=None) -> str:
    if p.is_zero():
        return "0"
    names = names or [f"t{i+1}" for i in range(p.nvars)]
    bits = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        if mono:
            if c.is_one():
                bits.append(mono)
            else:
                bits.append(f"({c!r})*{mono}")
        else:
            bits.append(f"({c!r})")
    return " + ".join(bits)


def poly_to_json(p: MPoly):
    return [
        {"monomial": list(e), "coeff": c.to_json()} for e, c in p.sorted_terms()
    ]


def poly_from_json(data, nvars: int) -> MPoly:
    terms = {}
    for item in data:
        e = tuple(item["monomial"])
        if len(e) != nvars:
            raise SblinksError("monomial arity mismatch in serialized polynomial")
        c = QZeta.from_json(item["coeff"])
        if not c.is_zero():
            terms[e] = c
    return MPoly(nvars, terms)


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class Radical:
    name: str
    degree: int  # 2 or 3
    radicand: RationalFunction  # element of the base field K

    def __post_init__(self):
        if self.degree not in (2, 3):
            raise BadExtension(f"radical degree must be 2 or 3, got {self.degree}")
        if self.radicand.is_zero():
            raise SblinksError("radicand must be nonzero")


class TowerField:
    """K = Q(zeta)(t1..tn) extended by an ordered list of radicals."""

    __slots__ = ("nvars", "radicals", "_hash", "_one", "_zero")

    def __init__(self, nvars: int, radicals=()):
        self.nvars = nvars
        self.radicals = tuple(radicals)
        names = [r.name for r in self.radicals]
        if len(set(names)) != len(names):
            raise SblinksError("duplicate radical names in tower")
        self._hash = None
        self._one = None
        self._zero = None

    @staticmethod
    def rational(nvars: int) -> "TowerField":
        return TowerField(nvars, ())

    def extend(self, name: str, degree: int, radicand: "FieldElement") -> "TowerField":
        if radicand.tower.nvars != self.nvars:
            raise SblinksError("radicand from a different base field")
        if not radicand.in_base():
            raise SblinksError(
                "radicands must lie in the base field K for Galois generators "
                "to act on the whole tower"
            )
        rad = Radical(name, degree, radicand.base_rf())
        return TowerField(self.nvars, self.radicals + (rad,))

    def height(self) -> int:
        return len(self.radicals)

    def prefix(self, k: int) -> "TowerField":
        return TowerField(self.nvars, self.radicals[:k])

    def radical_index(self, name: str) -> int:
        for i, r in enumerate(self.radicals):
            if r.name == name:
                return i
        raise ActionMismatch(f"no radical named {name!r} in tower")

    def radical(self, name: str) -> Radical:
        return self.radicals[self.radical_index(name)]

    def extension_degree(self) -> int:
        d = 1
        for r in self.radicals:
            d *= r.degree
        return d

    # -- element constructors ----------------------------------------------

    def _wrap(self, data) -> "FieldElement":
        return FieldElement(self, data)

    def from_rf(self, rf: RationalFunction) -> "FieldElement":
        if rf.nvars != self.nvars:
            raise SblinksError("rational function arity does not match the tower")
        return self._wrap(_embed_base(self, rf))

    def zero(self) -> "FieldElement":
        if self._zero is None:
            self._zero = self._wrap(_zero_data(self.nvars, self.radicals))
        return self._zero

    def one(self) -> "FieldElement":
        if self._one is None:
            self._one = self.from_rf(RationalFunction.const(self.nvars, 1))
        return self._one

    def scalar(self, c) -> "FieldElement":
        return self.from_rf(RationalFunction.const(self.nvars, c))

    def t_var(self, i: int) -> "FieldElement":
        return self.from_rf(RationalFunction.t_var(self.nvars, i))

    def zeta(self) -> "FieldElement":
        return self.from_rf(RationalFunction.const(self.nvars, QZeta.zeta()))

    def gen(self, name: str) -> "FieldElement":
        """The radical generator as an element of the tower."""
        j = self.radical_index(name)
        level = [
            _zero_data(self.nvars, self.radicals[:j])
            for _ in range(self.radicals[j].degree)
        ]
        level[1] = _one_data(self.nvars, self.radicals[:j])
        data = tuple(level)
        for k in range(j + 1, self.height()):
            zero_below = _zero_data(self.nvars, self.radicals[:k])
            data = (data,) + tuple(
                zero_below for _ in range(self.radicals[k].degree - 1)
            )
        return self._wrap(data)

    def galois_generator(self, name: str) -> "GaloisAction":
        r = self.radical(name)
        return GaloisAction(self, {name: 1}, order=r.degree)

    def galois_generators(self):
        return [self.galois_generator(r.name) for r in self.radicals]

    def group_elements(self):
        """All elements of the Galois group as exponent dicts name -> k."""
        elems = [{}]
        for r in self.radicals:
            elems = [
                {**e, r.name: k} for e in elems for k in range(r.degree)
            ]
        return elems

    def apply_group_element(self, exps: dict, e: "FieldElement") -> "FieldElement":
        act = GaloisAction(self, exps, order=0)
        return act.apply(e)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TowerField)
            and self.nvars == other.nvars
            and self.radicals == other.radicals
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.radicals))
        return self._hash

    def __repr__(self):
        base = f"Q(zeta)({', '.join(f't{i+1}' for i in range(self.nvars))})"
        for r in self.radicals:
            root = "cbrt" if r.degree == 3 else "sqrt"
            base += f"[{r.name}={root}({r.radicand!r})]"
        return base

    def to_json(self):
        return {
            "n_vars": self.nvars,
            "radicals": [
                {
                    "name": r.name,
                    "degree": r.degree,
                    "radicand": r.radicand.to_json(),
                }
                for r in self.radicals
            ],
        }

    @staticmethod
    def from_json(data) -> "TowerField":
        nvars = data["n_vars"]
        rads = []
        for rd in data["radicals"]:
            rads.append(
                Radical(
                    rd["name"],
                    rd["degree"],
                    RationalFunction.from_json(rd["radicand"], nvars),
                )
            )
        return TowerField(nvars, rads)


def _zero_data(nvars: int, radicals):
    if not radicals:
        return RationalFunction(MPoly.zero(nvars), _one_poly(nvars), reduce=False)
    below = _zero_data(nvars, radicals[:-1])
    return tuple(below for _ in range(radicals[-1].degree))


def _one_data(nvars: int, radicals):
    if not radicals:
        return RationalFunction.const(nvars, 1)
    below_one = _one_data(nvars, radicals[:-1])
    below_zero = _zero_data(nvars, radicals[:-1])
    return (below_one,) + tuple(below_zero for _ in range(radicals[-1].degree - 1))


def _embed_base(tower: TowerField, rf: RationalFunction):
    data = rf
    for j, r in enumerate(tower.radicals):
        zero_below = _zero_data(tower.nvars, tower.radicals[:j])
        data = (data,) + tuple(zero_below for _ in range(r.degree - 1))
    return data


# -- recursive data helpers ---------------------------------------------------


def _d_add(a, b):
    if isinstance(a, RationalFunction):
        return a + b
    return tuple(_d_add(x, y) for x, y in zip(a, b))


def _d_neg(a):
    if isinstance(a, RationalFunction):
        return -a
    return tuple(_d_neg(x) for x in a)


def _d_is_zero(a) -> bool:
    if isinstance(a, RationalFunction):
        return a.is_zero()
    return all(_d_is_zero(x) for x in a)


def _d_scale_rf(a, c: RationalFunction):
    if isinstance(a, RationalFunction):
        return a * c
    return tuple(_d_scale_rf(x, c) for x in a)


def _d_mul(tower: TowerField, level: int, a, b):
    if level == 0:
        return a * b
    rad = tower.radicals[level - 1]
    d = rad.degree
    conv = [None] * (2 * d - 1)
    for i in range(d):
        if _d_is_zero(a[i]):
            continue
        for j in range(d):
            if _d_is_zero(b[j]):
                continue
            p = _d_mul(tower, level - 1, a[i], b[j])
            conv[i + j] = p if conv[i + j] is None else _d_add(conv[i + j], p)
    zero = _zero_data(tower.nvars, tower.radicals[: level - 1])
    out = [c if c is not None else zero for c in conv[:d]]
    radicand = _embed_base(tower.prefix(level - 1), rad.radicand)
    for k in range(d, 2 * d - 1):
        if conv[k] is None:
            continue
        extra = _d_mul(tower, level - 1, conv[k], radicand)
        out[k - d] = _d_add(out[k - d], extra)
    return tuple(out)


def _d_galois(tower: TowerField, level: int, images: dict, a):
    if level == 0:
        return a
    rad = tower.radicals[level - 1]
    k = images.get(rad.name, 0) % rad.degree
    entries = [_d_galois(tower, level - 1, images, x) for x in a]
    if k == 0:
        return tuple(entries)
    out = []
    for i, x in enumerate(entries):
        if rad.degree == 3:
            factor = QZeta.zeta_pow(k * i)
            if factor.is_one():
                out.append(x)
            else:
                out.append(_d_scale_rf(x, RationalFunction.const(tower.nvars, factor)))
        else:
            if (k * i) % 2 == 0:
                out.append(x)
            else:
                out.append(_d_neg(x))
    return tuple(out)


def _d_inverse(tower: TowerField, level: int, a):
    if level == 0:
        return a.inverse()
    rad = tower.radicals[level - 1]
    if _d_is_zero(a):
        raise ZeroInverse("0 has no inverse")
    if rad.degree == 2:
        conj = (a[0], _d_neg(a[1]))
    else:
        g = {rad.name: 1}
        a1 = _d_galois(tower, level, g, a)
        a2 = _d_galois(tower, level, g, a1)
        conj = _d_mul(tower, level, a1, a2)
    n = _d_mul(tower, level, a, conj)
    # the norm lies one floor down
    for i in range(1, rad.degree):
        if not _d_is_zero(n[i]):
            raise ZeroInverse(
                "norm with radical coordinates; tower is not a field "
                "(reducible radicand?)"
            )
    if _d_is_zero(n[0]):
        raise ZeroInverse(
            "nonzero element with zero norm; tower is not a field "
            "(reducible radicand?)"
        )
    n_inv = _d_inverse(tower, level - 1, n[0])
    lifted = (n_inv,) + tuple(
        _zero_data(tower.nvars, tower.radicals[: level - 1]) for _ in range(rad.degree - 1)
    )
    return _d_mul(tower, level, conj, lifted)


def _d_in_base(a) -> bool:
    if isinstance(a, RationalFunction):
        return True
    return _d_in_base(a[0]) and all(_d_is_zero(x) for x in a[1:])


def _d_base_rf(a) -> RationalFunction:
    while not isinstance(a, RationalFunction):
        a = a[0]
    return a


def _d_to_json(a):
    if isinstance(a, RationalFunction):
        return a.to_json()
    return [_d_to_json(x) for x in a]


def _d_from_json(data, nvars: int, radicals):
    if not radicals:
        return RationalFunction.from_json(data, nvars)
    d = radicals[-1].degree
    if len(data) != d:
        raise SblinksError("coordinate arity mismatch in serialized element")
    return tuple(_d_from_json(x, nvars, radicals[:-1]) for x in data)


# ---------------------------------------------------------------------------
# Galois actions


class GaloisAction:
    """Automorphism of a tower sending each radical r to unity^k * r.

    images maps radical names to exponents k; unity is zeta for cubic
    radicals and -1 for quadratic ones.  The base K is fixed pointwise.
    """

    __slots__ = ("tower", "images", "order")

    def __init__(self, tower: TowerField, images: dict, order: int | None = None):
        for name in images:
            tower.radical_index(name)  # raises ActionMismatch when absent
        self.tower = tower
        reduced = {
            name: k % tower.radical(name).degree for name, k in images.items()
        }
        self.images = {n: k for n, k in reduced.items() if k}
        o = 1
        for name in self.images:
            d = tower.radical(name).degree
            o = o * d // _gcd_int(o, d)
        self.order = o

    def apply(self, e: "FieldElement") -> "FieldElement":
        if e.tower != self.tower:
            if set(self.images) - {r.name for r in e.tower.radicals}:
                raise ActionMismatch(
                    "action references radicals absent from the element's tower"
                )
            raise ActionMismatch("element belongs to a different tower")
        return FieldElement(
            self.tower, _d_galois(self.tower, self.tower.height(), self.images, e.data)
        )

    def __call__(self, e: "FieldElement") -> "FieldElement":
        return self.apply(e)

    def compose_with(self, other: "GaloisAction") -> "GaloisAction":
        images = dict(self.images)
        for n, k in other.images.items():
            images[n] = images.get(n, 0) + k
        return GaloisAction(self.tower, images)

    def __repr__(self):
        if not self.images:
            return "GaloisAction(id)"
        bits = []
        for n, k in self.images.items():
            d = self.tower.radical(n).degree
            unity = f"zeta^{k}" if d == 3 else "-1"
            bits.append(f"{n} -> {unity}*{n}")
        return "GaloisAction(" + ", ".join(bits) + ")"


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# field elements


class FieldElement:
    __slots__ = ("tower", "data", "_hash")

    def __init__(self, tower: TowerField, data):
        self.tower = tower
        self.data = data
        self._hash = None

    # -- ring/field structure ---------------------------------------------

    def _check(self, other: "FieldElement"):
        if self.tower != other.tower:
            raise SblinksError("tower mismatch in field arithmetic")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.tower, _d_add(self.data, other.data))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.tower, _d_add(self.data, _d_neg(other.data)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.tower, _d_neg(self.data))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(
            self.tower,
            _d_mul(self.tower, self.tower.height(), self.data, other.data),
        )

    def inverse(self) -> "FieldElement":
        return FieldElement(
            self.tower, _d_inverse(self.tower, self.tower.height(), self.data)
        )

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        r = self.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b if k > 1 else b
            k >>= 1
        return r

    def is_zero(self) -> bool:
        return _d_is_zero(self.data)

    def is_one(self) -> bool:
        return _d_in_base(self.data) and _d_base_rf(self.data).is_one()

    def zero(self) -> "FieldElement":
        return self.tower.zero()

    def one(self) -> "FieldElement":
        return self.tower.one()

    # -- structure ------------------------------------------------------------

    def in_base(self) -> bool:
        return _d_in_base(self.data)

    def base_rf(self) -> RationalFunction:
        if not self.in_base():
            raise NotInExtension("element has radical coordinates")
        return _d_base_rf(self.data)

    def lift_to(self, tower: TowerField) -> "FieldElement":
        if tower == self.tower:
            return self
        return FieldElement(tower, _lift_data(self.tower, tower, self.data))

    def galois(self, action: GaloisAction) -> "FieldElement":
        return action.apply(self)

    def coords(self):
        """Top-level coordinates as elements of the prefix tower."""
        h = self.tower.height()
        if h == 0:
            return (self,)
        sub = self.tower.prefix(h - 1)
        return tuple(FieldElement(sub, x) for x in self.data)

    def denominator_poly(self) -> MPoly:
        """lcm of the denominators of all rational-function coordinates."""
        return _d_denominator(self.data, self.tower.nvars)

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.tower == other.tower
            and self.data == other.data
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tower, _hashable(self.data)))
        return self._hash

    def __repr__(self):
        return _d_repr(self.data, [r.name for r in self.tower.radicals])

    # -- json ------------------------------------------------------------------

    def to_json(self):
        return {"tower": self.tower.to_json(), "coords": _d_to_json(self.data)}

    @staticmethod
    def from_json(data) -> "FieldElement":
        tower = TowerField.from_json(data["tower"])
        return FieldElement(
            tower, _d_from_json(data["coords"], tower.nvars, tower.radicals)
        )


def _hashable(data):
    if isinstance(data, RationalFunction):
        return data
    return tuple(_hashable(x) for x in data)


def _d_denominator(data, nvars: int) -> MPoly:
    if isinstance(data, RationalFunction):
        return data.den
    out = _one_poly(nvars)
    for x in data:
        d = _d_denominator(x, nvars)
        if d.is_const():
            continue
        if out.is_const():
            out = d
            continue
        g = gcd(out, d)
        out = out * (d if g.is_const() else exact_div(d, g))
    return out


def _d_repr(data, names):
    if isinstance(data, RationalFunction):
        return repr(data)
    name = names[-1]
    bits = []
    for i, x in enumerate(data):
        if _d_is_zero(x):
            continue
        inner = _d_repr(x, names[:-1])
        if i == 0:
            bits.append(inner)
        else:
            power = name if i == 1 else f"{name}^{i}"
            bits.append(f"({inner})*{power}")
    return " + ".join(bits) if bits else "0"


def _lift_data(src: TowerField, dst: TowerField, data):
    if src.nvars != dst.nvars:
        raise SblinksError("cannot lift between different base fields")
    return _lift_rec(src.radicals, dst.radicals, data, dst.nvars)


def _lift_rec(src_rads, dst_rads, data, nvars):
    if not dst_rads:
        if src_rads:
            raise SblinksError("element tower is not contained in the target tower")
        return data
    top = dst_rads[-1]
    if src_rads and _same_radical(src_rads[-1], top):
        return tuple(
            _lift_rec(src_rads[:-1], dst_rads[:-1], x, nvars) for x in data
        )
    lifted = _lift_rec(src_rads, dst_rads[:-1], data, nvars)
    zero = _zero_data(nvars, dst_rads[:-1])
    return (lifted,) + tuple(zero for _ in range(top.degree - 1))


def _same_radical(a: Radical, b: Radical) -> bool:
    return a.name == b.name and a.degree == b.degree and a.radicand == b.radicand


# ---------------------------------------------------------------------------
# element operations: normalize / invert / apply_galois / norm


def normalize(e: FieldElement) -> FieldElement:
    """Re-canonicalise an element (arithmetic already keeps canonical forms,
    so this is a validation pass that rebuilds the representation)."""
    return e + e.tower.zero()


def invert(e: FieldElement) -> FieldElement:
    return e.inverse()


def apply_galois(action: GaloisAction, e: FieldElement) -> FieldElement:
    return action.apply(e)


@dataclass(frozen=True)
class CubicExtension:
    """A tower together with the distinguished degree-3 radical giving L/K."""

    tower: TowerField
    radical_name: str

    def __post_init__(self):
        rad = self.tower.radical(self.radical_name)
        if rad.degree != 3:
            raise BadExtension("the distinguished radical must have degree 3")

    @property
    def generator(self) -> GaloisAction:
        return self.tower.galois_generator(self.radical_name)

    @property
    def radicand_rf(self) -> RationalFunction:
        return self.tower.radical(self.radical_name).radicand

    def radicand(self) -> FieldElement:
        return self.tower.from_rf(self.radicand_rf)

    def root(self) -> FieldElement:
        return self.tower.gen(self.radical_name)


def norm(ext: CubicExtension, e: FieldElement) -> FieldElement:
    """a * g(a) * g^2(a) for the distinguished order-3 generator g."""
    if e.tower != ext.tower:
        raise NotInExtension("element does not belong to the extension tower")
    g = ext.generator
    n = e * g.apply(e) * g.apply(g.apply(e))
    if g.apply(n) != n:  # pragma: no cover - sanity
        raise NotInExtension("norm failed to land in the fixed field")
    return n


# ---------------------------------------------------------------------------
# decidable cube / square / norm tests


@dataclass
class TriState:
    status: str  # "yes" | "no" | "unknown"
    witness: object = None
    certificate: dict | None = None

    def __bool__(self):
        raise TypeError("TriState is not a boolean; inspect .status")


def _constant_nth_root(c: QZeta, n: int):
    r = qzeta_nth_root(c, n)
    if r is not None:
        return r
    if c.is_rational():
        return None  # exact non-existence for rationals
    return _sympy_constant_root(c, n)


def _sympy_constant_root(c: QZeta, n: int):
    import sympy

    z = sympy.Rational(-1, 2) + sympy.sqrt(-3) / 2
    X = sympy.symbols("X")
    expr = sympy.Rational(c.re) + sympy.Rational(c.zc) * z
    poly = sympy.Poly(X**n - expr, X, extension=[sympy.sqrt(-3)])
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            coeffs = fac.all_coeffs()
            root = sympy.expand(-coeffs[1] / coeffs[0])
            # a + b sqrt(-3) = (a + b) + 2b zeta
            a = root.coeff(sympy.sqrt(-3), 0)
            b = root.coeff(sympy.sqrt(-3), 1)
            qa = Fraction(str(sympy.nsimplify(a)))
            qb = Fraction(str(sympy.nsimplify(b)))
            cand = QZeta(qa + qb, 2 * qb)
            if cand ** n == c:
                return cand
    return None


def _nth_power_free_data(p: MPoly, n: int):
    """(ok, witness_poly, bad_factor, bad_mult): multiplicity structure mod n."""
    const, parts = squarefree_decomposition(p)
    witness = MPoly.const(p.nvars, QZeta.one())
    for g, k in parts:
        if k % n != 0:
            return False, None, g, k, const
        witness = witness * g ** (k // n)
    return True, witness, None, None, const


def _is_nth_power_rf(c: RationalFunction, n: int) -> TriState:
    if c.is_zero():
        raise SblinksError("power test on 0")
    if c.is_constant():
        v = c.constant_value()
        r = _constant_nth_root(v, n)
        if r is not None:
            return TriState("yes", RationalFunction.const(c.nvars, r))
        if v.is_rational():
            return TriState(
                "no", certificate={"kind": "constant", "value": str(v.re), "n": n}
            )
        return TriState("unknown")
    dnum = c.num.total_degree()
    dden = c.den.total_degree()
    if (dnum - dden) % n != 0:
        return TriState(
            "no",
            certificate={
                "kind": "degree",
                "num_degree": dnum,
                "den_degree": dden,
                "n": n,
            },
        )
    ok_n, wn, bad, mult, cn = _nth_power_free_data(c.num, n)
    if not ok_n:
        return TriState(
            "no",
            certificate={
                "kind": "multiplicity",
                "where": "num",
                "factor": poly_to_json(bad),
                "multiplicity": mult,
                "n": n,
            },
        )
    ok_d, wd, bad, mult, cd = _nth_power_free_data(c.den, n)
    if not ok_d:
        return TriState(
            "no",
            certificate={
                "kind": "multiplicity",
                "where": "den",
                "factor": poly_to_json(bad),
                "multiplicity": mult,
                "n": n,
            },
        )
    cr = _constant_nth_root(cn * cd.inverse(), n)
    if cr is None:
        if (cn * cd.inverse()).is_rational():
            return TriState(
                "no",
                certificate={
                    "kind": "constant",
                    "value": str((cn * cd.inverse()).re),
                    "n": n,
                },
            )
        return TriState("unknown")
    witness = RationalFunction(wn.scale(cr), wd)
    return TriState("yes", witness)


def is_cube(c: FieldElement) -> TriState:
    """Decide whether c in K is a cube in K (decidable fragment)."""
    rf = c.base_rf()
    res = _is_nth_power_rf(rf, 3)
    if res.status == "yes":
        res.witness = c.tower.from_rf(res.witness)
        assert (res.witness ** 3) == c
    return res


def is_square(c: FieldElement) -> TriState:
    rf = c.base_rf()
    res = _is_nth_power_rf(rf, 2)
    if res.status == "yes":
        res.witness = c.tower.from_rf(res.witness)
        assert (res.witness ** 2) == c
    return res


def recheck_power_certificate(c: FieldElement, cert: dict) -> bool:
    """Independently re-verify a "no" certificate from is_cube/is_square."""
    rf = c.base_rf()
    n = cert["n"]
    kind = cert["kind"]
    if kind == "degree":
        return (
            rf.num.total_degree() == cert["num_degree"]
            and rf.den.total_degree() == cert["den_degree"]
            and (cert["num_degree"] - cert["den_degree"]) % n != 0
        )
    if kind == "constant":
        v = Fraction(cert["value"])
        from .scalars import rational_nth_root

        return rational_nth_root(v, n) is None
    if kind == "multiplicity":
        factor = poly_from_json(cert["factor"], rf.nvars)
        target = rf.num if cert["where"] == "num" else rf.den
        m = 0
        cur = target
        from .multipoly import try_div

        while True:
            nxt = try_div(cur, factor)
            if nxt is None:
                break
            cur = nxt
            m += 1
        from .multipoly import squarefree_part

        return (
            m == cert["multiplicity"]
            and m % n != 0
            and squarefree_part(factor) == factor.monic()
            and factor.total_degree() > 0
        )
    return False


def is_norm(ext: CubicExtension, xi: FieldElement) -> TriState:
    """Decide whether xi in K* is a norm of L = K[cbrt(lambda)] over K.

    yes: xi / lambda^j is a cube c^3 for some j in {0,1,2}; the witness is
         c * r^j with r the cube root of lambda (re-verified by norm()).
    no:  when lambda is a nonzero-constant multiple of a single variable t_i,
         the weighted total degree (t_i counts 3, others 1) of xi must be
         divisible by 3 for xi to be a norm; a violation is a certificate.
    """
    if xi.is_zero():
        raise SblinksError("norm test on 0")
    xi_rf = xi.base_rf()
    lam = ext.radicand_rf
    tower = ext.tower

    lam_elem = tower.from_rf(lam)
    for j in range(3):
        cand = xi / lam_elem ** j
        res = is_cube(cand)
        if res.status == "yes":
            witness = res.witness * ext.root() ** j
            n = norm(ext, witness)
            if n != xi:  # pragma: no cover - sanity
                raise SblinksError("norm witness failed re-verification")
            return TriState("yes", witness)

    var = _single_variable_index(lam)
    if var is not None:
        weights = [1] * xi_rf.nvars
        weights[var] = 3
        d = xi_rf.num.weighted_degree(weights) - xi_rf.den.weighted_degree(weights)
        if d % 3 != 0:
            return TriState(
                "no",
                certificate={
                    "kind": "norm-degree",
                    "variable": var,
                    "weighted_degree": d,
                },
            )
    return TriState("unknown")


def recheck_norm_certificate(ext: CubicExtension, xi: FieldElement, cert: dict) -> bool:
    if cert.get("kind") != "norm-degree":
        return False
    var = cert["variable"]
    lam = ext.radicand_rf
    if _single_variable_index(lam) != var:
        return False
    xi_rf = xi.base_rf()
    weights = [1] * xi_rf.nvars
    weights[var] = 3
    d = xi_rf.num.weighted_degree(weights) - xi_rf.den.weighted_degree(weights)
    return d == cert["weighted_degree"] and d % 3 != 0


def _single_variable_index(rf: RationalFunction):
    """Index i when rf = c * t_i with c a nonzero constant, else None."""
    if not rf.den.is_const():
        return None
    if len(rf.num.terms) != 1:
        return None
    (exps, _), = rf.num.terms.items()
    if sum(exps) != 1:
        return None
    return exps.index(1)


# ---------------------------------------------------------------------------
# radical roots inside towers (fragment used by descent and point solving)


def nth_root_in_k(c: FieldElement, n: int):
    """Root in K of a base element, or None."""
    res = _is_nth_power_rf(c.base_rf(), n)
    if res.status == "yes":
        return c.tower.from_rf(res.witness)
    if res.status == "no":
        return None
    return None


def cbrt_in_tower(e: FieldElement):
    """A cube root of e inside its own tower, if one is visible in the
    fragment: base candidates are searched across products of the tower's
    cubic radicals."""
    tower = e.tower
    if e.is_zero():
        return tower.zero()
    if e.in_base():
        cubic = [r for r in tower.radicals if r.degree == 3]
        from itertools import product

        for exps in product(range(3), repeat=len(cubic)):
            denom = tower.one()
            for r, a in zip(cubic, exps):
                if a:
                    denom = denom * tower.from_rf(r.radicand) ** a
            w = nth_root_in_k(e / denom, 3)
            if w is not None:
                root = w
                for r, a in zip(cubic, exps):
                    if a:
                        root = root * tower.gen(r.name) ** a
                if root ** 3 == e:
                    return root
        return None
    return None


def sqrt_in_tower(e: FieldElement):
    """A square root of e inside its own tower (fragment)."""
    tower = e.tower
    if e.is_zero():
        return tower.zero()
    if e.in_base():
        quad = [r for r in tower.radicals if r.degree == 2]
        from itertools import product

        for exps in product(range(2), repeat=len(quad)):
            denom = tower.one()
            for r, a in zip(quad, exps):
                if a:
                    denom = denom * tower.from_rf(r.radicand)
            w = nth_root_in_k(e / denom, 2)
            if w is not None:
                root = w
                for r, a in zip(quad, exps):
                    if a:
                        root = root * tower.gen(r.name)
                if root ** 2 == e:
                    return root
        return None
    # quadratic-extension shape a + b*s with s^2 = alpha, both a, b in the
    # fixed part: solve (x + y s)^2 = e
    h = tower.height()
    top = tower.radicals[-1]
    if top.degree == 2:
        sub = tower.prefix(h - 1)
        a = FieldElement(sub, e.data[0])
        b = FieldElement(sub, e.data[1])
        alpha = sub.from_rf(top.radicand)
        if not b.is_zero():
            disc = a * a - b * b * alpha
            d = sqrt_in_tower(disc)
            if d is not None:
                half = sub.scalar(Fraction(1, 2))
                for sgn in (1, -1):
                    xx = (a + d) * half if sgn == 1 else (a - d) * half
                    x = sqrt_in_tower(xx)
                    if x is not None and not x.is_zero():
                        y = b * half / x
                        cand_data = (x.data, y.data)
                        cand = FieldElement(tower, cand_data)
                        if cand * cand == e:
                            return cand
    return None
