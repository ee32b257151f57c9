"""Rational self-maps of the plane over tower fields, equivariance checks,
and the construction of Sarkisov 3-links and 6-links from closed points.

Maps are triples of homogeneous polynomials, stored with gcd 1 and the
grlex-least nonzero coefficient scaled to 1, so projective equality is
representation equality up to the stored normalisation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    Collinear,
    EquivariantBasisNotFound,
    IdenticallyZero,
    NonFiniteBaseLocus,
    BaseLocusNotSplit,
    SblinksError,
    SpecialPosition,
)
from .field_tower import (
    FieldElement,
    GaloisAction,
    TowerField,
    cbrt_in_tower,
    sqrt_in_tower,
)
from .linalg import (
    det3,
    inverse3,
    mat,
    mat_vec,
    nullspace,
    rank,
    solve,
)
from .multipoly import (
    MPoly,
    exact_div,
    gcd,
    gcd_many,
    gcd_many_homogeneous,
    grlex_key,
    resultant,
    squarefree_part,
)
from .severi_brauer import (
    ClosedPoint,
    SBSurface,
    make_closed_point,
    normalize_3point,
    normalize_point,
)


# ---------------------------------------------------------------------------
# rational maps


class RationalMap:
    """A rational map P^(m-1) --> P^2 given by 3 homogeneous polynomials."""

    __slots__ = ("tower", "coords", "degree", "_hash")

    def __init__(self, tower: TowerField, coords, normalize: bool = True):
        coords = tuple(coords)
        if len(coords) != 3:
            raise SblinksError("a map to the plane needs exactly 3 coordinates")
        if all(c.is_zero() for c in coords):
            raise IdenticallyZero("all map coordinates vanish")
        if normalize:
            coords = _normalize_coords(coords)
        self.tower = tower
        self.coords = coords
        degs = {c.total_degree() for c in coords if not c.is_zero()}
        if len(degs) != 1:
            raise SblinksError("map coordinates must share one degree")
        self.degree = degs.pop()
        self._hash = None

    @property
    def nsrc(self) -> int:
        return self.coords[0].nvars

    # -- constructors --------------------------------------------------------

    @staticmethod
    def identity(tower: TowerField) -> "RationalMap":
        one = tower.one()
        coords = tuple(MPoly.variable(3, i, one) for i in range(3))
        return RationalMap(tower, coords, normalize=False)

    @staticmethod
    def standard_involution(tower: TowerField) -> "RationalMap":
        """sigma: [x:y:z] -> [yz:xz:xy]."""
        one = tower.one()

        def mono(i, j):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            return MPoly.monomial(3, tuple(e), one)

        return RationalMap(tower, (mono(1, 2), mono(0, 2), mono(0, 1)))

    @staticmethod
    def from_matrix(tower: TowerField, m) -> "RationalMap":
        coords = []
        for row in m:
            p = MPoly.zero(3)
            for j, c in enumerate(row):
                if not c.is_zero():
                    p = p + MPoly.variable(3, j, c)
            coords.append(p)
        return RationalMap(tower, coords)

    # -- queries --------------------------------------------------------------

    def is_linear(self) -> bool:
        return self.degree == 1

    def matrix(self):
        """Coefficient matrix of a linear map."""
        if self.degree != 1:
            raise SblinksError("matrix extraction needs a linear map")
        zero = self.tower.zero()
        rows = []
        for c in self.coords:
            row = [zero, zero, zero]
            for e, coeff in c.terms.items():
                row[e.index(1)] = coeff
            rows.append(tuple(row))
        return tuple(rows)

    def lift_to(self, tower: TowerField) -> "RationalMap":
        if tower == self.tower:
            return self
        coords = tuple(
            c.map_coeffs(lambda x: x.lift_to(tower)) for c in self.coords
        )
        return RationalMap(tower, coords, normalize=False)

    def galois(self, action: GaloisAction) -> "RationalMap":
        return RationalMap(
            self.tower,
            tuple(c.map_coeffs(action.apply) for c in self.coords),
            normalize=False,
        )

    def evaluate(self, point):
        """Image of a projective point (raises if the point is in the base locus)."""
        zero = self.tower.zero()
        vals = tuple(c.eval_zero_ok(list(point), zero) for c in self.coords)
        if all(v.is_zero() for v in vals):
            raise SblinksError("point lies in the base locus")
        return normalize_point(vals)

    # -- comparisons ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, RationalMap)
            and self.tower == other.tower
            and self.coords == other.coords
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tower, self.coords))
        return self._hash

    def __repr__(self):
        return "[" + " : ".join(_poly_str_xyz(c) for c in self.coords) + "]"

    def to_json(self):
        return {
            "tower": self.tower.to_json(),
            "degree": self.degree,
            "coords": [
                [
                    {"monomial": list(e), "coeff": c.to_json()}
                    for e, c in p.sorted_terms()
                ]
                for p in self.coords
            ],
        }


def _poly_str_xyz(p: MPoly) -> str:
    names = ["x", "y", "z", "w"]
    if p.is_zero():
        return "0"
    bits = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        cs = repr(c)
        bits.append(f"({cs})*{mono}" if mono else f"({cs})")
    return " + ".join(bits)


def _clear_denominators(p: MPoly):
    """Scale a polynomial over a tower by the lcm of its coefficients'
    rational-function denominators (a base-field scalar, so gcds and
    projective classes are unchanged, but later arithmetic stays
    denominator-free)."""
    from .field_tower import RationalFunction
    from .multipoly import gcd as base_gcd, exact_div as base_div

    tower = None
    den = None
    for c in p.terms.values():
        tower = c.tower
        d = c.denominator_poly()
        if d.is_const():
            continue
        if den is None or den.is_const():
            den = d
            continue
        g = base_gcd(den, d)
        den = den * (d if g.is_const() else base_div(d, g))
    if den is None or den.is_const():
        return p
    return p.scale(tower.from_rf(RationalFunction.from_poly(den)))


def _normalize_coords(coords):
    nonzero = [_clear_denominators(c) for c in coords if not c.is_zero()]
    g = gcd_many_homogeneous(nonzero)
    if not g.is_const():
        coords = tuple(
            c if c.is_zero() else exact_div(c, g) for c in coords
        )
    best = None
    for i, c in enumerate(coords):
        for e in c.terms:
            key = (grlex_key(e), i)
            if best is None or key < best[0]:
                best = (key, c.terms[e])
    scale = best[1].inverse()
    return tuple(c.scale(scale) for c in coords)


def equals(f: RationalMap, g: RationalMap) -> bool:
    """Projective equality of maps via vanishing 2x2 cross products.

    Maps over nested towers are lifted to the larger one first."""
    if f.nsrc != g.nsrc:
        return False
    if f.tower != g.tower:
        try:
            if f.tower.height() <= g.tower.height():
                f = f.lift_to(g.tower)
            else:
                g = g.lift_to(f.tower)
        except SblinksError:
            return False
    for i in range(3):
        for j in range(i + 1, 3):
            if not (f.coords[i] * g.coords[j] - f.coords[j] * g.coords[i]).is_zero():
                return False
    return True


def compose(f: RationalMap, h: RationalMap) -> RationalMap:
    """f after h: substitute the coordinates of h into f and reduce."""
    if f.nsrc != 3:
        raise SblinksError("outer map must be a plane map")
    if f.tower != h.tower:
        raise SblinksError("compose needs maps over the same tower")
    coords = tuple(c.subst(list(h.coords)) for c in f.coords)
    if all(c.is_zero() for c in coords):
        raise IdenticallyZero(
            "composition collapses: the inner map lands in the base locus"
        )
    return RationalMap(f.tower, coords)


def apply_matrix(m, f: RationalMap) -> RationalMap:
    """The map x -> m . f(x)."""
    coords = []
    for row in m:
        p = MPoly.zero(f.nsrc)
        for c, fj in zip(row, f.coords):
            if not c.is_zero():
                p = p + fj.scale(c)
        coords.append(p)
    return RationalMap(f.tower, coords)


def subst_linear(f: RationalMap, m) -> RationalMap:
    """The map x -> f(m x)."""
    one = f.tower.one()
    linear = []
    n = len(m[0])
    for j in range(n):
        p = MPoly.zero(n)
        for k in range(n):
            c = m[j][k]
            if not c.is_zero():
                p = p + MPoly.variable(n, k, c)
        linear.append(p)
    coords = tuple(c.subst(linear) for c in f.coords)
    return RationalMap(f.tower, coords)


# ---------------------------------------------------------------------------
# twisted maps and equivariance


def is_equivariant(f: RationalMap, src: SBSurface, tgt: SBSurface) -> bool:
    """Whether f intertwines the twisted Galois actions of src and tgt,
    checked for every radical generator of the map's tower."""
    tower = f.tower
    for rad in tower.radicals:
        exps = {rad.name: 1}
        act = GaloisAction(tower, exps)
        A_src = src.twist_matrix(exps, tower)
        A_tgt = tgt.twist_matrix(exps, tower)
        lhs = subst_linear(f, A_src)
        rhs = apply_matrix(A_tgt, f.galois(act))
        if not equals(lhs, rhs):
            return False
    return True


@dataclass(frozen=True)
class TwistedMap:
    map: RationalMap
    source: SBSurface
    target: SBSurface

    def __post_init__(self):
        if not is_equivariant(self.map, self.source, self.target):
            raise SblinksError("map is not equivariant for the given twists")

    def to_json(self):
        return {
            "map": self.map.to_json(),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
        }


@dataclass(frozen=True)
class Link:
    forward: TwistedMap
    backward: TwistedMap
    base_point: ClosedPoint
    inverse_base_point: ClosedPoint
    degree_class: int

    def __post_init__(self):
        if self.base_point.descriptor != self.inverse_base_point.descriptor:
            raise SblinksError(
                "base point and inverse base point have different splitting fields"
            )
        expected = {3: 2, 6: 5}[self.degree_class]
        if self.forward.map.degree != expected:
            raise SblinksError(
                f"a {self.degree_class}-link must have forward degree {expected}"
            )
        round_trip = compose(self.backward.map, self.forward.map)
        if not equals(round_trip, RationalMap.identity(self.forward.map.tower)):
            raise SblinksError("backward o forward is not the identity")

    def inverse(self) -> "Link":
        return Link(
            self.backward,
            self.forward,
            self.inverse_base_point,
            self.base_point,
            self.degree_class,
        )


# ---------------------------------------------------------------------------
# spaces of curves through points


def _monomials(nvars: int, degree: int):
    if nvars == 1:
        return [(degree,)]
    out = []
    for k in range(degree + 1):
        for rest in _monomials(nvars - 1, degree - k):
            out.append((k,) + rest)
    return out


def curves_through(tower: TowerField, components, degree: int, double: bool = False):
    """Basis of forms of the given degree vanishing at the components
    (to order 2 when double=True)."""
    monos = _monomials(3, degree)
    rows = []
    zero = tower.zero()
    for v in components:
        row = []
        for e in monos:
            val = MPoly.monomial(3, e, tower.one()).eval(list(v))
            row.append(val)
        rows.append(tuple(row))
        if double:
            # two affine partials suffice by Euler's relation, provided they
            # avoid a coordinate where the point is nonzero
            pivot = max(i for i in range(3) if not v[i].is_zero())
            for var in (i for i in range(3) if i != pivot):
                row = []
                for e in monos:
                    d = MPoly.monomial(3, e, tower.one()).derivative(var)
                    row.append(d.eval_zero_ok(list(v), zero))
                rows.append(tuple(row))
    basis = nullspace(rows, tower)
    out = []
    for vec in basis:
        p = MPoly.zero(3)
        for e, c in zip(monos, vec):
            if not c.is_zero():
                p = p + MPoly.monomial(3, e, c)
        out.append(p)
    return out, rows


# ---------------------------------------------------------------------------
# equivariant basis descent


def _express_in_span(p: MPoly, basis, tower: TowerField):
    """Coefficients of p over the basis, or None when outside the span."""
    monos = sorted({e for q in basis for e in q.terms} | set(p.terms), key=grlex_key)
    zero = tower.zero()
    rows = []
    for e in monos:
        rows.append(tuple(q.terms.get(e, zero) for q in basis))
    rhs = tuple(p.terms.get(e, zero) for e in monos)
    sol = solve(rows, rhs, tower)
    if sol is None:
        return None
    # solve() returns one solution; verify (the system may be overdetermined)
    for e, r in zip(monos, rhs):
        acc = zero
        for c, q in zip(sol, basis):
            acc = acc + c * q.terms.get(e, zero)
        if acc != r:
            return None
    return sol


class _TripleSpace:
    """Triples of forms from a fixed space W, as coordinate vectors."""

    def __init__(self, tower: TowerField, w_basis):
        self.tower = tower
        self.w = list(w_basis)
        self.dim = 3 * len(self.w)

    def to_triple(self, vec):
        k = len(self.w)
        out = []
        for i in range(3):
            p = MPoly.zero(3)
            for j in range(k):
                c = vec[i * k + j]
                if not c.is_zero():
                    p = p + self.w[j].scale(c)
            out.append(p)
        return tuple(out)

    def from_triple(self, triple):
        out = []
        for p in triple:
            coeffs = _express_in_span(p, self.w, self.tower)
            if coeffs is None:
                return None
            out.extend(coeffs)
        return tuple(out)


def _subst_matrix_poly(p: MPoly, m, tower: TowerField):
    """p(m . x) without any normalisation."""
    n = len(m[0])
    linear = []
    for j in range(len(m)):
        q = MPoly.zero(n)
        for k in range(n):
            c = m[j][k]
            if not c.is_zero():
                q = q + MPoly.variable(n, k, c)
        linear.append(q)
    return p.subst(linear)


def _triple_operator(triple, A_src, A_tgt_inv, act_inv, tower):
    sub = [_subst_matrix_poly(p, A_src, tower) for p in triple]
    mixed = []
    for row in A_tgt_inv:
        q = MPoly.zero(3)
        for c, pj in zip(row, sub):
            if not c.is_zero():
                q = q + pj.scale(c)
        mixed.append(q)
    return tuple(q.map_coeffs(act_inv.apply) for q in mixed)


def _semilinear_operator(space: _TripleSpace, src: SBSurface, tgt: SBSurface, exps):
    """Matrix of G_sigma(c) = sigma^{-1}(A_tgt^{-1} (c o A_src)) on W^3."""
    tower = space.tower
    inv_exps = {n: -k for n, k in exps.items()}
    act_inv = GaloisAction(tower, inv_exps)
    A_src = src.twist_matrix(exps, tower)
    A_tgt_inv = inverse3(tgt.twist_matrix(exps, tower))
    cols = []
    k = space.dim
    for j in range(k):
        e = [tower.zero()] * k
        e[j] = tower.one()
        triple = space.to_triple(e)
        out = _triple_operator(triple, A_src, A_tgt_inv, act_inv, tower)
        vec = space.from_triple(out)
        if vec is None:
            raise EquivariantBasisNotFound(
                "curve space is not stable under the twisted action"
            )
        cols.append(vec)
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def _semilinear_apply(matrix, act_inv: GaloisAction, vec):
    moved = tuple(act_inv.apply(x) for x in vec)
    return mat_vec(matrix, moved)


def equivariant_triple(
    src: SBSurface, tgt: SBSurface, w_basis, tower: TowerField
):
    """A triple of forms in the span of w_basis that intertwines the twisted
    actions of src and tgt, found by semilinear eigenvector descent over each
    radical generator in turn."""
    space = _TripleSpace(tower, w_basis)
    k = space.dim
    one, zero = tower.one(), tower.zero()
    current = []
    for j in range(k):
        v = [zero] * k
        v[j] = one
        current.append(tuple(v))

    for rad in tower.radicals:
        exps = {rad.name: 1}
        act_inv = GaloisAction(tower, {rad.name: -1})
        G = _semilinear_operator(space, src, tgt, exps)
        d = rad.degree
        # rho = G^d as a scalar on the current space
        new_vectors = []
        for v in current:
            iters = [v]
            for _ in range(d):
                iters.append(_semilinear_apply(G, act_inv, iters[-1]))
            vd = iters[d]
            rho = None
            for a, b in zip(vd, v):
                if not b.is_zero():
                    rho = a / b
                    break
            if rho is None:
                continue
            if tuple(x * rho for x in v) != tuple(vd):
                raise EquivariantBasisNotFound(
                    "semilinear operator is not scalar on the candidate space"
                )
            roots = _unity_roots(tower, rho, d)
            for theta in roots:
                theta_inv = theta.inverse()
                acc = list(v)
                p = one
                for kk in range(1, d):
                    p = p * theta_inv
                    acc = [a + p * b for a, b in zip(acc, iters[kk])]
                if any(not a.is_zero() for a in acc):
                    new_vectors.append(tuple(acc))
                    break
        current = _independent_subset(new_vectors, tower)
        if not current:
            raise EquivariantBasisNotFound(
                f"no equivariant vector survives the descent at {rad.name}"
            )

    for v in current:
        triple = space.to_triple(v)
        if _triple_independent(triple, tower):
            return triple
    raise EquivariantBasisNotFound(
        "equivariant vectors found, but none gives three independent forms"
    )


def _unity_roots(tower: TowerField, rho: FieldElement, d: int):
    if d == 3:
        theta = cbrt_in_tower(rho)
        if theta is None:
            return []
        z = tower.zeta()
        return [theta, theta * z, theta * z * z]
    theta = sqrt_in_tower(rho)
    if theta is None:
        return []
    return [theta, -theta]


def _independent_subset(vectors, tower: TowerField):
    out = []
    rows = []
    for v in vectors:
        if all(x.is_zero() for x in v):
            continue
        if rank(rows + [v]) > len(out):
            out.append(v)
            rows.append(v)
    return out


def _triple_independent(triple, tower: TowerField) -> bool:
    monos = sorted({e for p in triple for e in p.terms}, key=grlex_key)
    zero = tower.zero()
    rows = [tuple(p.terms.get(e, zero) for e in monos) for p in triple]
    return rank(rows) == 3


# ---------------------------------------------------------------------------
# images of contracted curves


def image_of_line(f: RationalMap, va, vb):
    """Image point of the line spanned by va, vb, assuming f contracts it."""
    tower = f.tower
    one = tower.one()
    param = []
    for a, b in zip(va, vb):
        p = MPoly.const(1, a) + MPoly.variable(1, 0, one).scale(b)
        param.append(p)
    vals = [c.subst(param) for c in f.coords]
    return _constant_direction(vals, tower)


def _constant_direction(vals, tower: TowerField):
    nonzero = [v for v in vals if not v.is_zero()]
    if not nonzero:
        raise SblinksError("curve lies in the base locus")
    g = gcd_many(nonzero) if len(nonzero) > 1 else nonzero[0].monic()
    out = []
    for v in vals:
        if v.is_zero():
            out.append(tower.zero())
        else:
            q = exact_div(v, g)
            if not q.is_const():
                raise SblinksError("curve is not contracted by the map")
            out.append(q.const_coeff())
    return normalize_point(tuple(out))


def parametrize_conic(conic: MPoly, v, tower: TowerField):
    """Quadratic parametrization of a conic through the point v on it."""
    one, zero = tower.one(), tower.zero()
    units = [
        (one, zero, zero),
        (zero, one, zero),
        (zero, zero, one),
    ]
    u_pair = None
    for i in range(3):
        for j in range(i + 1, 3):
            m = mat([[v[k], units[i][k], units[j][k]] for k in range(3)])
            if not det3(m).is_zero():
                u_pair = (units[i], units[j])
                break
        if u_pair:
            break
    if u_pair is None:  # pragma: no cover
        raise SblinksError("degenerate point for conic parametrization")
    u1, u2 = u_pair

    def ev(vec):
        return conic.eval(list(vec))

    # d(s) = u1 + s u2 with s the parameter
    s_var = MPoly.variable(1, 0, one)
    d = [MPoly.const(1, a) + s_var.scale(b) for a, b in zip(u1, u2)]
    # C(d(s)) and the polar B(v, d(s)) = C(v + d) - C(v) - C(d)
    c_d = conic.subst(d)
    vd = [MPoly.const(1, a) + p for a, p in zip(v, d)]
    c_vd = conic.subst(vd)
    c_v = ev(v)
    b_vd = c_vd - c_d - MPoly.const(1, c_v)
    # P(s) = C(d) * v - B(v, d) * d
    param = [c_d.scale(a) - b_vd * p for a, p in zip(v, d)]
    # sanity: the parametrization stays on the conic
    if not conic.subst(param).is_zero():  # pragma: no cover
        raise SblinksError("conic parametrization failed")
    return param


def image_of_conic(f: RationalMap, conic: MPoly, through, tower: TowerField):
    param = parametrize_conic(conic, through, tower)
    vals = [c.subst(param) for c in f.coords]
    return _constant_direction(vals, tower)


# ---------------------------------------------------------------------------
# base points


def base_points(f: RationalMap):
    """The finite common zero locus of the three coordinates, solved over the
    map's tower by shearing, resultants and radical-fragment root extraction."""
    if f.nsrc != 3:
        raise SblinksError("base points are computed for plane maps")
    tower = f.tower
    g = gcd_many_homogeneous([c for c in f.coords if not c.is_zero()])
    if not g.is_const():
        raise NonFiniteBaseLocus(
            "the three coordinates share a common curve (malformed map)"
        )
    if f.degree == 1:
        return []
    shears = _shear_matrices(tower)
    last_err = None
    for m in shears:
        try:
            pts = _base_points_sheared(f, m)
        except (_RetryShear,) as e:
            last_err = e
            continue
        out = []
        zero = tower.zero()
        for p in pts:
            vals = [c.eval_zero_ok(list(p), zero) for c in f.coords]
            if all(v.is_zero() for v in vals):
                out.append(p)
        return out
    raise BaseLocusNotSplit(f"no shear produced a solvable system: {last_err}")


class _RetryShear(Exception):
    pass


def _shear_matrices(tower: TowerField):
    one, zero = tower.one(), tower.zero()

    def s(c):
        return tower.scalar(c)

    candidates = [
        [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        [[one, s(1), s(2)], [zero, one, s(3)], [zero, zero, one]],
        [[one, s(2), s(1)], [s(1), one, s(1)], [zero, s(1), one]],
        [[one, s(3), s(5)], [s(2), one, s(7)], [s(1), s(1), one]],
        [[one, s(5), s(11)], [s(3), one, s(2)], [s(2), s(5), one]],
    ]
    return [mat(c) for c in candidates if not det3(mat(c)).is_zero()]


def _base_points_sheared(f: RationalMap, m):
    tower = f.tower
    fs = subst_linear(f, m)
    c1, c2, c3 = fs.coords
    if c1.deg_in(0) <= 0:
        raise _RetryShear("first coordinate independent of x")
    u = c2 + c3.scale(tower.scalar(1))
    v = c2 + c3.scale(tower.scalar(2))
    if u.is_zero() or v.is_zero() or u.deg_in(0) <= 0 or v.deg_in(0) <= 0:
        raise _RetryShear("degenerate combination")
    try:
        r_a = resultant(c1, u, 0)
        r_b = resultant(c1, v, 0)
    except ValueError as e:
        raise _RetryShear(str(e))
    if r_a.is_zero() or r_b.is_zero():
        raise _RetryShear("vanishing resultant (shared factor)")
    gb = gcd(r_a, r_b)
    pts = []
    # (1:0:0) projects nowhere on the (y:z) line; test it directly
    origin = (tower.one(), tower.zero(), tower.zero())
    zero = tower.zero()
    if all(c.eval_zero_ok(list(origin), zero).is_zero() for c in (c1, c2, c3)):
        pts.append(normalize_point(mat_vec(m, origin)))
    if gb.is_const():
        return pts
    gb = squarefree_part(gb)
    proj = _binary_form_roots(gb, tower)
    for (y0, z0) in proj:
        uni = []
        for c in (c1, c2, c3):
            p = _substitute_yz(c, y0, z0, tower)
            if not p.is_zero():
                uni.append(p)
        if not uni:
            raise _RetryShear("projection annihilates all coordinates")
        gx = uni[0]
        for p in uni[1:]:
            gx = gcd(gx, p)
        if gx.is_const():
            continue
        for x0 in _univariate_roots(gx, tower):
            pts.append(normalize_point(mat_vec(m, (x0, y0, z0))))
    # dedupe
    out = []
    for p in pts:
        if p not in out:
            out.append(p)
    return out


def _substitute_yz(c: MPoly, y0, z0, tower: TowerField):
    """c(x, y0, z0) as a univariate polynomial in x."""
    one = tower.one()
    vals = [
        MPoly.variable(1, 0, one),
        MPoly.const(1, y0),
        MPoly.const(1, z0),
    ]
    return c.subst(vals)


def _binary_form_roots(b: MPoly, tower: TowerField):
    """Projective roots (y0, z0) of a squarefree binary form in (y, z),
    stored as a 3-variable polynomial with x-degree 0."""
    roots = []
    me = b.min_exps()
    if any(me):
        b = b.shift_down(me)
        if me[1] > 0:
            roots.append((tower.zero(), tower.one()))
        if me[2] > 0:
            roots.append((tower.one(), tower.zero()))
    if b.is_const():
        return roots
    one = tower.one()
    uni = b.subst(
        [MPoly.zero(1), MPoly.variable(1, 0, one), MPoly.const(1, one)]
    )
    for r in _univariate_roots(uni, tower):
        roots.append(normalize_point((r, one)))
    return roots


def _univariate_roots(p: MPoly, tower: TowerField):
    """Roots in the tower of a univariate polynomial over it (fragment)."""
    original = p
    roots = []
    me = p.min_exps()
    if me[0] > 0:
        roots.append(tower.zero())
        p = p.shift_down(me)
    if p.total_degree() > 0:
        p = p.monic()
        for fac in _factor_over_base(p, tower):
            roots.extend(_roots_of_irreducible(fac, tower))
    out = []
    zero = tower.zero()
    for r in roots:
        if original.eval_zero_ok([r], zero).is_zero() and r not in out:
            out.append(r)
    return out


def _factor_over_base(p: MPoly, tower: TowerField):
    """Factor a univariate polynomial into K-irreducible pieces when all its
    coefficients lie in the base field; otherwise return [p]."""
    coeffs = list(p.terms.values())
    if not all(c.in_base() for c in coeffs):
        return [p]
    try:
        from .sympy_bridge import factor_univariate_over_k
    except ImportError:  # pragma: no cover
        return [p]
    return factor_univariate_over_k(p, tower)


def _roots_of_irreducible(p: MPoly, tower: TowerField):
    d = p.total_degree()
    if d == 0:
        return []
    p = p.monic()
    cs = {e[0]: c for e, c in p.terms.items()}
    zero = tower.zero()
    if d == 1:
        return [-cs.get(0, zero)]
    if d == 2:
        b = cs.get(1, zero)
        c = cs.get(0, zero)
        disc = b * b - tower.scalar(4) * c
        s = sqrt_in_tower(disc)
        if s is None:
            return []
        half = tower.scalar(1) / tower.scalar(2)
        return [(-b + s) * half, (-b - s) * half]
    if d == 3:
        a2 = cs.get(2, zero)
        a1 = cs.get(1, zero)
        a0 = cs.get(0, zero)
        if a2.is_zero() and a1.is_zero():
            u = cbrt_in_tower(-a0)
            if u is None:
                return []
            z = tower.zeta()
            return [u, u * z, u * z * z]
        # depressed cubic y^3 + p y + q, x = y - a2/3
        third = tower.scalar(1) / tower.scalar(3)
        shift = a2 * third
        pp = a1 - a2 * a2 * third
        qq = a0 - a1 * a2 * third + (tower.scalar(2) / tower.scalar(27)) * a2 ** 3
        half = tower.scalar(1) / tower.scalar(2)
        disc = (qq * half) ** 2 + (pp * third) ** 3
        sd = sqrt_in_tower(disc)
        if sd is None:
            return []
        u3 = -qq * half + sd
        if u3.is_zero():
            u3 = -qq * half - sd
        u = cbrt_in_tower(u3)
        if u is None or u.is_zero():
            return []
        z = tower.zeta()
        out = []
        for k in range(3):
            uk = u * z ** k
            yk = uk - pp * third / uk
            out.append(yk - shift)
        return out
    return []


# ---------------------------------------------------------------------------
# links


def _conic_map_at(tower: TowerField, components) -> RationalMap:
    """The bare quadratic map sigma o phi for phi sending the components to
    the coordinate points (no equivariance normalisation)."""
    m = mat([[components[0][i], components[1][i], components[2][i]] for i in range(3)])
    if det3(m).is_zero():
        raise Collinear("components are collinear")
    phi = inverse3(m)
    rows = []
    one = tower.one()
    for i in range(3):
        p = MPoly.zero(3)
        for j in range(3):
            if not phi[i][j].is_zero():
                p = p + MPoly.variable(3, j, phi[i][j])
        rows.append(p)
    return RationalMap(tower, (rows[1] * rows[2], rows[0] * rows[2], rows[0] * rows[1]))


def _absorb_linear(b0: RationalMap, forward: RationalMap) -> RationalMap:
    """Turn an arbitrary contraction b0 at the inverse base point into the
    exact inverse: compose(b0, forward) is linear, and the linear factor is
    divided out."""
    m = compose(b0, forward)
    if m.degree != 1:
        raise SblinksError(
            f"candidate backward map composes to degree {m.degree}, not 1"
        )
    eta = m.matrix()
    return apply_matrix(inverse3(eta), b0)


def _line_images(forward: RationalMap, components):
    """Images of the lines through pairs of the three components, ordered so
    that line_i misses component_i."""
    out = []
    for i in range(3):
        j, k = [a for a in range(3) if a != i]
        out.append(image_of_line(forward, components[j], components[k]))
    return out


def link_from_3point(surface: SBSurface, point: ClosedPoint) -> Link:
    """The Sarkisov 3-link blowing up the degree-3 point and blowing down the
    lines through pairs of its components."""
    if point.degree != 3:
        raise SblinksError("link_from_3point needs a degree-3 point")
    tower = point.tower
    g_name = surface.ext.radical_name
    pure_g = point.cycle_element == {g_name: 1}

    if pure_g:
        phi, xi_p, _ = normalize_3point(surface, point)
        if not xi_p.in_base():
            raise EquivariantBasisNotFound(
                "normalized twist parameter leaves the base field"
            )
        fwd_map = _sigma_after_matrix(tower, phi)
        xi_target = surface.tower.from_rf(xi_p.base_rf()).inverse()
    else:
        basis, _ = curves_through(tower, point.components, 2)
        if len(basis) != 3:
            raise SpecialPosition(
                f"conic system through the point has dimension {len(basis)}, not 3"
            )
        xi_target = surface.xi.inverse()
        target_try = SBSurface(surface.ext, xi_target, -surface.side)
        triple = equivariant_triple(surface, target_try, basis, tower)
        fwd_map = RationalMap(tower, triple)

    target = SBSurface(surface.ext, xi_target, -surface.side)
    if not is_equivariant(fwd_map, surface, target):
        raise EquivariantBasisNotFound("forward map failed the equivariance check")

    q_comps = _line_images(fwd_map, point.components)
    q = make_closed_point(target, q_comps, tower)
    if q.descriptor != point.descriptor:
        raise SblinksError(
            "inverse base point has a different splitting field than the base point"
        )

    b0 = _conic_map_at(tower, q.components)
    bwd_map = _absorb_linear(b0, fwd_map)

    forward = TwistedMap(fwd_map, surface, target)
    backward = TwistedMap(bwd_map, target, surface)
    return Link(forward, backward, point, q, 3)


def _sigma_after_matrix(tower: TowerField, phi) -> RationalMap:
    rows = []
    for i in range(3):
        p = MPoly.zero(3)
        for j in range(3):
            if not phi[i][j].is_zero():
                p = p + MPoly.variable(3, j, phi[i][j])
        rows.append(p)
    return RationalMap(tower, (rows[1] * rows[2], rows[0] * rows[2], rows[0] * rows[1]))


def _no_three_collinear(components) -> bool:
    from itertools import combinations

    for a, b, c in combinations(components, 3):
        m = mat([[a[i], b[i], c[i]] for i in range(3)])
        if det3(m).is_zero():
            return False
    return True


def conic_through_five(tower: TowerField, pts) -> MPoly:
    basis, _ = curves_through(tower, pts, 2)
    if len(basis) != 1:
        raise SpecialPosition(
            f"five points give a {len(basis)}-dimensional conic system"
        )
    return basis[0]


def link_from_6point(surface: SBSurface, point: ClosedPoint) -> Link:
    """The Sarkisov 6-link: quintics with double points at the six components."""
    if point.degree != 6:
        raise SblinksError("link_from_6point needs a degree-6 point")
    tower = point.tower
    comps = point.components
    if not _no_three_collinear(comps):
        raise SpecialPosition("three of the six components are collinear")
    full_conics, _ = curves_through(tower, comps, 2)
    if full_conics:
        raise SpecialPosition("the six components lie on a conic")

    basis, rows = curves_through(tower, comps, 5, double=True)
    if rank(rows) != 18 or len(basis) != 3:
        raise SpecialPosition(
            f"quintic double-point system has rank {rank(rows)} and "
            f"dimension {len(basis)}; expected 18 and 3"
        )

    target = SBSurface(surface.ext, surface.xi.inverse(), -surface.side)
    triple = equivariant_triple(surface, target, basis, tower)
    fwd_map = RationalMap(tower, triple)
    if fwd_map.degree != 5:
        raise SblinksError("equivariant quintic system lost degree 5")
    if not is_equivariant(fwd_map, surface, target):
        raise EquivariantBasisNotFound("forward map failed the equivariance check")

    q_comps = []
    for i in range(6):
        others = [comps[j] for j in range(6) if j != i]
        conic = conic_through_five(tower, others)
        q_comps.append(image_of_conic(fwd_map, conic, others[0], tower))
    q = make_closed_point(target, q_comps, tower)
    if q.descriptor != point.descriptor:
        raise SblinksError(
            "inverse base point has a different splitting field than the base point"
        )

    b_basis, b_rows = curves_through(tower, q.components, 5, double=True)
    if rank(b_rows) != 18 or len(b_basis) != 3:
        raise SpecialPosition("inverse quintic system is degenerate")
    b0 = RationalMap(tower, tuple(b_basis))
    bwd_map = _absorb_linear(b0, fwd_map)

    forward = TwistedMap(fwd_map, surface, target)
    backward = TwistedMap(bwd_map, target, surface)
    return Link(forward, backward, point, q, 6)


def transport_point(m: RationalMap, point: ClosedPoint, target: SBSurface) -> ClosedPoint:
    """Image of a closed point under a map (components evaluated one by one)."""
    if m.tower != point.tower:
        m = m.lift_to(point.tower)
    comps = [m.evaluate(v) for v in point.components]
    return make_closed_point(target, comps, point.tower)
