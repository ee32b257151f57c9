"""Explicit cubic-surface birational models of the twisted planes.

Two models are built over a radical tower: the singular cubic
xi w^3 = lam x^3 + y^3 + lam^-1 z^3 - 3xyz, whose three singular points are
resolved by the projection map psi, and the smooth cubic
xi w^3 = lam x^3 + mu y^3 + z^3 + nu xyz with xi = 27 lam mu + nu^3, carrying
six named disjoint lines, a contraction to the twisted plane, and an
order-3 automorphism that descends to a composition of two 3-links.

All identities are verified exactly, reducing modulo the cubic relation
where a statement only holds on the surface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .birational import (
    RationalMap,
    TwistedMap,
    Link,
    apply_matrix,
    compose,
    equals,
    is_equivariant,
    link_from_3point,
    transport_point,
)
from .errors import (
    DegenerateTower,
    IdentityFails,
    LambdaIsCube,
    SblinksError,
    SectionNotFound,
    XiZero,
)
from .field_tower import (
    CubicExtension,
    FieldElement,
    GaloisAction,
    TowerField,
    is_cube,
    is_norm,
)
from .linalg import mat_vec, nullspace, rank
from .multipoly import MPoly, exact_div, gcd_many, mod_reduce
from .severi_brauer import (
    SBSurface,
    coordinate_3point,
    make_closed_point,
    normalize_point,
)

# variable order in the ambient P^3: (w, x, y, z)
W, X, Y, Z = range(4)


def _var4(tower, i):
    return MPoly.variable(4, i, tower.one())


def _lin4(tower, coeffs):
    """Linear form sum coeffs[i] * var_i in P^3."""
    p = MPoly.zero(4)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            p = p + MPoly.variable(4, i, c)
    return p


def _poly_str4(p: MPoly) -> str:
    names = ["w", "x", "y", "z"]
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


def reduce_mod_cubic(p: MPoly, cubic: MPoly) -> MPoly:
    """Normal form modulo the single cubic relation, eliminating w^3."""
    lead = (3, 0, 0, 0)
    if lead not in cubic.terms:
        raise SblinksError("cubic relation must contain w^3")
    return mod_reduce(p, cubic, lead)


def _maps_equal_mod(m1_coords, m2_coords, cubic) -> bool:
    for i in range(3):
        for j in range(i + 1, 3):
            r = m1_coords[i] * m2_coords[j] - m1_coords[j] * m2_coords[i]
            if not reduce_mod_cubic(r, cubic).is_zero():
                return False
    return True


def _residue_mod(m1_coords, m2_coords, cubic):
    for i in range(3):
        for j in range(i + 1, 3):
            r = m1_coords[i] * m2_coords[j] - m1_coords[j] * m2_coords[i]
            rr = reduce_mod_cubic(r, cubic)
            if not rr.is_zero():
                return rr
    return None


# ---------------------------------------------------------------------------
# the singular model


@dataclass
class SingularCubicModel:
    ext: CubicExtension
    lam: FieldElement
    xi: FieldElement
    equation: MPoly  # 4-variable cubic over L
    factors: tuple  # (F0, F1, F2), 3-variable forms over L
    singular_points: tuple  # three P^3 points over L
    psi: tuple  # three 4-variable quadrics: [w^2 : w F0 : F0 F1]

    @property
    def tower(self) -> TowerField:
        return self.ext.tower

    def is_fibration_specialization(self) -> bool:
        """Whether (lam, xi) = (t1, t2), the fibred form of the model."""
        base = TowerField.rational(self.tower.nvars)
        if self.tower.nvars < 2:
            return False
        return (
            self.lam == base.t_var(0).lift_to(self.tower)
            and self.xi == base.t_var(1).lift_to(self.tower)
        )

    def equation_string(self) -> str:
        lam = self.lam.base_rf()
        xi = self.xi.base_rf()
        return (
            f"({xi!r})*w^3 = ({lam!r})*x^3 + y^3 + ({lam.inverse()!r})*z^3 - 3*x*y*z"
        )


def build_singular_model(lam: FieldElement, xi: FieldElement) -> SingularCubicModel:
    """Construct the singular cubic model together with its line factors,
    singular points and the projection psi to the plane."""
    res = is_cube(lam)
    if res.status == "yes":
        raise LambdaIsCube("lambda must not be a cube in K")
    if xi.is_zero():
        raise XiZero("xi must be nonzero")
    base = lam.tower
    L = base.extend(_fresh(base, "u"), 3, lam)
    ext = CubicExtension(L, L.radicals[-1].name)
    lamL = lam.lift_to(L)
    xiL = xi.lift_to(L)
    u = ext.root()
    zeta = L.zeta()
    one = L.one()

    lam_i = [zeta ** i * u for i in range(3)]
    x3, y3, z3 = (MPoly.variable(3, i, one) for i in range(3))
    factors = tuple(
        x3.scale(lam_i[i]) + y3 + z3.scale(lam_i[i].inverse()) for i in range(3)
    )
    prod = factors[0] * factors[1] * factors[2]
    expected = (
        MPoly.monomial(3, (3, 0, 0), lamL)
        + MPoly.monomial(3, (0, 3, 0), one)
        + MPoly.monomial(3, (0, 0, 3), lamL.inverse())
        + MPoly.monomial(3, (1, 1, 1), L.scalar(-3))
    )
    if prod != expected:
        raise IdentityFails(
            "F0 F1 F2 does not expand to lam x^3 + y^3 + lam^-1 z^3 - 3xyz",
            residue=prod - expected,
        )

    equation = (
        MPoly.monomial(4, (3, 0, 0, 0), xiL)
        - MPoly.monomial(4, (0, 3, 0, 0), lamL)
        - MPoly.monomial(4, (0, 0, 3, 0), one)
        - MPoly.monomial(4, (0, 0, 0, 3), lamL.inverse())
        + MPoly.monomial(4, (0, 1, 1, 1), L.scalar(3))
    )

    zero = L.zero()
    sing = tuple(
        normalize_point((zero, one, lam_i[k], lam_i[k] ** 2)) for k in range(3)
    )
    for pt in sing:
        vals = [equation.eval_zero_ok(list(pt), zero)]
        for v in range(4):
            vals.append(equation.derivative(v).eval_zero_ok(list(pt), zero))
        if not all(x.is_zero() for x in vals):
            raise IdentityFails("singular point check failed", residue=vals)

    f0_4 = _to4(factors[0])
    f1_4 = _to4(factors[1])
    w = _var4(L, W)
    psi = (w * w, w * f0_4, f0_4 * f1_4)
    return SingularCubicModel(ext, lamL, xiL, equation, factors, sing, psi)


def _to4(p3: MPoly) -> MPoly:
    """Embed a form in (x, y, z) as a form in (w, x, y, z)."""
    terms = {}
    for e, c in p3.terms.items():
        terms[(0,) + e] = c
    return MPoly(4, terms)


def _fresh(tower: TowerField, prefix: str) -> str:
    names = {r.name for r in tower.radicals}
    k = 1
    while f"{prefix}{k}" in names:
        k += 1
    return f"{prefix}{k}"


def verify_singular_model(model: SingularCubicModel) -> dict:
    """Exact verification of the model's identities; raises IdentityFails on
    the first failure and returns a per-check report otherwise."""
    L = model.tower
    ext = model.ext
    g = ext.generator
    one, zero = L.one(), L.zero()
    report = {}

    prod = model.factors[0] * model.factors[1] * model.factors[2]
    lamL = model.lam
    expected = (
        MPoly.monomial(3, (3, 0, 0), lamL)
        + MPoly.monomial(3, (0, 3, 0), one)
        + MPoly.monomial(3, (0, 0, 3), lamL.inverse())
        + MPoly.monomial(3, (1, 1, 1), L.scalar(-3))
    )
    if prod != expected:
        raise IdentityFails("factorization fails", residue=prod - expected)
    report["factorization"] = True

    for pt in model.singular_points:
        checks = [model.equation.eval_zero_ok(list(pt), zero)]
        for v in range(4):
            checks.append(model.equation.derivative(v).eval_zero_ok(list(pt), zero))
        if not all(x.is_zero() for x in checks):
            raise IdentityFails("singular point fails", residue=pt)
    report["singular_points"] = True

    # equivariance: psi = mu . nu_{xi^-1} . g(psi) modulo the cubic
    nu_inv_xi = _nu_matrix(L, model.xi.inverse())
    gpsi = tuple(p.map_coeffs(g.apply) for p in model.psi)
    rhs = _matrix_times_triple(nu_inv_xi, gpsi)
    residue = _residue_mod(model.psi, rhs, model.equation)
    if residue is not None:
        raise IdentityFails(
            "psi is not equivariant towards S_{xi^-1}", residue=residue
        )
    report["psi_equivariant_to_op"] = True

    # the composite sigma o psi is equivariant towards S_xi
    sig_psi = (
        model.psi[1] * model.psi[2],
        model.psi[0] * model.psi[2],
        model.psi[0] * model.psi[1],
    )
    nu_xi = _nu_matrix(L, model.xi)
    g_sig_psi = tuple(p.map_coeffs(g.apply) for p in sig_psi)
    rhs2 = _matrix_times_triple(nu_xi, g_sig_psi)
    residue = _residue_mod(sig_psi, rhs2, model.equation)
    if residue is not None:
        raise IdentityFails(
            "sigma o psi is not equivariant towards S_xi", residue=residue
        )
    report["sigma_psi_equivariant"] = True
    report["fibration_specialization"] = model.is_fibration_specialization()
    return report


def _nu_matrix(tower: TowerField, xi: FieldElement):
    zero, one = tower.zero(), tower.one()
    return (
        (zero, zero, xi),
        (one, zero, zero),
        (zero, one, zero),
    )


def _matrix_times_triple(m, triple):
    out = []
    for row in m:
        p = MPoly.zero(triple[0].nvars)
        for c, q in zip(row, triple):
            if not c.is_zero():
                p = p + q.scale(c)
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# the smooth model


@dataclass
class SmoothCubicModel:
    ext: CubicExtension  # distinguished lambda-radical inside L-hat
    mu_radical: str
    lam: FieldElement
    mu: FieldElement
    nu: FieldElement
    xi: FieldElement
    cubic: MPoly
    A: tuple
    B: tuple
    C: tuple
    D: tuple
    lines: tuple  # E_0..E_5 as pairs of linear forms
    lines_prime: tuple  # E'_0..E'_5
    l01: tuple
    conic0: tuple
    conic1: tuple
    contraction: tuple  # (f0, f1, f2) quadrics

    @property
    def tower(self) -> TowerField:
        return self.ext.tower

    def g_action(self) -> GaloisAction:
        return self.ext.generator

    def h_action(self) -> GaloisAction:
        return self.tower.galois_generator(self.mu_radical)

    def surface(self) -> SBSurface:
        return SBSurface(self.ext, self.xi)


def build_smooth_model(
    lam: FieldElement, mu: FieldElement, nu: FieldElement
) -> SmoothCubicModel:
    """The smooth cubic xi w^3 = lam x^3 + mu y^3 + z^3 + nu xyz over
    K[cbrt(lam), cbrt(mu)], with its six lines and plane contraction."""
    base = lam.tower
    for c in (mu, nu):
        if c.tower != base:
            raise SblinksError("lam, mu, nu must live over one base field")
    xi = lam * mu * base.scalar(27) + nu ** 3
    if xi.is_zero():
        raise XiZero("xi = 27 lam mu + nu^3 vanishes")
    # degree-9 Kummer check: lam, mu, lam*mu, lam*mu^2 all non-cubes
    for cand, label in (
        (lam, "lam"),
        (mu, "mu"),
        (lam * mu, "lam*mu"),
        (lam * mu ** 2, "lam*mu^2"),
    ):
        res = is_cube(cand)
        if res.status != "no":
            raise DegenerateTower(
                f"{label} must be certified a non-cube for a degree-9 tower "
                f"(got {res.status})"
            )

    L1 = base.extend(_fresh(base, "u"), 3, lam)
    lam_name = L1.radicals[-1].name
    Lh = L1.extend(_fresh(L1, "m"), 3, mu.lift_to(L1))
    mu_name = Lh.radicals[-1].name
    ext = CubicExtension(Lh, lam_name)

    lamh = lam.lift_to(Lh)
    muh = mu.lift_to(Lh)
    nuh = nu.lift_to(Lh)
    xih = xi.lift_to(Lh)
    zeta = Lh.zeta()
    one, zero = Lh.one(), Lh.zero()
    third = Lh.scalar(3).inverse()
    ul = Lh.gen(lam_name)
    um = Lh.gen(mu_name)
    lam_i = [zeta ** i * ul for i in range(3)]
    mu_i = [zeta ** i * um for i in range(3)]

    A = tuple(
        _lin4(Lh, [one, zero, -(third * lam_i[i].inverse()), zero]) for i in range(3)
    )
    B = tuple(
        _lin4(Lh, [zero, lam_i[i], -(nuh * third * lam_i[i].inverse()), one])
        for i in range(3)
    )
    C = tuple(
        _lin4(Lh, [one, -(third * mu_i[i].inverse()), zero, zero]) for i in range(3)
    )
    D = tuple(
        _lin4(Lh, [zero, -(nuh * third * mu_i[i].inverse()), mu_i[i], one])
        for i in range(3)
    )

    cubic = (
        MPoly.monomial(4, (3, 0, 0, 0), xih)
        - MPoly.monomial(4, (0, 3, 0, 0), lamh)
        - MPoly.monomial(4, (0, 0, 3, 0), muh)
        - MPoly.monomial(4, (0, 0, 0, 3), one)
        - MPoly.monomial(4, (0, 1, 1, 1), nuh)
    )

    lines = tuple(
        [(A[i], B[i]) for i in range(3)]
        + [(C[(i - 1) % 3], D[i % 3]) for i in range(3, 6)]
    )
    lines_prime = tuple(
        [(A[(i + 1) % 3], B[i]) for i in range(3)]
        + [(C[i % 3], D[i % 3]) for i in range(3, 6)]
    )
    l01 = (A[1], B[0])
    conic0 = (A[1], B[2])
    conic1 = (A[2], B[0])
    contraction = (
        (A[1] * A[2]).scale(xih),
        B[0] * B[2],
        A[1] * B[0],
    )
    return SmoothCubicModel(
        ext,
        mu_name,
        lamh,
        muh,
        nuh,
        xih,
        cubic,
        A,
        B,
        C,
        D,
        lines,
        lines_prime,
        l01,
        conic0,
        conic1,
        contraction,
    )


def _line_matrix(tower, forms):
    """Coefficient rows of several linear forms in (w, x, y, z)."""
    zero = tower.zero()
    rows = []
    for f in forms:
        row = [zero] * 4
        for e, c in f.terms.items():
            row[e.index(1)] = c
        rows.append(tuple(row))
    return rows


def _line_on_cubic(tower, pair, cubic) -> bool:
    """Whether the line {f1 = f2 = 0} lies on the cubic surface."""
    basis = nullspace(_line_matrix(tower, pair), tower)
    if len(basis) != 2:
        return False
    a, b = basis
    one = tower.one()
    s = MPoly.variable(2, 0, one)
    r = MPoly.variable(2, 1, one)
    param = [s.scale(x) + r.scale(y) for x, y in zip(a, b)]
    return cubic.subst(param).is_zero()


def _lines_meet(tower, pair1, pair2):
    """0 or 1: intersection count of two distinct lines in P^3."""
    rows = _line_matrix(tower, list(pair1) + list(pair2))
    rk = rank(rows)
    if rk <= 2:
        raise SblinksError("the two lines coincide")
    return 1 if rk == 3 else 0


def verify_smooth_model(model: SmoothCubicModel) -> dict:
    """All identities of the smooth model: the fundamental cubic identity,
    the six disjoint lines, the incidence table, Galois orbit structure and
    the equivariance of the contraction."""
    Lh = model.tower
    report = {}
    one = Lh.one()

    # xi A0A1A2 - B0B1B2 = xi w^3 - lam x^3 - mu y^3 - z^3 - nu xyz, exactly
    aaa = model.A[0] * model.A[1] * model.A[2]
    bbb = model.B[0] * model.B[1] * model.B[2]
    lhs = aaa.scale(model.xi) - bbb
    if lhs != model.cubic:
        raise IdentityFails(
            "fundamental identity xi A0A1A2 - B0B1B2 fails",
            residue=lhs - model.cubic,
        )
    report["fundamental_identity"] = True

    # A0A1A2 = w^3 - y^3 / (27 lam)
    expect = MPoly.monomial(4, (3, 0, 0, 0), one) - MPoly.monomial(
        4, (0, 0, 3, 0), (model.lam * Lh.scalar(27)).inverse()
    )
    if aaa != expect:
        raise IdentityFails("A0A1A2 expansion fails", residue=aaa - expect)
    report["aaa_identity"] = True

    for i, pair in enumerate(model.lines):
        if not _line_on_cubic(Lh, pair, model.cubic):
            raise IdentityFails(f"line E_{i} does not lie on the cubic")
    report["lines_on_cubic"] = True

    for i in range(6):
        for j in range(i + 1, 6):
            if _lines_meet(Lh, model.lines[i], model.lines[j]) != 0:
                raise IdentityFails(f"lines E_{i} and E_{j} are not disjoint")
    report["lines_disjoint"] = True

    expected_table = [
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 1, 1, 1],
        [1, 0, 1, 1, 1, 1],
    ]
    got = []
    for aux in (model.l01, model.conic0, model.conic1):
        row = [_lines_meet(Lh, aux, e) for e in model.lines]
        got.append(row)
    if got != expected_table:
        raise IdentityFails(f"incidence table mismatch: {got}")
    report["incidence_table"] = got

    # Galois orbits: g cycles A_i, B_i; h cycles C_i, D_i; each fixes the other set
    g = model.g_action()
    h = model.h_action()
    for i in range(3):
        if model.A[i].map_coeffs(g.apply) != model.A[(i + 1) % 3]:
            raise IdentityFails(f"g does not send A_{i} to A_{i+1}")
        if model.B[i].map_coeffs(g.apply) != model.B[(i + 1) % 3]:
            raise IdentityFails(f"g does not send B_{i} to B_{i+1}")
        if model.C[i].map_coeffs(h.apply) != model.C[(i + 1) % 3]:
            raise IdentityFails(f"h does not send C_{i} to C_{i+1}")
        if model.D[i].map_coeffs(h.apply) != model.D[(i + 1) % 3]:
            raise IdentityFails(f"h does not send D_{i} to D_{i+1}")
        if model.C[i].map_coeffs(g.apply) != model.C[i]:
            raise IdentityFails(f"g moves C_{i}")
        if model.A[i].map_coeffs(h.apply) != model.A[i]:
            raise IdentityFails(f"h moves A_{i}")
    report["galois_orbits"] = True

    # contraction equivariance modulo the cubic: f = mu . nu_xi . g(f)
    nu_xi = _nu_matrix(Lh, model.xi)
    gf = tuple(p.map_coeffs(g.apply) for p in model.contraction)
    rhs = _matrix_times_triple(nu_xi, gf)
    residue = _residue_mod(model.contraction, rhs, model.cubic)
    if residue is not None:
        raise IdentityFails("contraction is not g-equivariant", residue=residue)
    hf = tuple(p.map_coeffs(h.apply) for p in model.contraction)
    if hf != model.contraction:
        raise IdentityFails("contraction is not h-invariant")
    report["contraction_equivariant"] = True

    small = model.tower.prefix(1)
    report["xi_norm_status"] = is_norm(
        CubicExtension(small, model.tower.radicals[0].name),
        small.from_rf(model.xi.base_rf()),
    ).status
    return report


# ---------------------------------------------------------------------------
# the order-3 self-map and its two-link factorization


def section_of_contraction(model: SmoothCubicModel):
    """A rational section of the contraction: the residual intersection of
    the fibre line of the quadric system with the cubic, after removing the
    two intersections with the auxiliary lines."""
    Lh = model.tower
    one = Lh.one()
    # variables: (s, r, u0, u1, u2)
    NV = 5

    def lift_lin(f4):
        # linear form in (w,x,y,z) -> coefficient vector
        zero = Lh.zero()
        row = [zero] * 4
        for e, c in f4.terms.items():
            row[e.index(1)] = c
        return row

    a1 = lift_lin(model.A[1])
    a2 = lift_lin(model.A[2])
    b0 = lift_lin(model.B[0])
    b2 = lift_lin(model.B[2])

    def u_mono(i):
        e = [0] * NV
        e[2 + i] = 1
        return e

    # R1 = xi A2 u2 - B0 u0, R2 = B2 u2 - A1 u1: rows over L[u]
    row1 = [
        MPoly.monomial(NV, tuple(u_mono(2)), model.xi * a2[k])
        - MPoly.monomial(NV, tuple(u_mono(0)), b0[k])
        for k in range(4)
    ]
    row2 = [
        MPoly.monomial(NV, tuple(u_mono(2)), b2[k])
        - MPoly.monomial(NV, tuple(u_mono(1)), a1[k])
        for k in range(4)
    ]

    def det2(c1, c2):
        return row1[c1] * row2[c2] - row1[c2] * row2[c1]

    # Cramer nullspace vectors of the 2x4 system, omitting one column each
    def null_vector(omit):
        cols = [c for c in range(4) if c != omit]
        v = [MPoly.zero(NV)] * 4
        v[cols[0]] = det2(cols[1], cols[2])
        v[cols[1]] = -det2(cols[0], cols[2])
        v[cols[2]] = det2(cols[0], cols[1])
        return v

    P = None
    Q = None
    for omit_p in range(4):
        cand = null_vector(omit_p)
        if any(not c.is_zero() for c in cand):
            cand = _strip_vector_content(cand)
            if P is None:
                P = cand
                continue
            # independence: some 2x2 minor of (P | cand) in two coordinates
            indep = False
            for i in range(4):
                for j in range(i + 1, 4):
                    if not (P[i] * cand[j] - P[j] * cand[i]).is_zero():
                        indep = True
                        break
                if indep:
                    break
            if indep:
                Q = cand
                break
    if P is None or Q is None:
        raise SectionNotFound("fibre line of the contraction is degenerate")

    s = MPoly.variable(NV, 0, one)
    r = MPoly.variable(NV, 1, one)
    line = [s * p + r * q for p, q in zip(P, Q)]

    cubic5 = model.cubic.subst(line)

    def linear_root_form(lin4):
        c = lift_lin(lin4)
        val_p = MPoly.zero(NV)
        val_q = MPoly.zero(NV)
        for k in range(4):
            if not c[k].is_zero():
                val_p = val_p + P[k].scale(c[k])
                val_q = val_q + Q[k].scale(c[k])
        return s * val_p + r * val_q

    # the fibre line meets the two auxiliary conic-lines where A1 resp. A2 vanish
    l1 = _strip_sr_content(linear_root_form(model.A[1]))
    l2 = _strip_sr_content(linear_root_form(model.A[2]))
    try:
        rest = exact_div(cubic5, l1)
        rest = exact_div(rest, l2)
    except Exception as e:
        raise SectionNotFound(f"spurious roots do not divide the fibre cubic: {e}")
    # rest = a s + b r: the residual root (s : r) = (b : -a)
    a = MPoly.zero(NV)
    b = MPoly.zero(NV)
    for e, c in rest.terms.items():
        if e[0] == 1 and e[1] == 0:
            a = a + MPoly.monomial(NV, (0, 0) + e[2:], c)
        elif e[0] == 0 and e[1] == 1:
            b = b + MPoly.monomial(NV, (0, 0) + e[2:], c)
        else:
            raise SectionNotFound("residual factor is not linear in the fibre")
    section5 = [b * p - a * q for p, q in zip(P, Q)]

    # drop the (now unused) s, r slots: results live in u only
    def drop_sr(p5):
        terms = {}
        for e, c in p5.terms.items():
            if e[0] or e[1]:
                raise SectionNotFound("section still depends on the fibre parameter")
            terms[e[2:]] = c
        return MPoly(3, terms)

    section = [drop_sr(p) for p in section5]
    g = gcd_many([p for p in section if not p.is_zero()])
    if not g.is_const():
        section = [p if p.is_zero() else exact_div(p, g) for p in section]

    # sanity: the section lands on the cubic and splits the contraction
    if not model.cubic.subst(section).is_zero():
        raise SectionNotFound("section does not satisfy the cubic equation")
    u_vars = [MPoly.variable(3, i, one) for i in range(3)]
    fs = [f.subst(section) for f in model.contraction]
    for i in range(3):
        for j in range(i + 1, 3):
            if not (fs[i] * u_vars[j] - fs[j] * u_vars[i]).is_zero():
                raise SectionNotFound("section is not a right inverse")
    return tuple(section)


def order3_selfmap(model: SmoothCubicModel):
    """The order-3 self-map rho-hat of S_xi induced by [w:x:y:z] ->
    [zeta w:x:y:z], together with its factorization into two 3-links with
    splitting fields K[cbrt lam] and K[cbrt mu]."""
    Lh = model.tower
    surface = model.surface()
    section = section_of_contraction(model)
    zeta = Lh.zeta()
    rho_section = [section[0].scale(zeta)] + list(section[1:])
    rho_hat = RationalMap(Lh, tuple(f.subst(rho_section) for f in model.contraction))

    ident = RationalMap.identity(Lh)
    cube = compose(rho_hat, compose(rho_hat, rho_hat))
    if not equals(cube, ident):
        raise IdentityFails("rho-hat does not have order 3")
    if not is_equivariant(rho_hat, surface, surface):
        raise IdentityFails("rho-hat is not defined over K")

    # first link: at the images of E0,E1,E2, which are the coordinate points
    p = coordinate_3point(surface)
    chi1 = link_from_3point(surface, p)

    # second link: at the transported images of E3,E4,E5
    q_comps = [_image_of_contracted_line(model, model.lines[i]) for i in range(3, 6)]
    q0 = make_closed_point(surface, q_comps, Lh)
    q1 = transport_point(chi1.forward.map, q0, chi1.forward.target)
    chi2 = link_from_3point(chi1.forward.target, q1)

    # align chi2 so that rho-hat = chi2 o chi1 exactly (a trivial relation)
    m1 = compose(rho_hat, chi1.backward.map)
    m2 = compose(m1, chi2.backward.map)
    if m2.degree != 1:
        raise IdentityFails(
            f"rho-hat does not factor through the two links (degree {m2.degree})"
        )
    alpha = m2.matrix()
    new_fwd = apply_matrix(alpha, chi2.forward.map)
    from .birational import subst_linear
    from .linalg import inverse3

    new_bwd = subst_linear(chi2.backward.map, inverse3(alpha))
    new_q = make_closed_point(
        surface,
        [normalize_point(mat_vec(alpha, v)) for v in chi2.inverse_base_point.components],
        chi2.inverse_base_point.tower,
    )
    chi2 = Link(
        TwistedMap(new_fwd, chi2.forward.source, surface),
        TwistedMap(new_bwd, surface, chi2.backward.target),
        chi2.base_point,
        new_q,
        3,
    )
    if not equals(compose(chi2.forward.map, chi1.forward.map), rho_hat):
        raise IdentityFails("rho-hat != chi2 o chi1 after alignment")

    rho_twisted = TwistedMap(rho_hat, surface, surface)
    return rho_twisted, chi1, chi2


def _strip_sr_content(p: MPoly) -> MPoly:
    """Remove the u-content of a polynomial in (s, r, u0, u1, u2)."""
    buckets = {}
    for e, c in p.terms.items():
        key = e[:2]
        buckets.setdefault(key, {})[(0, 0) + e[2:]] = c
    polys = [MPoly(p.nvars, t) for t in buckets.values()]
    g = gcd_many(polys)
    if g.is_const():
        return p
    return exact_div(p, g)


def _strip_vector_content(vec):
    nonzero = [p for p in vec if not p.is_zero()]
    g = gcd_many(nonzero)
    if g.is_const():
        return vec
    return [p if p.is_zero() else exact_div(p, g) for p in vec]


def _image_of_contracted_line(model: SmoothCubicModel, pair):
    """Image point of a contracted line of the smooth model under the
    contraction (f0 : f1 : f2)."""
    Lh = model.tower
    basis = nullspace(_line_matrix(Lh, pair), Lh)
    if len(basis) != 2:
        raise SblinksError("line is degenerate")
    a, b = basis
    one = Lh.one()
    s = MPoly.variable(1, 0, one)
    param = [MPoly.const(1, x) + s.scale(y) for x, y in zip(a, b)]
    vals = [f.subst(param) for f in model.contraction]
    from .birational import _constant_direction

    return _constant_direction(vals, Lh)
