"""Deformed Lorentz data: the R3 catalog, reality and mixed Yang-Baxter
checks, the 2x2 block representation property, ansatz constraints and the
gauge similarity.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
import random

from .coeff import Coefficient, I, ONE, ZERO, const, param
from .matalg import Matrix, identity, leg_embed, perm, conj_transpose
from .ncalg import NCPoly
from .qgroup import (
    AlgebraPresentation, frt_gens, frt_relations, lam, r_q, r_h, qdet_via_projector, spectral,
)

__all__ = [
    "FAMILIES",
    "LorentzCase",
    "CaseError",
    "make_case",
    "catalog",
    "r3_matrix",
    "reality_check",
    "mixed_ybe_check",
    "block_rep_check",
    "evaluate_on_blocks",
    "ansatz_matrix",
    "ansatz_constraints",
    "gauge_similarity",
    "case_checks",
    "perturbation_sensitivity",
    "PERTURBATIONS",
    "perturb",
]

FAMILIES = ("A1", "A2", "A3", "A4", "A5", "B1", "B2")
_MODES = {
    "A1": ("q_real",), "A2": ("q_real", "q_imaginary"), "A3": ("q_real",),
    "A4": ("q_imaginary",), "A5": ("q_imaginary",), "B1": ("h_real",), "B2": ("h_real",),
}


class CaseError(ValueError):
    pass


@dataclass(frozen=True)
class LorentzCase:
    """One deformed Lorentz group: deformation, R3 family, bindings, sign.

    ``bindings`` maps the family parameters ``r``/``t`` (and optionally ``q``,
    ``h``) to coefficients; unbound parameters stay symbolic.
    """

    id: str
    family: str
    mode: str
    bindings: tuple = ()
    description: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CaseError(f"unknown family {self.family!r}")
        if self.mode not in _MODES[self.family]:
            raise CaseError(f"family {self.family} does not admit mode {self.mode}")

    @property
    def deformation(self) -> str:
        return "h" if self.family.startswith("B") else "q"

    @property
    def sign(self) -> int:
        return -1 if self.mode == "q_imaginary" else 1

    def binding(self, name: str) -> Coefficient | None:
        return dict(self.bindings).get(name)

    @property
    def q(self) -> Coefficient:
        """Value of the standard parameter: ``q`` or ``i*p``."""
        b = self.binding("q")
        if b is not None:
            return b
        return I * param("p") if self.mode == "q_imaginary" else param("q")

    @property
    def h(self) -> Coefficient:
        b = self.binding("h")
        return param("h") if b is None else b

    @property
    def value(self) -> Coefficient:
        return self.h if self.deformation == "h" else self.q

    @property
    def rho(self) -> Coefficient:
        return ONE if self.deformation == "h" else self.q

    def r1(self) -> Matrix:
        return r_h(self.h) if self.deformation == "h" else r_q(self.q)

    def r3(self) -> Matrix:
        return r3_matrix(self)

    def substitute(self, point: dict) -> "LorentzCase":
        """Specialise every parameter: free ones become bindings, bound ones
        are re-evaluated."""
        b = {k: v.substitute(point) for k, v in self.bindings}
        if self.deformation == "h":
            b.setdefault("h", param("h").substitute(point))
        else:
            b.setdefault("q", self.q.substitute(point))
        for name in ("r", "t"):
            if name not in b:
                b[name] = self._raw(name).substitute(point)
        return replace(self, bindings=tuple(sorted(b.items())))

    def _raw(self, name: str) -> Coefficient:
        v = self.binding(name)
        if v is not None:
            return v
        if name == "t" and self.mode == "q_imaginary":
            return I * param("u")
        return param(name)

    def assumptions(self) -> list[str]:
        if self.deformation == "q":
            out = ["q != 0", "q^2 != -1", "q^2 != 1 (q = +-1 classifications excluded)"]
            if self.mode == "q_imaginary":
                out.append("q = i*p with p > 1")
            else:
                out.append("q > 1")
            if self.family == "A2":
                out.append("t real" if self.mode == "q_real" else "t = i*u imaginary")
            return out
        return ["h real", "h != 0"]


def make_case(family: str, mode: str | None = None, case_id: str | None = None, **bindings) -> LorentzCase:
    mode = mode or _MODES[family][0]
    return LorentzCase(case_id or family, family, mode,
                       tuple(sorted((k, const(v)) for k, v in bindings.items())))


def catalog() -> dict[str, LorentzCase]:
    """The shipped cases, keyed by id, with the canonical bindings."""
    q = param("q")
    lm = lam(q)
    cases = [
        LorentzCase("A1", "A1", "q_real", (("r", lm),), "standard q-Lorentz, r = q - 1/q"),
        LorentzCase("A2", "A2", "q_real", (), "diagonal, q and t real"),
        LorentzCase("A2i", "A2", "q_imaginary", (), "diagonal, q = i*p and t = i*u"),
        LorentzCase("A3", "A3", "q_real", (("r", -lm),), "r = -(q - 1/q)"),
        LorentzCase("A4", "A4", "q_imaginary", (), "q = i*p, r real"),
        LorentzCase("A5", "A5", "q_imaginary", (), "q = i*p, r real"),
        LorentzCase("B1", "B1", "h_real", (), "h real, r real"),
        LorentzCase("B2", "B2", "h_real", (("r", ZERO),), "h real, r = 0"),
    ]
    return {c.id: c for c in cases}


def r3_matrix(case: LorentzCase) -> Matrix:
    f = case.family
    r = case._raw("r")
    if f == "A1":
        q = case.q
        return Matrix([[q, 0, 0, 0], [0, 1, 0, 0], [0, r, 1, 0], [0, 0, 0, q]])
    if f == "A2":
        t = case._raw("t")
        s = case.sign
        return Matrix([[1, 0, 0, 0], [0, t, 0, 0], [0, 0, t * s, 0], [0, 0, 0, s]])
    if f == "A3":
        qi = case.q.inverse()
        return Matrix([[qi, 0, 0, 0], [0, 1, r, 0], [0, 0, 1, 0], [0, 0, 0, qi]])
    if f == "A4":
        qi = case.q.inverse()
        return Matrix([[1, 0, 0, 0], [0, qi, 0, 0], [0, r, -qi, 0], [0, 0, 0, -1]])
    if f == "A5":
        q = case.q
        return Matrix([[1, 0, 0, 0], [0, q, r, 0], [0, 0, -q, 0], [0, 0, 0, -1]])
    if f == "B1":
        return Matrix([[1, 0, 0, 0], [0, 1, r, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    if f == "B2":
        h = case.h
        return Matrix([[1, 0, -h, 0], [-h, 1, r, h], [0, 0, 1, 0], [0, 0, h, 1]])
    raise CaseError(f"unknown family {f!r}")


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def reality_check(r3: Matrix, ctx=None) -> bool:
    """``R3^dagger = P R3 P``."""
    p = perm()
    return conj_transpose(r3, ctx) == p * r3 * p


def mixed_ybe_check(r1: Matrix, r3: Matrix) -> bool:
    """``R1_12 R3_13 R3_23 = R3_23 R3_13 R1_12``."""
    a = leg_embed(r1, "12") * leg_embed(r3, "13") * leg_embed(r3, "23")
    b = leg_embed(r3, "23") * leg_embed(r3, "13") * leg_embed(r1, "12")
    return a == b


def evaluate_on_blocks(poly: NCPoly, blocks: dict) -> Matrix:
    """Evaluate a polynomial in ``a, b, c, d`` on 2x2 matrices."""
    out = Matrix([[ZERO, ZERO], [ZERO, ZERO]])
    for w, c in poly.terms.items():
        term = identity(2)
        for i in w:
            term = term * blocks[poly.gens.names[i]]
        out = out + term * c
    return out


def _blocks(r3: Matrix) -> dict:
    return {"a": r3.block(0, 0), "b": r3.block(0, 1), "c": r3.block(1, 0), "d": r3.block(1, 1)}


@dataclass
class BlockReport:
    holds: bool
    relations_hold: bool
    det_scalar: bool
    det_value: Matrix
    failing: list = field(default_factory=list)


def block_rep_check(r3: Matrix, alg: AlgebraPresentation, det: NCPoly) -> BlockReport:
    """The 2x2 blocks of R3 satisfy the relations of ``alg``; det is scalar."""
    blocks = _blocks(r3)
    failing = []
    for rel in alg.rewrite.relations():
        if not evaluate_on_blocks(rel, blocks).is_zero():
            failing.append(str(rel))
    dv = evaluate_on_blocks(det, blocks)
    scalar = dv.is_scalar()
    return BlockReport(not failing and scalar, not failing, scalar, dv, failing)


# ---------------------------------------------------------------------------
# Perturbations of catalog matrices
# ---------------------------------------------------------------------------

# (entry, shift) pairs; each must break at least one of the three checks.
PERTURBATIONS = (((0, 0), Fraction(1, 3)), ((0, 1), I / 5), ((3, 3), Fraction(1, 7)),
                 ((1, 1), Fraction(2, 9)))


def perturb(r3: Matrix, entry, shift) -> Matrix:
    rows = [list(r) for r in r3.rows]
    i, j = entry
    rows[i][j] = rows[i][j] + const(shift)
    return Matrix(rows)


def case_checks(case: LorentzCase, r3: Matrix | None = None) -> dict:
    """Reality, mixed Yang-Baxter and block representation for one case."""
    r3 = case.r3() if r3 is None else r3
    r1 = case.r1()
    alg = frt_relations(r1, frt_gens(case.deformation))
    det = qdet_via_projector(r1, spectral(case.deformation, case.value).minus, alg)
    return {
        "reality": reality_check(r3),
        "mixed_ybe": mixed_ybe_check(r1, r3),
        "block_rep": block_rep_check(r3, alg, det).holds,
    }


def perturbation_sensitivity(case: LorentzCase) -> dict:
    """For each documented perturbation, the checks that it breaks."""
    out = {}
    for entry, shift in PERTURBATIONS:
        res = case_checks(case, perturb(case.r3(), entry, shift))
        out[f"R3[{entry[0]},{entry[1]}] += {const(shift)}"] = sorted(k for k, v in res.items() if not v)
    return out


def gauge_similarity(r3: Matrix, s: Coefficient) -> Matrix:
    """``(1 (x) S) R3 (1 (x) S)^-1`` with ``S = diag(s^(1/2), s^(-1/2))``.

    Entry ``(ij, kl)`` scales by ``s^((sigma_j - sigma_l)/2)``, so no square
    root is needed.
    """
    s = const(s)
    if not s:
        raise ValueError("gauge scale must be nonzero")
    si = s.inverse()
    rows = []
    for i in range(2):
        for j in range(2):
            row = []
            for k in range(2):
                for l in range(2):
                    x = r3[2 * i + j, 2 * k + l]
                    if j == 0 and l == 1:
                        x = x * s
                    elif j == 1 and l == 0:
                        x = x * si
                    row.append(x)
            rows.append(row)
    return Matrix(rows)


# ---------------------------------------------------------------------------
# Ansatz constraints
# ---------------------------------------------------------------------------

def _c(name_re: str, name_im: str | None = None) -> Coefficient:
    z = param(name_re)
    return z + I * param(name_im) if name_im else z


def ansatz_matrix() -> Matrix:
    """General R3 after imposing the reality condition (16 real unknowns)."""
    a11, b21, c12, d22 = (param(n) for n in ("a11", "b21", "c12", "d22"))
    a12, a21, a22 = _c("a12r", "a12i"), _c("a21r", "a21i"), _c("a22r", "a22i")
    b12, b22, c22 = _c("b12r", "b12i"), _c("b22r", "b22i"), _c("c22r", "c22i")
    cj = lambda z: z.conjugate()
    return Matrix([
        [a11, a12, cj(a21), b12],
        [a21, a22, b21, b22],
        [cj(a12), c12, cj(a22), cj(c22)],
        [cj(b12), c22, cj(b22), d22],
    ])


_ANSATZ_SLOTS = {
    (0, 0): ("a11", None), (0, 1): ("a12r", "a12i"), (1, 0): ("a21r", "a21i"),
    (1, 1): ("a22r", "a22i"), (0, 3): ("b12r", "b12i"), (1, 2): ("b21", None),
    (1, 3): ("b22r", "b22i"), (2, 1): ("c12", None), (3, 1): ("c22r", "c22i"),
    (3, 3): ("d22", None),
}
ANSATZ_VARIABLES = tuple(n for pair in _ANSATZ_SLOTS.values() for n in pair if n)


def ansatz_point(r3: Matrix) -> dict:
    """Values of the ansatz unknowns reproducing a (reality-satisfying) R3."""
    point = {}
    for (i, j), (nr, ni) in _ANSATZ_SLOTS.items():
        x = r3[i, j]
        point[nr] = x.real_part()
        if ni:
            point[ni] = x.imag_part()
    return point


@dataclass
class ConstraintReport:
    deformation: str
    constraints: list  # (label, Coefficient)
    implied: list  # dicts: name, entries, certificate, assumptions, verified
    catalog: dict = field(default_factory=dict)
    perturbations: dict = field(default_factory=dict)

    def nonzero(self, point: dict) -> list[str]:
        return [label for label, c in self.constraints if c.substitute(point)]


def _det_poly(alg: AlgebraPresentation, deformation: str) -> NCPoly:
    return qdet_via_projector(alg_r1(deformation), spectral(deformation).minus, alg)


def alg_r1(deformation: str) -> Matrix:
    return r_h() if deformation == "h" else r_q()


def _adj(m: Matrix) -> Matrix:
    return Matrix([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def _det2(m: Matrix) -> Coefficient:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _nilpotency_certificate(a: Matrix, x: Matrix, e: Matrix, q: Coefficient) -> bool:
    """Check ``det(A)(1-q)(1-q^2) X^2 = (1-q^2) tr(adj(A) E) X - (1-q) D(E) I``.

    ``E = AX - qXA`` is a matrix of emitted constraints and ``D(E) =
    det(AX) - det(AX - E)`` is written out so that every term carries an
    entry of ``E``; the identity therefore exhibits ``det(A)(1-q)(1-q^2) X^2``
    as an explicit combination of constraints.
    """
    ax = a * x
    d_e = (ax[0, 0] * e[1, 1] + e[0, 0] * ax[1, 1] - e[0, 0] * e[1, 1]
           - ax[0, 1] * e[1, 0] - e[0, 1] * ax[1, 0] + e[0, 1] * e[1, 0])
    tr_term = (_adj(a) * e).trace()
    one = ONE
    lhs = (x * x) * (_det2(a) * (one - q) * (one - q * q))
    rhs = x * ((one - q * q) * tr_term) - identity(2) * ((one - q) * d_e)
    return lhs == rhs and e == a * x - x * a * q


def ansatz_constraints(deformation: str, seed: int = 1995) -> ConstraintReport:
    """Constraint polynomials on the reality-reduced R3 ansatz.

    No solving: the report lists the raw constraints, implied constraints with
    machine-checked certificates, the verdict for every catalog family, and
    single-entry perturbations of each family.
    """
    gens = frt_gens(deformation)
    alg = frt_relations(alg_r1(deformation), gens)
    det = _det_poly(alg, deformation)
    r3 = ansatz_matrix()
    blocks = _blocks(r3)
    constraints = []
    for rel in alg.rewrite.relations():
        m = evaluate_on_blocks(rel, blocks)
        for (i, j), x in m.entries():
            constraints.append((f"[{rel}]_{i}{j}", x))
    dv = evaluate_on_blocks(det, blocks)
    if deformation == "q":
        constraints += [("det_offdiag_01", dv[0, 1]), ("det_offdiag_10", dv[1, 0]),
                        ("det_diag_difference", dv[0, 0] - dv[1, 1])]
    else:
        for (i, j), x in dv.entries():
            constraints.append((f"det_normalization_{i}{j}", x - (ONE if i == j else ZERO)))

    implied = []
    A, B, C, D = blocks["a"], blocks["b"], blocks["c"], blocks["d"]
    if deformation == "q":
        q = param("q")
        rel_ab = next(r for r in alg.rewrite.relations() if r.leading_word() == (1, 0))
        rel_ac = next(r for r in alg.rewrite.relations() if r.leading_word() == (2, 0))
        e_b = evaluate_on_blocks(rel_ab, blocks) * (-q)
        e_c = evaluate_on_blocks(rel_ac, blocks) * (-q)
        for name, x, e, src in (("B^2 = 0", B, e_b, rel_ab), ("C^2 = 0", C, e_c, rel_ac)):
            implied.append({
                "name": name,
                "entries": [str(v) for _, v in (x * x).entries()],
                "certificate": f"det(A)(1-q)(1-q^2) X^2 = (1-q^2) tr(adj(A) E) X - (1-q) D(E) I, "
                               f"E = -q * [{src}] on blocks",
                "assumptions": ["det(A) != 0", "q^2 != 1"],
                "verified": _nilpotency_certificate(A, x, e, q),
            })
        implied.append({
            "name": "AD ~ I2",
            "entries": [str(c) for label, c in constraints if label.startswith("det_")],
            "certificate": "q-determinant of the blocks is scalar (emitted directly)",
            "assumptions": [],
            "verified": True,
        })
    else:
        h = param("h")
        at_c0 = {n: ZERO for n in ("a12r", "a12i", "c12", "b12r", "b12i", "c22r", "c22i")}
        a0, b0, d0 = (m.substitute(at_c0) for m in (A, B, D))
        xi0 = dv.substitute(at_c0)
        rel_ab = next(r for r in alg.rewrite.relations()
                      if {alg.gens.names[i] for i in r.leading_word()} == {"a", "b"})
        rab0 = evaluate_on_blocks(rel_ab, blocks).substitute(at_c0)
        one = identity(2)
        target_ad = a0 * d0 - one
        target_ab = a0 * b0 - b0 * a0 - (one - a0 * a0) * h
        # [A,B] - h(I - A^2) = -(rel_ab) + h (xi - I) at C = 0, with rel_ab = BA - AB + h(AD - AA) + ...
        cert_ab = -rab0 + (xi0 - one) * h
        implied.append({
            "name": "AD = I2",
            "entries": [str(v) for _, v in target_ad.entries()],
            "certificate": "AD - I = (xi(blocks) - I) at C = 0",
            "assumptions": ["C = 0"],
            "verified": target_ad == xi0 - one,
        })
        implied.append({
            "name": "[A,B] = h(I2 - A^2)",
            "entries": [str(v) for _, v in target_ab.entries()],
            "certificate": f"[A,B] - h(I - A^2) = -[{rel_ab}](blocks) + h (xi(blocks) - I) at C = 0",
            "assumptions": ["C = 0"],
            "verified": target_ab == cert_ab,
        })

    report = ConstraintReport(deformation, constraints, implied)
    rng = random.Random(seed)
    for case in catalog().values():
        if case.deformation != deformation:
            continue
        fam = r3_matrix(case)
        point = ansatz_point(fam)
        free_point = ansatz_point(r3_matrix(replace(case, bindings=())))
        if deformation == "q" and case.mode == "q_imaginary":
            point["q"] = case.q
        if ansatz_matrix().substitute(point) != fam:
            report.catalog[case.id] = ["ansatz does not reproduce the family"]
            continue
        report.catalog[case.id] = report.nonzero(point)
        implied_vals = []
        if deformation == "q":
            Bf, Cf = fam.block(0, 1), fam.block(1, 0)
            implied_vals = [(Bf * Bf).is_zero(), (Cf * Cf).is_zero()]
        pert = {}
        for name in ANSATZ_VARIABLES:
            if free_point[name].variables() - {"q", "p", "h"}:
                continue  # direction along a family parameter
            delta = Fraction(rng.randint(1, 9), rng.randint(2, 11))
            moved = dict(point)
            moved[name] = point[name] + const(delta)
            pert[f"{name}+{delta}"] = bool(report.nonzero(moved))
        report.perturbations[case.id] = pert
        if implied_vals and not all(implied_vals):
            report.catalog[case.id].append("implied nilpotency fails")
    return report
