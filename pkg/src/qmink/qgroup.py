"""The FRT layer: quantum-group algebras from R-matrices, quantum
determinants, centrality, epsilon/D identities and quantum-plane covariance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import Coefficient, ONE, const, param
from .matalg import (
    Matrix, identity, kron, leg_embed, perm, partial_transpose, partial_trace2,
    inverse, projectors_from_minpoly,
)
from .ncalg import GeneratorSet, NCPoly, RewriteSystem, orient, commutator

__all__ = [
    "AlgebraPresentation",
    "ProportionalityError",
    "lam",
    "r_q",
    "r_h",
    "rhat",
    "epsilon",
    "epsilon_inverse",
    "epsilon_q_sqrt",
    "spectral",
    "ybe",
    "hecke_residual",
    "frt_gens",
    "m_matrix",
    "frt_relations",
    "sandwich_scalar",
    "qdet_via_projector",
    "centrality",
    "with_relation",
    "epsilon_inverse_identity",
    "dq_from_trace_formula",
    "plane_covariance",
    "M_ORDER",
]

# Generator orders that make the FRT systems confluent (checked in tests).
M_ORDER = {"q": ("a", "b", "c", "d"), "h": ("c", "a", "d", "b")}


class ProportionalityError(ValueError):
    """A projector sandwich is not a scalar multiple of the projector."""


def lam(q: Coefficient | None = None) -> Coefficient:
    q = param("q") if q is None else q
    return q - q.inverse()


def r_q(q: Coefficient | None = None) -> Matrix:
    q = param("q") if q is None else q
    return Matrix([[q, 0, 0, 0], [0, 1, 0, 0], [0, lam(q), 1, 0], [0, 0, 0, q]])


def r_h(h: Coefficient | None = None) -> Matrix:
    h = param("h") if h is None else h
    return Matrix([[1, -h, h, h * h], [0, 1, 0, -h], [0, 0, 1, h], [0, 0, 0, 1]])


def rhat(r: Matrix) -> Matrix:
    return perm() * r


def epsilon(deformation: str, value: Coefficient | None = None) -> Matrix:
    """The invariant bilinear form.

    For the standard deformation this returns ``q^(1/2) * eps_q`` =
    ``[[0, 1], [-q, 0]]``: every identity using ``eps`` together with
    ``eps^-1`` is insensitive to the scale, and the square root stays out of
    the field.  Use :func:`epsilon_q_sqrt` for the unscaled matrix.
    """
    if deformation == "q":
        q = param("q") if value is None else value
        return Matrix([[0, 1], [-q, 0]])
    h = param("h") if value is None else value
    return Matrix([[h, 1], [-1, 0]])


def epsilon_inverse(deformation: str, value: Coefficient | None = None) -> Matrix:
    return inverse(epsilon(deformation, value))


def epsilon_q_sqrt(k: Coefficient | None = None) -> Matrix:
    """``eps_q`` written with ``k = q^(1/2)``."""
    k = param("k") if k is None else k
    return Matrix([[0, k.inverse()], [-k, 0]])


@dataclass
class Spectral:
    rhat: Matrix
    eigenvalues: tuple
    plus: Matrix
    minus: Matrix
    rho: Coefficient
    q2: Coefficient  # the quantum integer [2]_rho


def spectral(deformation: str, value: Coefficient | None = None) -> Spectral:
    """Projector decomposition of ``P R_Q`` from its known eigenvalues."""
    if deformation == "q":
        q = param("q") if value is None else value
        rh = rhat(r_q(q))
        eig = (q, -q.inverse())
        rho, q2 = q, q + q.inverse()
    else:
        h = param("h") if value is None else value
        rh = rhat(r_h(h))
        eig = (ONE, -ONE)
        rho, q2 = ONE, const(2)
    plus, minus = projectors_from_minpoly(rh, eig)
    return Spectral(rh, eig, plus, minus, rho, q2)


def ybe(r: Matrix) -> bool:
    return (leg_embed(r, "12") * leg_embed(r, "13") * leg_embed(r, "23")
            == leg_embed(r, "23") * leg_embed(r, "13") * leg_embed(r, "12"))


def hecke_residual(r: Matrix, eigenvalues) -> Matrix:
    """``(R^ - e1)(R^ - e2)`` for ``R^ = P R``; zero iff the quadratic condition holds."""
    rh = rhat(r)
    one = identity(4)
    e1, e2 = (const(e) for e in eigenvalues)
    return (rh - one * e1) * (rh - one * e2)


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

@dataclass
class AlgebraPresentation:
    gens: GeneratorSet
    relations: list
    rewrite: RewriteSystem
    tag: str = ""
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.rewrite.status == "unchecked":
            self.rewrite.check_confluence()

    @property
    def confluent(self) -> bool:
        return self.rewrite.status == "checked-confluent"

    def nf(self, p: NCPoly) -> NCPoly:
        self.rewrite.require_confluent()
        return self.rewrite.reduce(p)

    def gen(self, name: str) -> NCPoly:
        return self.gens.gen(name)

    def contains(self, p: NCPoly) -> bool:
        """Ideal membership (sound for confluent systems)."""
        return self.nf(p).is_zero()


def frt_gens(deformation: str = "q", order=None) -> GeneratorSet:
    return GeneratorSet.build(order or M_ORDER[deformation])


def m_matrix(gens: GeneratorSet, names=("a", "b", "c", "d")) -> Matrix:
    a, b, c, d = (gens.gen(n) for n in names)
    return Matrix([[a, b], [c, d]])


def frt_relations(r: Matrix, gens: GeneratorSet | None = None, tag: str = "") -> AlgebraPresentation:
    """Relations ``R M1 M2 = M2 M1 R`` reduced to an interreduced rule set."""
    gens = gens or frt_gens("q")
    m = m_matrix(gens)
    one = identity(2)
    m1, m2 = kron(m, one), kron(one, m)
    diff = r * m1 * m2 - m2 * m1 * r
    rels = [x for _, x in diff.entries() if x]
    rs = orient(rels, gens)
    return AlgebraPresentation(gens, rs.relations(), rs, tag)


def sandwich_scalar(sandwich: Matrix, projector: Matrix, rs: RewriteSystem | None = None) -> NCPoly:
    """The unique ``x`` with ``sandwich = x * projector`` entrywise."""
    entries = list(sandwich.entries())
    if rs is not None:
        entries = [(ij, rs.reduce(x)) for ij, x in entries]
    pivot = next(((ij, c) for ij, c in projector.entries() if c), None)
    if pivot is None:
        raise ProportionalityError("projector is zero")
    (i, j), c = pivot
    x = dict(entries)[(i, j)] * c.inverse()
    for (a, b), s in entries:
        if not (s - x * projector[a, b]).is_zero():
            raise ProportionalityError(f"entry ({a},{b}) breaks proportionality")
    return x


def qdet_via_projector(r: Matrix, p_minus: Matrix, alg: AlgebraPresentation) -> NCPoly:
    """``(det M) P- = P- M1 M2``, evaluated in the algebra."""
    alg.rewrite.require_confluent()
    m = m_matrix(alg.gens)
    one = identity(2)
    sandwich = p_minus * kron(m, one) * kron(one, m)
    return sandwich_scalar(sandwich, p_minus, alg.rewrite)


def centrality(z: NCPoly, alg: AlgebraPresentation, generators=None):
    """``(is_central, {generator: nonzero residue of [z, g]})``."""
    witnesses = {}
    for name in generators or alg.gens.names:
        res = alg.nf(commutator(z, alg.gen(name)))
        if res:
            witnesses[name] = res
    return not witnesses, witnesses


def with_relation(alg: AlgebraPresentation, extra: NCPoly, tag: str = "") -> AlgebraPresentation:
    rs = orient(list(alg.rewrite.relations()) + [extra], alg.gens)
    return AlgebraPresentation(alg.gens, rs.relations(), rs, tag or alg.tag)


def epsilon_inverse_identity(deformation: str, alg: AlgebraPresentation, det: NCPoly,
                             eps: Matrix | None = None):
    """``M (eps M^t eps^-1) = I = (eps M^t eps^-1) M`` once ``det = 1`` is imposed.

    Returns ``(holds, sl_algebra)``.
    """
    sl = with_relation(alg, det - alg.gens.one(), alg.tag + "+det=1")
    sl.rewrite.require_confluent()
    eps = eps or epsilon(deformation)
    m = m_matrix(alg.gens)
    minv = eps * m.transpose() * inverse(eps)
    one = identity(2)
    ok = True
    for prod in (m * minv, minv * m):
        for (i, j), x in prod.entries():
            target = one[i, j]
            if sl.nf(x - alg.gens.one() * target):
                ok = False
    return ok, sl


def dq_from_trace_formula(r: Matrix, rho: Coefficient) -> Matrix:
    """``D = rho^2 tr_2(P ((R^t1)^-1)^t1)``."""
    x = partial_transpose(inverse(partial_transpose(r, 1)), 1)
    return partial_trace2(perm() * x) * (rho * rho)


def plane_covariance(r: Matrix, plane_relation: NCPoly, deformation: str = "q") -> tuple[bool, NCPoly]:
    """Coaction ``X -> M X`` preserves the plane relation.

    Builds the algebra on ``{M entries} u {x, y}`` with ``x, y`` commuting with
    ``M`` (the plane generators must be named ``x`` and ``y``); the transformed relation must reduce to zero once the plane rule is
    included.  Returns ``(preserved, residue)``.
    """
    plane_names = plane_relation.gens.names
    m_names = M_ORDER[deformation]
    gens = GeneratorSet.build(m_names + tuple(plane_names), blocks=[0] * 4 + [1] * len(plane_names),
                              commuting=[(0, 1)])
    alg = frt_relations(r, GeneratorSet.build(m_names))
    rels = [p.rename(gens) for p in alg.rewrite.relations()]
    rels.append(plane_relation.rename(gens))
    rs = orient(rels, gens)
    rs.require_confluent()
    m = m_matrix(gens)
    x, y = gens.gen("x"), gens.gen("y")
    x2 = m[0, 0] * x + m[0, 1] * y
    y2 = m[1, 0] * x + m[1, 1] * y
    image = plane_relation.substitute({"x": x2, "y": y2})
    residue = rs.reduce(image)
    return residue.is_zero(), residue
