"""Exact coefficient field: rational functions over the Gaussian rationals.

A :class:`Coefficient` is a quotient ``(re + i*im) / den`` of polynomials with
rational coefficients in a fixed, globally ordered set of real parameters.
Because every parameter is real, the denominator can always be made free of
``i`` (multiply through by the conjugate), and conjugation reduces to
``i -> -i``.  Imaginary deformation parameters are handled by substitution,
e.g. ``q := i*p`` with ``p`` a positive real parameter.

Canonical form: ``gcd(re, im, den) = 1`` and ``den`` monic with respect to the
degree-lexicographic order of :data:`PARAMETERS`.  Two coefficients are equal
iff their canonical forms are identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import re as _re

import flint

__all__ = [
    "PARAMETERS",
    "Coefficient",
    "ParameterDecl",
    "ParameterContext",
    "PoleError",
    "UnresolvedSign",
    "UndeclaredParameter",
    "param",
    "const",
    "I",
    "ZERO",
    "ONE",
    "resolve_sign",
    "modulus",
    "default_context",
]

# Global parameter order; also the variable order of the deglex monomial order.
#   q, p     standard deformation parameter; p is used for imaginary q = i*p
#   h, k     Jordanian parameter; k = h^(1/2) for the similarity check
#   r, t, u  catalog parameters; u is used for imaginary t = i*u
#   s        gauge scale (plays the role of exp(2*alpha))
#   a11 ...  real unknowns of the reality-reduced R3 ansatz
PARAMETERS: tuple[str, ...] = (
    "q", "p", "h", "k", "r", "t", "u", "s",
    "a11", "a12r", "a12i", "a21r", "a21i", "a22r", "a22i",
    "b12r", "b12i", "b21", "b22r", "b22i",
    "c12", "c22r", "c22i", "d22",
)
_INDEX = {name: i for i, name in enumerate(PARAMETERS)}
_NVARS = len(PARAMETERS)

_CTX = flint.fmpq_mpoly_ctx.get(PARAMETERS, "deglex")
_P0 = _CTX.from_dict({})
_P1 = _CTX.from_dict({(0,) * _NVARS: 1})


class PoleError(ZeroDivisionError):
    """Division by the zero function, or evaluation at a pole."""


class UnresolvedSign(ValueError):
    """A sign or modulus was required but the assumptions do not force it."""


class UndeclaredParameter(ValueError):
    pass


def _cancel(re, im, den):
    if den.is_zero():
        raise PoleError("division by the zero rational function")
    if re.is_zero() and im.is_zero():
        return _P0, _P0, _P1
    if not den.is_constant():
        g = den.gcd(re) if not re.is_zero() else den.gcd(im)
        if not (re.is_zero() or im.is_zero()):
            g = g.gcd(im)
        if not g.is_constant():
            den = den / g
            if not re.is_zero():
                re = re / g
            if not im.is_zero():
                im = im / g
    lc = den.leading_coefficient()
    if lc != 1:
        den = den / lc
        re = re / lc
        im = im / lc
    return re, im, den


class Coefficient:
    """Immutable element of Q(i)(parameters) kept in canonical form."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re=None, im=None, den=None, *, _canonical=False):
        re = _P0 if re is None else re
        im = _P0 if im is None else im
        den = _P1 if den is None else den
        if not _canonical:
            re, im, den = _cancel(re, im, den)
        self.re = re
        self.im = im
        self.den = den
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def from_rational(cls, value, imag=0) -> "Coefficient":
        a = Fraction(value)
        b = Fraction(imag)
        re = _CTX.from_dict({(0,) * _NVARS: flint.fmpq(a.numerator, a.denominator)}) if a else _P0
        im = _CTX.from_dict({(0,) * _NVARS: flint.fmpq(b.numerator, b.denominator)}) if b else _P0
        return cls(re, im, _P1, _canonical=True)

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return not (self.re.is_zero() and self.im.is_zero())

    def is_zero(self) -> bool:
        return not self

    def is_one(self) -> bool:
        return self.im.is_zero() and self.den.is_one() and self.re.is_one()

    def is_constant(self) -> bool:
        return self.re.is_constant() and self.im.is_constant() and self.den.is_constant()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.re, self.im, self.den):
            for mono in poly.monoms():
                used.update(PARAMETERS[j] for j, e in enumerate(mono) if e)
        return used

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Coefficient):
            if isinstance(other, (int, Fraction)):
                other = const(other)
            else:
                return NotImplemented
        if not other:
            return self
        if not self:
            return other
        if self.den == other.den:
            return Coefficient(self.re + other.re, self.im + other.im, self.den)
        return Coefficient(
            self.re * other.den + other.re * self.den,
            self.im * other.den + other.im * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Coefficient(-self.re, -self.im, self.den, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, Coefficient):
            if isinstance(other, (int, Fraction)):
                other = const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Coefficient):
            if isinstance(other, (int, Fraction)):
                other = const(other)
            else:
                return NotImplemented
        if not self or not other:
            return ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        a, b, d = self.re, self.im, self.den
        c, e, f = other.re, other.im, other.den
        if b.is_zero() and e.is_zero():
            return Coefficient(a * c, _P0, d * f)
        return Coefficient(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        if not self:
            raise PoleError("division by the zero rational function")
        a, b, d = self.re, self.im, self.den
        if b.is_zero():
            return Coefficient(d, _P0, a)
        norm = a * a + b * b
        return Coefficient(a * d, -(b * d), norm)

    def __truediv__(self, other):
        if not isinstance(other, Coefficient):
            if isinstance(other, (int, Fraction)):
                other = const(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return const(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, ctx: "ParameterContext | None" = None) -> "Coefficient":
        """Complex conjugate; every parameter is real so only ``i`` flips."""
        if ctx is not None:
            ctx.check(self)
        if self.im.is_zero():
            return self
        return Coefficient(self.re, -self.im, self.den, _canonical=True)

    def real_part(self) -> "Coefficient":
        return Coefficient(self.re, _P0, self.den)

    def imag_part(self) -> "Coefficient":
        return Coefficient(self.im, _P0, self.den)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.re == other.re and self.im == other.im and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.re), str(self.im), str(self.den)))
        return self._hash

    # -- specialization -------------------------------------------------
    def substitute(self, mapping: dict) -> "Coefficient":
        """Replace parameters by coefficients (``{'q': i*p}``, ``{'h': 1}`` ...)."""
        if not mapping:
            return self
        values = []
        for name in PARAMETERS:
            v = mapping.get(name)
            if v is None:
                values.append(None)
            elif isinstance(v, Coefficient):
                values.append(v)
            else:
                values.append(const(v))
        num = _eval_poly(self.re, values) + I * _eval_poly(self.im, values)
        den = _eval_poly(self.den, values)
        if not den:
            raise PoleError(f"substitution {mapping} hits a pole of {self}")
        return num / den

    def evaluate(self, point: dict) -> "Coefficient":
        """Exact Gaussian-rational value at a rational point.

        Every parameter occurring in ``self`` must be assigned.
        """
        missing = self.variables() - set(point)
        if missing:
            raise ValueError(f"evaluation point does not assign {sorted(missing)}")
        return self.substitute(point)

    def as_gaussian(self) -> tuple[Fraction, Fraction]:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        d = _const_value(self.den)
        return _const_value(self.re) / d, _const_value(self.im) / d

    # -- text -----------------------------------------------------------
    def __str__(self):
        return format_coefficient(self)

    def __repr__(self):
        return f"Coefficient({format_coefficient(self)!r})"


def _const_value(poly) -> Fraction:
    if poly.is_zero():
        return Fraction(0)
    c = poly.coeffs()[0]
    return Fraction(int(c.p), int(c.q))


def _eval_poly(poly, values) -> Coefficient:
    total = ZERO
    for mono, c in zip(poly.monoms(), poly.coeffs()):
        term = const(Fraction(int(c.p), int(c.q)))
        keep = [0] * _NVARS
        has_keep = False
        for j, e in enumerate(mono):
            if not e:
                continue
            if values[j] is None:
                keep[j] = e
                has_keep = True
            else:
                term = term * values[j] ** int(e)
        if has_keep:
            term = term * Coefficient(_CTX.from_dict({tuple(keep): 1}), _P0, _P1, _canonical=True)
        total = total + term
    return total


def const(value, imag=0) -> Coefficient:
    if isinstance(value, Coefficient):
        return value
    return Coefficient.from_rational(value, imag)


def param(name: str) -> Coefficient:
    if name not in _INDEX:
        raise UndeclaredParameter(f"unknown parameter {name!r}")
    mono = [0] * _NVARS
    mono[_INDEX[name]] = 1
    return Coefficient(_CTX.from_dict({tuple(mono): 1}), _P0, _P1, _canonical=True)


ZERO = Coefficient(_P0, _P0, _P1, _canonical=True)
ONE = Coefficient(_P1, _P0, _P1, _canonical=True)
I = Coefficient(_P0, _P1, _P1, _canonical=True)


# ---------------------------------------------------------------------------
# Canonical text form
# ---------------------------------------------------------------------------

def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_monomial(mono) -> str:
    parts = []
    for j, e in enumerate(mono):
        if e == 1:
            parts.append(PARAMETERS[j])
        elif e:
            parts.append(f"{PARAMETERS[j]}^{e}")
    return "*".join(parts)


def _poly_terms(re, im):
    terms = {}
    for mono, c in zip(re.monoms(), re.coeffs()):
        terms[mono] = [Fraction(int(c.p), int(c.q)), Fraction(0)]
    for mono, c in zip(im.monoms(), im.coeffs()):
        terms.setdefault(mono, [Fraction(0), Fraction(0)])[1] = Fraction(int(c.p), int(c.q))
    return sorted(terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)


def _fmt_term(mono, a: Fraction, b: Fraction) -> str:
    m = _fmt_monomial(mono)
    if b == 0:
        if not m:
            return _fmt_fraction(a)
        if a == 1:
            return m
        if a == -1:
            return "-" + m
        return f"{_fmt_fraction(a)}*{m}"
    if a == 0:
        if b == 1:
            c = "i"
        elif b == -1:
            c = "-i"
        else:
            c = f"{_fmt_fraction(b)}*i"
        return f"{c}*{m}" if m else c
    c = f"({_fmt_fraction(a)} + {_fmt_fraction(b)}*i)" if b > 0 else f"({_fmt_fraction(a)} - {_fmt_fraction(-b)}*i)"
    return f"{c}*{m}" if m else c


def _fmt_sum(terms) -> str:
    out = ""
    for mono, (a, b) in terms:
        s = _fmt_term(mono, a, b)
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out or "0"


def format_coefficient(c: Coefficient) -> str:
    num_terms = _poly_terms(c.re, c.im)
    num = _fmt_sum(num_terms)
    if c.den.is_one():
        return num
    den_terms = _poly_terms(c.den, _P0)
    den = _fmt_sum(den_terms)
    if len(num_terms) > 1 or "/" in num:
        num = f"({num})"
    single_var = len(den_terms) == 1 and den_terms[0][1][0] == 1 and sum(1 for e in den_terms[0][0] if e) == 1
    if not single_var:
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# Declarations, assumptions and sign resolution
# ---------------------------------------------------------------------------

_ASSUMPTION = _re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(>|<|!=)\s*(-?\d+(?:/\d+)?)\s*$")


@dataclass(frozen=True)
class ParameterDecl:
    name: str
    reality: str = "real"  # "real" | "positive_real"
    assumptions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.name not in _INDEX:
            raise UndeclaredParameter(f"unknown parameter {self.name!r}")
        if self.reality not in ("real", "positive_real"):
            raise ValueError(f"bad reality {self.reality!r} for {self.name}")
        for a in self.assumptions:
            m = _ASSUMPTION.match(a)
            if not m or m.group(1) != self.name:
                raise ValueError(f"cannot parse assumption {a!r} for {self.name}")

    def interval(self) -> tuple[Fraction | None, Fraction | None]:
        lo = Fraction(0) if self.reality == "positive_real" else None
        hi = None
        for a in self.assumptions:
            _, op, v = _ASSUMPTION.match(a).groups()
            v = Fraction(v)
            if op == ">" and (lo is None or v > lo):
                lo = v
            elif op == "<" and (hi is None or v < hi):
                hi = v
        return lo, hi

    def excluded(self) -> list[Fraction]:
        return [Fraction(m.group(3)) for m in map(_ASSUMPTION.match, self.assumptions) if m.group(2) == "!="]


@dataclass(frozen=True)
class ParameterContext:
    decls: tuple[ParameterDecl, ...] = field(default_factory=tuple)

    def __post_init__(self):
        names = [d.name for d in self.decls]
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter declaration")

    def get(self, name: str) -> ParameterDecl:
        for d in self.decls:
            if d.name == name:
                return d
        raise UndeclaredParameter(f"parameter {name!r} is not declared")

    def names(self) -> list[str]:
        return [d.name for d in self.decls]

    def check(self, c: Coefficient) -> None:
        missing = c.variables() - set(self.names())
        if missing:
            raise UndeclaredParameter(f"undeclared parameters {sorted(missing)} in {c}")

    def with_decl(self, decl: ParameterDecl) -> "ParameterContext":
        rest = tuple(d for d in self.decls if d.name != decl.name)
        return ParameterContext(tuple(sorted(rest + (decl,), key=lambda d: _INDEX[d.name])))


def default_context() -> ParameterContext:
    """Standing assumptions: q > 1 (real regime), p > 1 (q = i*p), h real."""
    special = {
        "q": ParameterDecl("q", "real", ("q > 1",)),
        "p": ParameterDecl("p", "positive_real", ("p > 1",)),
        "k": ParameterDecl("k", "positive_real"),
        "s": ParameterDecl("s", "positive_real"),
    }
    return ParameterContext(tuple(special.get(n, ParameterDecl(n)) for n in PARAMETERS))


def _sign_const(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _univariate_sign(poly, var: int, decl: ParameterDecl):
    import sympy

    lo, hi = decl.interval()
    x = sympy.Symbol("x")
    coeffs = {m[var]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())}
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**e for e, c in coeffs.items())
    sp_poly = sympy.Poly(expr, x)
    inf = None if lo is None else sympy.Rational(lo.numerator, lo.denominator)
    sup = None if hi is None else sympy.Rational(hi.numerator, hi.denominator)
    n = sp_poly.count_roots(inf, sup)
    if inf is not None and sp_poly.eval(inf) == 0:
        n -= 1
    if sup is not None and sp_poly.eval(sup) == 0:
        n -= 1
    if n:
        return 0
    if lo is not None and hi is not None:
        sample = (lo + hi) / 2
    elif lo is not None:
        sample = lo + 1
    elif hi is not None:
        sample = hi - 1
    else:
        sample = Fraction(0)
    value = sp_poly.eval(sympy.Rational(sample.numerator, sample.denominator))
    return 1 if value > 0 else -1


def _shifted_sign(poly, ctx: ParameterContext):
    """Shift every variable onto (0, oo) and read off a uniform coefficient sign."""
    from sympy import Symbol, Rational, Poly, expand

    used = sorted({j for m in poly.monoms() for j, e in enumerate(m) if e})
    syms = {j: Symbol(f"y{j}") for j in used}
    subs = {}
    for j in used:
        lo, hi = ctx.get(PARAMETERS[j]).interval()
        if lo is not None:
            subs[j] = Rational(lo.numerator, lo.denominator) + syms[j]
        elif hi is not None:
            subs[j] = Rational(hi.numerator, hi.denominator) - syms[j]
        else:
            return 0
    expr = 0
    for m, c in zip(poly.monoms(), poly.coeffs()):
        term = Rational(int(c.p), int(c.q))
        for j in used:
            if m[j]:
                term *= subs[j] ** m[j]
        expr += term
    signs = {1 if c > 0 else -1 for c in Poly(expand(expr), *syms.values()).coeffs() if c != 0}
    return signs.pop() if len(signs) == 1 else 0


def _poly_sign(poly, ctx: ParameterContext) -> int:
    if poly.is_zero():
        return 0
    if poly.is_constant():
        return _sign_const(_const_value(poly))
    const_factor, factors = poly.factor()
    sign = _sign_const(Fraction(int(const_factor.p), int(const_factor.q)))
    for f, e in factors:
        if e % 2 == 0:
            continue
        used = {j for m in f.monoms() for j, ex in enumerate(m) if ex}
        if len(used) == 1:
            j = used.pop()
            s = _univariate_sign(f, j, ctx.get(PARAMETERS[j]))
        else:
            s = _shifted_sign(f, ctx)
        if s == 0:
            return 0
        sign *= s
    return sign


def resolve_sign(a: Coefficient, ctx: ParameterContext | None = None) -> int | None:
    """Sign of a real coefficient forced by the declared assumptions.

    Returns +1 or -1, or ``None`` when the sign is not determined (including
    non-real input).  Factors of even multiplicity count as positive.
    """
    ctx = ctx or default_context()
    ctx.check(a)
    if not a.im.is_zero():
        return None
    if a.re.is_zero():
        return 0
    s = _poly_sign(a.re, ctx) * _poly_sign(a.den, ctx)
    return s or None


def modulus(a: Coefficient, ctx: ParameterContext | None = None) -> Coefficient:
    """|a| for a real or purely imaginary coefficient; raises when unresolvable."""
    if a.im.is_zero():
        s = resolve_sign(a, ctx)
        base = a
    elif a.re.is_zero():
        base = a.imag_part()
        s = resolve_sign(base, ctx)
    else:
        raise UnresolvedSign(f"modulus of a genuinely complex value {a} is not in the field")
    if s is None:
        raise UnresolvedSign(f"sign of {base} is not forced by the assumptions")
    return base if s >= 0 else -base
