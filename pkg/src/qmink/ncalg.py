"""Noncommutative polynomials over a finite ordered alphabet, quadratic
rewriting systems, normal forms, confluence checks and the *-involution.

Words are tuples of generator indices; the index order *is* the generator
order, so the graded-lexicographic key of a word ``w`` is ``(len(w), w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import os

from .coeff import Coefficient, ONE, ZERO, const

__all__ = [
    "GeneratorSet",
    "NCPoly",
    "RewriteSystem",
    "OrientationError",
    "IterationCapExceeded",
    "NonConfluentError",
    "orient",
    "normal_form",
    "confluence_check",
    "star",
    "commutator",
    "DEFAULT_ITERATION_CAP",
    "iteration_cap",
    "set_iteration_cap",
]

DEFAULT_ITERATION_CAP = 10**6
_cap_override: int | None = None


def iteration_cap() -> int:
    """Cap on rule applications per rewrite system: explicit override, then
    ``QMINK_MAX_STEPS``, then the default."""
    if _cap_override is not None:
        return _cap_override
    return int(os.environ.get("QMINK_MAX_STEPS", DEFAULT_ITERATION_CAP))


def set_iteration_cap(n: int | None) -> None:
    global _cap_override
    _cap_override = n


class OrientationError(ValueError):
    pass


class IterationCapExceeded(RuntimeError):
    pass


class NonConfluentError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generators with an involution and a block partition.

    ``blocks[i]`` is the block id of generator ``i``; every pair of distinct
    blocks listed in ``commuting`` commutes elementwise.
    """

    names: tuple[str, ...]
    involution: tuple[int, ...] = None
    blocks: tuple[int, ...] = None
    commuting: frozenset = frozenset()

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("generator names must be unique")
        if self.involution is None:
            object.__setattr__(self, "involution", tuple(range(n)))
        if self.blocks is None:
            object.__setattr__(self, "blocks", (0,) * n)
        sigma = self.involution
        if sorted(sigma) != list(range(n)) or any(sigma[sigma[i]] != i for i in range(n)):
            raise ValueError("involution must be an involutive permutation")
        object.__setattr__(
            self, "commuting", frozenset(frozenset(p) for p in self.commuting)
        )

    @classmethod
    def build(cls, names, pairs=None, blocks=None, commuting=()):
        """``pairs`` maps names to their *-partners (unlisted: self-adjoint)."""
        names = tuple(names)
        idx = {n: i for i, n in enumerate(names)}
        sigma = list(range(len(names)))
        for a, b in (pairs or {}).items():
            sigma[idx[a]] = idx[b]
            sigma[idx[b]] = idx[a]
        return cls(names, tuple(sigma), tuple(blocks) if blocks else None, frozenset(commuting))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> "NCPoly":
        return NCPoly({(self.index(name),): ONE}, self)

    def gens(self) -> list["NCPoly"]:
        return [NCPoly({(i,): ONE}, self) for i in range(len(self))]

    def one(self) -> "NCPoly":
        return NCPoly({(): ONE}, self)

    def zero(self) -> "NCPoly":
        return NCPoly({}, self)

    def commute(self, i: int, j: int) -> bool:
        bi, bj = self.blocks[i], self.blocks[j]
        return bi != bj and frozenset((bi, bj)) in self.commuting

    def word_str(self, w) -> str:
        return ".".join(self.names[i] for i in w) if w else "1"


def _key(w):
    return (len(w), w)


class NCPoly:
    """Element of the free algebra: a sparse map word -> Coefficient."""

    __slots__ = ("terms", "gens")

    def __init__(self, terms: dict, gens: GeneratorSet):
        self.terms = {w: c for w, c in terms.items() if c}
        self.gens = gens

    # -- basic structure --------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def leading_word(self):
        return max(self.terms, key=_key) if self.terms else None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _key(kv[0]), reverse=True)

    def coefficient(self, word) -> Coefficient:
        return self.terms.get(tuple(word), ZERO)

    def scalar_part(self) -> Coefficient:
        return self.terms.get((), ZERO)

    def is_scalar(self) -> bool:
        return all(len(w) == 0 for w in self.terms)

    def map_coefficients(self, fn) -> "NCPoly":
        return NCPoly({w: fn(c) for w, c in self.terms.items()}, self.gens)

    def substitute_parameters(self, mapping) -> "NCPoly":
        return self.map_coefficients(lambda c: c.substitute(mapping))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, Coefficient):
            return NCPoly({(): other}, self.gens)
        if isinstance(other, int):
            return NCPoly({(): const(other)}, self.gens)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return NCPoly(out, self.gens)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Coefficient, int)):
            c = const(other)
            if not c:
                return NCPoly({}, self.gens)
            return NCPoly({w: v * c for w, v in self.terms.items()}, self.gens)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                if w in out:
                    out[w] = out[w] + c
                else:
                    out[w] = c
        return NCPoly(out, self.gens)

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, int)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Coefficient, int)):
            return self * const(other).inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of noncommutative polynomials")
        out = self.gens.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, NCPoly) else other
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from .parse import format_ncpoly

        return format_ncpoly(self)

    __repr__ = __str__

    # -- embedding into another alphabet ----------------------------------
    def rename(self, gens: GeneratorSet, mapping: dict | None = None) -> "NCPoly":
        """Re-express over ``gens``, optionally renaming generators by name."""
        mapping = mapping or {}
        table = [gens.index(mapping.get(n, n)) for n in self.gens.names]
        return NCPoly({tuple(table[i] for i in w): c for w, c in self.terms.items()}, gens)

    def substitute(self, images: dict) -> "NCPoly":
        """Algebra morphism: replace each generator name by a polynomial."""
        target = next(iter(images.values())).gens
        out = NCPoly({}, target)
        cache = {}
        for w, c in self.terms.items():
            term = NCPoly({(): c}, target)
            for i in w:
                name = self.gens.names[i]
                if name not in cache:
                    cache[name] = images[name]
                term = term * cache[name]
            out = out + term
        return out


def commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    return x * y - y * x


class RewriteSystem:
    """Oriented rules ``lhs word -> NCPoly of smaller words``.

    Normal forms are computed by appending letters one at a time to an
    already-normal word, memoising ``(normal word, letter)`` reductions.  For
    a confluent system this is the unique normal form; for a nonconfluent one
    it is the leftmost-first reduct.
    """

    def __init__(self, gens: GeneratorSet, rules: dict, status: str = "unchecked",
                 max_steps: int | None = None):
        self.gens = gens
        self.rules = {}
        for lhs, rhs in rules.items():
            if len(lhs) != 2:
                raise OrientationError(f"rule with non-quadratic leading word {gens.word_str(lhs)}")
            for w in rhs.terms:
                if _key(w) >= _key(lhs):
                    raise OrientationError(
                        f"rule {gens.word_str(lhs)} -> {rhs} does not decrease in graded-lex order")
            self.rules[lhs] = rhs.terms
        self.status = status
        self.failures: list = []
        self.max_steps = max_steps
        self._memo: dict = {}
        self.steps = 0

    @property
    def max_steps(self) -> int:
        # unset caps follow the global setting, so cached systems see overrides
        return self._max_steps or iteration_cap()

    @max_steps.setter
    def max_steps(self, n: int | None) -> None:
        self._max_steps = n

    def __len__(self):
        return len(self.rules)

    def rule_items(self):
        for lhs in sorted(self.rules, key=_key):
            yield lhs, NCPoly(self.rules[lhs], self.gens)

    def relations(self) -> list[NCPoly]:
        """Rules as polynomials ``lhs - rhs`` (each = 0 in the algebra)."""
        return [NCPoly({lhs: ONE}, self.gens) - rhs for lhs, rhs in self.rule_items()]

    def is_normal(self, w) -> bool:
        return all((w[i], w[i + 1]) not in self.rules for i in range(len(w) - 1))

    # -- reduction ----------------------------------------------------------
    def _append(self, n, x) -> dict:
        key = (n, x)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not n or (n[-1], x) not in self.rules:
            result = {n + (x,): ONE}
        else:
            self.steps += 1
            if self.steps > self.max_steps:
                raise IterationCapExceeded(
                    f"normal form exceeded {self.max_steps} rule applications")
            prefix = n[:-1]
            result = {}
            for v, c in self.rules[(n[-1], x)].items():
                for w, d in self._append_word(prefix, v).items():
                    _acc(result, w, c * d)
        self._memo[key] = result
        return result

    def _append_word(self, n, v) -> dict:
        state = {n: ONE}
        for x in v:
            nxt: dict = {}
            for w, c in state.items():
                for w2, d in self._append(w, x).items():
                    _acc(nxt, w2, c * d if not c.is_one() else d)
            state = nxt
        return state

    def reduce(self, p: NCPoly) -> NCPoly:
        if isinstance(p, Coefficient):
            p = NCPoly({(): p}, self.gens)
        if p.gens is not self.gens and p.gens != self.gens:
            raise ValueError("polynomial and rewrite system use different generator sets")
        out: dict = {}
        for w, c in p.terms.items():
            for w2, d in self._append_word((), w).items():
                _acc(out, w2, c * d)
        return NCPoly(out, self.gens)

    def reduce_product(self, a: NCPoly, b: NCPoly) -> NCPoly:
        """Normal form of ``a*b`` for normal ``a`` (avoids expanding the product)."""
        out: dict = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                c = c1 * c2
                for w, d in self._append_word(w1, w2).items():
                    _acc(out, w, c * d)
        return NCPoly(out, self.gens)

    # -- confluence -------------------------------------------------------------
    def overlaps(self):
        by_first: dict = {}
        for (x, y) in self.rules:
            by_first.setdefault(x, []).append(y)
        for (x, y) in sorted(self.rules):
            for z in sorted(by_first.get(y, ())):
                yield (x, y, z)

    def check_confluence(self) -> "RewriteSystem":
        failures = []
        for x, y, z in self.overlaps():
            left = {}
            for v, c in self.rules[(x, y)].items():
                for w, d in self._append_word((), v + (z,)).items():
                    _acc(left, w, c * d)
            right = {}
            for v, c in self.rules[(y, z)].items():
                for w, d in self._append_word((), (x,) + v).items():
                    _acc(right, w, c * d)
            if left != right:
                diff = NCPoly(left, self.gens) - NCPoly(right, self.gens)
                failures.append(((x, y, z), diff))
        self.failures = failures
        self.status = "checked-nonconfluent" if failures else "checked-confluent"
        return self

    def require_confluent(self) -> None:
        if self.status == "unchecked":
            self.check_confluence()
        if self.status != "checked-confluent":
            words = ", ".join(self.gens.word_str(w) for w, _ in self.failures[:5])
            raise NonConfluentError(f"rewrite system is not confluent (overlaps {words})")


def _acc(d: dict, w, c) -> None:
    if w in d:
        s = d[w] + c
        if s:
            d[w] = s
        else:
            del d[w]
    elif c:
        d[w] = c


def orient(relations, gens: GeneratorSet, *, with_commutation: bool = True,
           max_steps: int | None = None) -> RewriteSystem:
    """Interreduce ``relations`` (each ``= 0``) into a rewriting system.

    Equivalent to reduced row echelon form on word coordinates with columns in
    descending graded-lex order: each surviving relation is solved for its
    largest word.  Cross-block commutation relations of ``gens`` are added.
    """
    rels = [r for r in relations]
    if with_commutation:
        n = len(gens)
        for i, j in product(range(n), range(n)):
            if i < j and gens.commute(i, j):
                rels.append(NCPoly({(j, i): ONE, (i, j): -ONE}, gens))
    rules: dict = {}
    for rel in rels:
        if rel.gens != gens:
            raise ValueError("relation over a different generator set")
        row = dict(rel.terms)
        # reduce by existing pivots (RHS are pivot-free)
        for w in [w for w in row if w in rules]:
            c = row.pop(w)
            for v, d in rules[w].items():
                _acc(row, v, c * d)
        if not row:
            continue
        lead = max(row, key=_key)
        if len(lead) != 2:
            raise OrientationError(
                f"relation {rel} has leading word {gens.word_str(lead)} of length {len(lead)}")
        inv = row.pop(lead).inverse()
        new_rhs = {v: -c * inv for v, c in row.items()}
        for w, rhs in rules.items():
            if lead in rhs:
                c = rhs.pop(lead)
                for v, d in new_rhs.items():
                    _acc(rhs, v, c * d)
        rules[lead] = new_rhs
    return RewriteSystem(gens, {w: NCPoly(r, gens) for w, r in rules.items()}, max_steps=max_steps)


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.reduce(p)


def confluence_check(rs: RewriteSystem):
    rs.check_confluence()
    return rs.status, rs.failures


def star(p: NCPoly, gens: GeneratorSet | None = None, ctx=None) -> NCPoly:
    """Anti-linear anti-automorphism: reverse words, apply the involution,
    conjugate coefficients."""
    gens = gens or p.gens
    sigma = gens.involution
    return NCPoly(
        {tuple(sigma[i] for i in reversed(w)): c.conjugate(ctx) for w, c in p.terms.items()},
        gens,
    )
