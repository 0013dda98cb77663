"""Exact arithmetic in finitely presented graded-commutative rings.

A ring presentation consists of a coefficient domain (GF(2), GF(p) for an
odd prime p, or the integers), an ordered list of generators with positive
degrees, at most one *power-relation* per generator, and optional degree
truncations.  A power-relation rewrites a pure power ``g^e`` into a
polynomial in earlier-declared generators and lower powers of ``g``; this
covers truncated polynomial rings, fiberwise projective-space extensions
(``t^(m+1) = w1*t^m + ...``) and fiberwise sphere extensions
(``s^2 = c*s + r``), and gives a terminating, confluent rewriting system
without any Groebner machinery.

Elements are sparse maps from exponent tuples to nonzero coefficients.
The monomials in normal form (every exponent strictly below its relation
bound, no truncated monomial) are a free basis over the coefficients, so
``==`` and ``is_zero`` are exact decision procedures.

Over GF(p) with p odd and over the integers every generator degree must be
even; the ring is then honestly commutative and no sign bookkeeping ever
arises.  Presentations are immutable after construction and all operations
are pure, so values can be shared freely across threads.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .binom import is_prime
from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    DuplicateGenerator,
    InhomogeneousRelation,
    MalformedReplacement,
    MixedRings,
    NonPrimeModulus,
    OddDegreeOverOddP,
    ProblemSyntaxError,
    UnknownGenerator,
)

_NAME_RE = re.compile(r"[A-Za-z_]\w*\Z")


# ---------------------------------------------------------------------------
# coefficient domains


class CoefficientDomain:
    """GF(2), GF(p) for an odd prime p, or the integers."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind not in ("F2", "Fp", "Z"):
            raise ValueError(f"unknown coefficient domain kind {kind!r}")
        if kind == "F2":
            p = 2
        if kind == "Fp":
            if p is None or not is_prime(p):
                raise NonPrimeModulus(f"{p} is not prime")
            if p == 2:
                kind, p = "F2", 2
        if kind == "Z":
            p = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *_):
        raise AttributeError("CoefficientDomain is immutable")

    @staticmethod
    def f2() -> "CoefficientDomain":
        return CoefficientDomain("F2")

    @staticmethod
    def fp(p: int) -> "CoefficientDomain":
        return CoefficientDomain("Fp", p)

    @staticmethod
    def integers() -> "CoefficientDomain":
        return CoefficientDomain("Z")

    @property
    def even_degrees_only(self) -> bool:
        return self.kind != "F2"

    def reduce(self, c: int) -> int:
        if self.kind == "Z":
            return c
        return c % self.p

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientDomain)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "F2":
            return "F2"
        return f"F{self.p}"


F2 = CoefficientDomain.f2()
ZZ = CoefficientDomain.integers()


# ---------------------------------------------------------------------------
# presentations


class PowerRelation:
    """One rewriting rule ``g^e -> replacement``.

    The replacement involves only generators declared no later than ``g``,
    with the exponent of ``g`` itself strictly below ``e`` in every
    monomial, and is stored in normal form.
    """

    __slots__ = ("gen_index", "exponent", "items")

    def __init__(self, gen_index: int, exponent: int, items: tuple):
        object.__setattr__(self, "gen_index", gen_index)
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "items", items)  # tuple of (exps, coeff)

    def __setattr__(self, *_):
        raise AttributeError("PowerRelation is immutable")

    def key(self):
        return (self.gen_index, self.exponent, self.items)


class GradedRingPresentation:
    """Immutable presentation; construct through :func:`make_ring`."""

    __slots__ = (
        "coeffs",
        "gen_names",
        "gen_degrees",
        "relations",
        "truncations",
        "top_degree",
        "_index",
        "_hash",
    )

    def __init__(self, coeffs, gen_names, gen_degrees, relations, truncations, top_degree):
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "gen_names", gen_names)
        object.__setattr__(self, "gen_degrees", gen_degrees)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "truncations", truncations)
        object.__setattr__(self, "top_degree", top_degree)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(gen_names)})
        key = (
            coeffs,
            gen_names,
            gen_degrees,
            tuple(r.key() if r else None for r in relations),
            truncations,
        )
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, *_):
        raise AttributeError("ring presentations are immutable")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GradedRingPresentation):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.coeffs == other.coeffs
            and self.gen_names == other.gen_names
            and self.gen_degrees == other.gen_degrees
            and self.truncations == other.truncations
            and tuple(r.key() if r else None for r in self.relations)
            == tuple(r.key() if r else None for r in other.relations)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        gens = ", ".join(
            f"{n}:{d}" for n, d in zip(self.gen_names, self.gen_degrees)
        )
        rels = ", ".join(
            f"{self.gen_names[r.gen_index]}^{r.exponent}"
            for r in self.relations
            if r is not None
        )
        parts = [f"{self.coeffs}[{gens}]"]
        if rels:
            parts.append(f"rels({rels})")
        if self.truncations:
            parts.append(f"trunc{self.truncations}")
        return "<ring " + " ".join(parts) + ">"

    # -- basic queries -----------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def monomial_degree(self, exps) -> int:
        degs = self.gen_degrees
        return sum(e * degs[i] for i, e in enumerate(exps) if e)

    def _truncated(self, exps) -> bool:
        for plen, bound in self.truncations:
            degs = self.gen_degrees
            if sum(exps[i] * degs[i] for i in range(plen) if exps[i]) > bound:
                return True
        return False

    # -- element constructors ----------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.const(1)

    def const(self, c: int) -> "RingElement":
        c = self.coeffs.reduce(c)
        if c == 0:
            return RingElement(self, {})
        z = (0,) * self.ngens
        if self._truncated(z):
            return RingElement(self, {})
        return RingElement(self, {z: c})

    def gen(self, name: str) -> "RingElement":
        i = self.gen_index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.ngens))
        return RingElement(self, _normalize_terms(self, {exps: 1}))

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.gen_names)

    def element(self, raw_terms: dict) -> "RingElement":
        """Element from a raw {exponent tuple: int} map (normalized here)."""
        n = self.ngens
        for exps in raw_terms:
            if len(exps) != n or any(e < 0 for e in exps):
                raise MalformedReplacement(f"bad exponent tuple {exps!r}")
        return RingElement(self, _normalize_terms(self, raw_terms))

    def parse(self, text: str) -> "RingElement":
        return RingElement(self, _normalize_terms(self, _parse_raw(text, self)))

    # -- finite enumeration --------------------------------------------------

    def _exponent_caps(self):
        """Per-generator exponent cap in normal form, None when unbounded."""
        caps = []
        for i in range(self.ngens):
            cap = None
            rel = self.relations[i]
            if rel is not None:
                cap = rel.exponent - 1
            d = self.gen_degrees[i]
            for plen, bound in self.truncations:
                if i < plen:
                    tcap = bound // d
                    cap = tcap if cap is None else min(cap, tcap)
            caps.append(cap)
        return caps

    def is_finite(self) -> bool:
        return all(c is not None for c in self._exponent_caps())

    def basis_monomials(self) -> Iterable[tuple]:
        """All normal-form monomials; the ring must be finite."""
        caps = self._exponent_caps()
        if any(c is None for c in caps):
            raise DimensionMismatch("ring has infinitely many basis monomials")
        n = self.ngens

        def rec(i, prefix):
            if i == n:
                yield tuple(prefix)
                return
            for e in range(caps[i] + 1):
                prefix.append(e)
                if not self._truncated(tuple(prefix) + (0,) * (n - i - 1)):
                    yield from rec(i + 1, prefix)
                prefix.pop()

        yield from rec(0, [])

    def max_degree_monomial(self) -> tuple:
        """Lexicographically-first monomial of maximal degree."""
        best_deg, best = -1, None
        for m in self.basis_monomials():
            d = self.monomial_degree(m)
            if d > best_deg or (d == best_deg and m < best):
                best_deg, best = d, m
        return best

    def max_nonzero_degree(self) -> int:
        return self.monomial_degree(self.max_degree_monomial())


# ---------------------------------------------------------------------------
# normalization


def _normalize_terms(ring, raw, priority=None):
    """Rewrite to normal form and truncate.

    ``priority`` overrides the reduction order (a permutation of generator
    indices, highest priority first); the default reduces the last-declared
    generator first.  Used by confluence tests; results agree by design.
    """
    reduce_c = ring.coeffs.reduce
    rels = ring.relations
    truncs = ring.truncations
    degs = ring.gen_degrees
    if priority is None:
        priority = range(ring.ngens - 1, -1, -1)
    order = tuple(priority)
    out = {}
    stack = list(raw.items())
    while stack:
        exps, c = stack.pop()
        c = reduce_c(c)
        if c == 0:
            continue
        dead = False
        for plen, bound in truncs:
            if sum(exps[i] * degs[i] for i in range(plen) if exps[i]) > bound:
                dead = True
                break
        if dead:
            continue
        for i in order:
            rel = rels[i]
            if rel is not None and exps[i] >= rel.exponent:
                base = list(exps)
                base[i] -= rel.exponent
                for rexps, rc in rel.items:
                    stack.append(
                        (tuple(b + r for b, r in zip(base, rexps)), c * rc)
                    )
                break
        else:
            nc = reduce_c(out.get(exps, 0) + c)
            if nc:
                out[exps] = nc
            elif exps in out:
                del out[exps]
    return out


def _raw_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for exps, c in b.items():
        nc = out.get(exps, 0) + c
        if nc:
            out[exps] = nc
        elif exps in out:
            del out[exps]
    return out


def _raw_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            nc = out.get(exps, 0) + ca * cb
            if nc:
                out[exps] = nc
            elif exps in out:
                del out[exps]
    return out


def _raw_scale(a: dict, c: int) -> dict:
    if c == 0:
        return {}
    return {exps: cc * c for exps, cc in a.items()}


# ---------------------------------------------------------------------------
# elements


class RingElement:
    """A normal-form element of a presented ring.

    Value-semantic and immutable; supports +, -, *, ** and mixed arithmetic
    with plain integers (coerced through the coefficient domain).
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GradedRingPresentation, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("ring elements are immutable")

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def terms(self):
        """Normal-form (exponent tuple, coefficient) pairs, canonical order."""
        ring = self.ring
        return tuple(
            sorted(
                self._terms.items(),
                key=lambda t: (ring.monomial_degree(t[0]), t[0]),
            )
        )

    def degree(self):
        """Maximal degree among monomials; None for the zero element."""
        if not self._terms:
            return None
        return max(self.ring.monomial_degree(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(e) for e in self._terms}
        return len(degs) <= 1

    def component(self, degree: int) -> "RingElement":
        md = self.ring.monomial_degree
        return RingElement(
            self.ring,
            {e: c for e, c in self._terms.items() if md(e) == degree},
        )

    def support_degrees(self) -> tuple:
        md = self.ring.monomial_degree
        return tuple(sorted({md(e) for e in self._terms}))

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings("elements belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        raw = _raw_add(self._terms, other._terms)
        return RingElement(self.ring, _normalize_terms(self.ring, raw))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(
            self.ring,
            _normalize_terms(self.ring, _raw_scale(self._terms, -1)),
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(
                self.ring,
                _normalize_terms(self.ring, _raw_scale(self._terms, other)),
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        raw = _raw_mul(self._terms, other._terms)
        return RingElement(self.ring, _normalize_terms(self.ring, raw))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.ring, frozenset(self._terms.items())))
            )
        return self._hash

    # -- movement between rings -----------------------------------------------

    def lift_to(self, ring: GradedRingPresentation) -> "RingElement":
        """Re-express in an extension ring whose generators start with ours."""
        if ring is self.ring or ring == self.ring:
            return RingElement(ring, dict(self._terms))
        k = self.ring.ngens
        if (
            ring.ngens < k
            or ring.gen_names[:k] != self.ring.gen_names
            or ring.gen_degrees[:k] != self.ring.gen_degrees
            or ring.coeffs != self.ring.coeffs
        ):
            raise MixedRings("target ring does not extend the owner ring")
        for i in range(k):
            mine, theirs = self.ring.relations[i], ring.relations[i]
            mk = mine.key() if mine else None
            tk = (
                (theirs.gen_index, theirs.exponent,
                 tuple((e[:k], c) for e, c in theirs.items))
                if theirs
                else None
            )
            if mk != tk:
                raise MixedRings("target ring changes a relation of the owner ring")
        if any(t not in ring.truncations for t in self.ring.truncations):
            raise MixedRings("target ring drops a truncation of the owner ring")
        pad = (0,) * (ring.ngens - k)
        return RingElement(ring, {e + pad: c for e, c in self._terms.items()})

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.ring.gen_names
        parts = []
        for exps, c in self.terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# expression parsing


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*^()])"
)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ProblemSyntaxError(
                f"unexpected character {text[pos]!r} in expression", column=pos + 1
            )
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        kind = m.lastgroup
        val = m.group()
        out.append((kind, "^" if val == "**" else val, m.start()))
    out.append(("end", "", len(text)))
    return out


def _parse_raw(text: str, ring: GradedRingPresentation) -> dict:
    """Parse an expression into raw terms (exact integer coefficients)."""
    tokens = _tokenize(text)
    pos = [0]
    n = ring.ngens
    one = ((0,) * n, 1)

    def peek():
        return tokens[pos[0]]

    def take(expect=None):
        kind, val, col = tokens[pos[0]]
        if expect is not None and val != expect:
            raise ProblemSyntaxError(
                f"expected {expect!r} in expression", column=col + 1
            )
        pos[0] += 1
        return kind, val, col

    def atom():
        kind, val, col = peek()
        if kind == "int":
            take()
            return {one[0]: int(val)} if int(val) else {}
        if kind == "name":
            take()
            try:
                i = ring.gen_index(val)
            except UnknownGenerator:
                raise UnknownGenerator(
                    f"unknown generator {val!r} (column {col + 1})"
                ) from None
            exps = tuple(1 if j == i else 0 for j in range(n))
            return {exps: 1}
        if val == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise ProblemSyntaxError("expected a term in expression", column=col + 1)

    def factor():
        base = atom()
        kind, val, col = peek()
        if val == "^":
            take()
            kind, val, col = take()
            if kind != "int":
                raise ProblemSyntaxError(
                    "exponent must be a literal integer", column=col + 1
                )
            k = int(val)
            out = {one[0]: 1}
            for _ in range(k):
                out = _raw_mul(out, base)
            return out
        return base

    def unary():
        kind, val, col = peek()
        if val == "-":
            take()
            return _raw_scale(unary(), -1)
        if val == "+":
            take()
            return unary()
        return factor()

    def term():
        out = unary()
        while peek()[1] == "*":
            take()
            out = _raw_mul(out, unary())
        return out

    def expr():
        out = term()
        while peek()[1] in ("+", "-"):
            _, val, _ = take()
            nxt = term()
            out = _raw_add(out, nxt if val == "+" else _raw_scale(nxt, -1))
        return out

    out = expr()
    kind, val, col = peek()
    if kind != "end":
        raise ProblemSyntaxError(
            f"trailing input {val!r} in expression", column=col + 1
        )
    return out


# ---------------------------------------------------------------------------
# public construction API


def normalize(raw, ring: GradedRingPresentation) -> RingElement:
    """Canonical normal form of an expression in the given ring.

    Accepts an expression string, a plain integer, a raw term map, or an
    element of the same ring.  Relations are applied to a fixpoint (the
    last-declared generator reduced first) and truncated monomials dropped.
    """
    if isinstance(raw, RingElement):
        if raw.ring is not ring and raw.ring != ring:
            raise MixedRings("element belongs to a different ring")
        return RingElement(ring, _normalize_terms(ring, dict(raw._terms)))
    if isinstance(raw, int):
        return ring.const(raw)
    if isinstance(raw, dict):
        return ring.element(raw)
    if isinstance(raw, str):
        return ring.parse(raw)
    raise TypeError(f"cannot normalize {type(raw).__name__}")


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def power(a: RingElement, k: int) -> RingElement:
    return a ** k


def is_zero(a: RingElement) -> bool:
    return a.is_zero()


def component(a: RingElement, degree: int) -> RingElement:
    return a.component(degree)


def _check_name(name):
    if not _NAME_RE.match(name or ""):
        raise DuplicateGenerator(f"invalid generator name {name!r}")


_REL_LHS_RE = re.compile(r"\s*([A-Za-z_]\w*)\s*(?:\^\s*(\d+))?\s*\Z")


def make_ring(
    coeffs: CoefficientDomain,
    generators: Iterable,
    relations: Iterable = (),
    top_degree: int | None = None,
) -> GradedRingPresentation:
    """Validate and build a presentation.

    ``generators``: iterable of (name, degree) in declaration order.
    ``relations``: each either a string ``"g^e = expr"`` or a tuple
    ``(name, exponent, replacement)`` with the replacement an expression
    string, an integer, or a raw term map over all generators.
    ``top_degree``: optional truncation (all components above it vanish).
    """
    gen_names, gen_degrees = [], []
    for name, deg in generators:
        _check_name(name)
        if name in gen_names:
            raise DuplicateGenerator(f"generator {name!r} declared twice")
        if not isinstance(deg, int) or deg <= 0:
            raise DegreeMismatch(f"generator {name!r} needs a positive degree")
        if coeffs.even_degrees_only and deg % 2:
            raise OddDegreeOverOddP(
                f"generator {name!r} has odd degree {deg} over {coeffs}"
            )
        gen_names.append(name)
        gen_degrees.append(deg)
    gen_names = tuple(gen_names)
    gen_degrees = tuple(gen_degrees)
    if top_degree is not None and (not isinstance(top_degree, int) or top_degree < 0):
        raise DegreeMismatch("top_degree must be a non-negative integer")
    truncations = ((len(gen_names), top_degree),) if top_degree is not None else ()

    # stage a relation-free ring for parsing replacements
    ring = GradedRingPresentation(
        coeffs,
        gen_names,
        gen_degrees,
        tuple([None] * len(gen_names)),
        truncations,
        top_degree,
    )

    parsed = []
    for rel in relations:
        if isinstance(rel, str):
            if "=" not in rel:
                raise MalformedReplacement(f"relation {rel!r} lacks '='")
            lhs, rhs = rel.split("=", 1)
            m = _REL_LHS_RE.match(lhs)
            if m is None:
                raise MalformedReplacement(
                    f"relation left side {lhs.strip()!r} must be a pure power"
                )
            name, e = m.group(1), int(m.group(2) or 1)
            replacement = rhs
        else:
            name, e, replacement = rel
        idx = ring.gen_index(name)
        if not isinstance(e, int) or e < 1:
            raise MalformedReplacement(f"relation exponent for {name!r} must be >= 1")
        if isinstance(replacement, str):
            raw = _parse_raw(replacement, ring)
        elif isinstance(replacement, int):
            raw = {(0,) * len(gen_names): replacement} if replacement else {}
        elif isinstance(replacement, dict):
            raw = dict(replacement)
        else:
            raise MalformedReplacement(
                f"unsupported replacement of type {type(replacement).__name__}"
            )
        parsed.append((idx, e, raw))

    seen = set()
    for idx, _, _ in parsed:
        if idx in seen:
            raise MalformedReplacement(
                f"generator {gen_names[idx]!r} leads two relations"
            )
        seen.add(idx)

    # attach in declaration order so each replacement is normalized against
    # the relations on earlier generators only
    rel_slots = [None] * len(gen_names)
    for idx, e, raw in sorted(parsed, key=lambda t: t[0]):
        target_deg = e * gen_degrees[idx]
        for exps, c in raw.items():
            if len(exps) != len(gen_names) or any(x < 0 for x in exps):
                raise MalformedReplacement(f"bad exponent tuple {exps!r}")
            if coeffs.reduce(c) == 0:
                continue
            if any(exps[j] for j in range(idx + 1, len(gen_names))):
                raise MalformedReplacement(
                    f"replacement of {gen_names[idx]}^{e} uses a later generator"
                )
            if exps[idx] >= e:
                raise MalformedReplacement(
                    f"replacement of {gen_names[idx]}^{e} is not power-reduced"
                )
            if ring.monomial_degree(exps) != target_deg:
                raise InhomogeneousRelation(
                    f"relation on {gen_names[idx]!r}: monomial of degree "
                    f"{ring.monomial_degree(exps)} vs {target_deg}"
                )
        staged = GradedRingPresentation(
            coeffs, gen_names, gen_degrees, tuple(rel_slots), truncations, top_degree
        )
        norm = _normalize_terms(staged, raw)
        rel_slots[idx] = PowerRelation(idx, e, tuple(sorted(norm.items())))

    return GradedRingPresentation(
        coeffs, gen_names, gen_degrees, tuple(rel_slots), truncations, top_degree
    )


# ---------------------------------------------------------------------------
# extensions


def _extended(base, new_name, new_degree, new_exponent, raw_replacement):
    _check_name(new_name)
    if new_name in base.gen_names:
        raise DuplicateGenerator(f"generator {new_name!r} already declared")
    if base.coeffs.even_degrees_only and new_degree % 2:
        raise OddDegreeOverOddP(
            f"generator {new_name!r} has odd degree {new_degree} over {base.coeffs}"
        )
    gen_names = base.gen_names + (new_name,)
    gen_degrees = base.gen_degrees + (new_degree,)
    idx = len(base.gen_names)
    target_deg = new_exponent * new_degree
    padded_rels = []
    for r in base.relations:
        if r is None:
            padded_rels.append(None)
        else:
            padded_rels.append(
                PowerRelation(
                    r.gen_index,
                    r.exponent,
                    tuple((e + (0,), c) for e, c in r.items),
                )
            )
    staged = GradedRingPresentation(
        base.coeffs, gen_names, gen_degrees,
        tuple(padded_rels) + (None,), base.truncations, None,
    )
    for exps, c in raw_replacement.items():
        if base.coeffs.reduce(c) == 0:
            continue
        if exps[idx] >= new_exponent:
            raise MalformedReplacement(
                f"replacement of {new_name}^{new_exponent} is not power-reduced"
            )
        if staged.monomial_degree(exps) != target_deg:
            raise InhomogeneousRelation(
                f"relation on {new_name!r}: monomial of degree "
                f"{staged.monomial_degree(exps)} vs {target_deg}"
            )
    norm = _normalize_terms(staged, raw_replacement)
    rel = PowerRelation(idx, new_exponent, tuple(sorted(norm.items())))
    return GradedRingPresentation(
        base.coeffs, gen_names, gen_degrees,
        tuple(padded_rels) + (rel,), base.truncations, None,
    )


def extend_projective(
    base: GradedRingPresentation,
    fiber_classes: Sequence[RingElement],
    name: str = "t",
    t_degree: int = 1,
) -> GradedRingPresentation:
    """Adjoin the fiberwise projective-space generator.

    ``fiber_classes`` are the classes [w1, ..., w_{m+1}] of the bundle being
    projectivized (entries of the base ring, or integers); the new generator
    ``t`` of degree ``t_degree`` satisfies
    ``t^(m+1) = -(w1*t^m + ... + w_{m+1})``, signs trivial over GF(2).
    The result is a free module over the base on 1, t, ..., t^m; degree
    truncations of the base keep applying to the base part of each monomial
    only, never to the fiber generator.
    """
    classes = list(fiber_classes)
    if not classes:
        raise DimensionMismatch("projective extension needs dimension >= 1")
    mp1 = len(classes)
    raw = {}
    for i, w in enumerate(classes, start=1):
        if isinstance(w, int):
            w = base.const(w)
        if w.ring is not base and w.ring != base:
            raise MixedRings("fiber class belongs to a different ring")
        if not w.is_zero() and (not w.is_homogeneous() or w.degree() != i * t_degree):
            raise InhomogeneousRelation(
                f"class {i} must be homogeneous of degree {i * t_degree}"
            )
        for exps, c in w._terms.items():
            key = exps + (mp1 - i,)
            raw[key] = raw.get(key, 0) - c
    return _extended(base, name, t_degree, mp1, raw)


def extend_sphere(
    base: GradedRingPresentation,
    zeta_top: RingElement,
    s_class: RingElement | int,
    degree: int,
    name: str,
) -> GradedRingPresentation:
    """Adjoin a fiberwise sphere generator ``s`` of the given degree.

    The new generator satisfies ``s^2 = zeta_top * s + s_class`` with
    ``zeta_top`` homogeneous of that degree and ``s_class`` homogeneous of
    twice that degree; the caller is responsible for having checked that the
    relevant euler class vanishes.  The result is a free module over the
    base on {1, s}.
    """
    if isinstance(zeta_top, int):
        zeta_top = base.const(zeta_top)
    if isinstance(s_class, int):
        s_class = base.const(s_class)
    for x, d, what in ((zeta_top, degree, "relation coefficient"),
                       (s_class, 2 * degree, "constant term")):
        if x.ring is not base and x.ring != base:
            raise MixedRings(f"{what} belongs to a different ring")
        if not x.is_zero() and (not x.is_homogeneous() or x.degree() != d):
            raise InhomogeneousRelation(
                f"{what} must be homogeneous of degree {d}"
            )
    raw = {}
    for exps, c in zeta_top._terms.items():
        raw[exps + (1,)] = c
    for exps, c in s_class._terms.items():
        key = exps + (0,)
        raw[key] = raw.get(key, 0) + c
    return _extended(base, name, degree, 2, raw)
