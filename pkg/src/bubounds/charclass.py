"""Characteristic-class calculus over presented cohomology rings.

A :class:`ClassList` is the total class of a bundle: entries
``[1, w1, ..., wn]`` with ``w_i`` homogeneous of degree ``i`` (real mode)
or ``2i`` (complex mode, where the entries play the role of chern classes).
The list need not come from an actual vector bundle; any formal graded list
is accepted, which is what the spherical-fibration generalization needs.

A :class:`TPoly` is a polynomial in an adjoined variable T with ring-element
coefficients, T carrying degree 1 (real) or 2 (complex).  Every polynomial
handled here is homogeneous once T's degree is counted, and divisors are
monic, so division never leaves the coefficient ring.
"""

from __future__ import annotations

from .binom import binom_exact, binom_mod_p
from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    MixedRings,
    NonMonicDivisor,
)
from .f2ring import GradedRingPresentation, RingElement, extend_projective


def _t_degree(mode: str) -> int:
    if mode == "real":
        return 1
    if mode == "complex":
        return 2
    raise ValueError(f"mode must be 'real' or 'complex', got {mode!r}")


def _coerce(ring, x):
    if isinstance(x, int):
        return ring.const(x)
    if not isinstance(x, RingElement):
        raise TypeError(f"expected a ring element, got {type(x).__name__}")
    if x.ring is not ring and x.ring != ring:
        raise MixedRings("element belongs to a different ring")
    return x


def _binom_in(ring, n: int, k: int) -> int:
    # reduced binomial coefficient, exact over Z
    if ring.coeffs.kind == "Z":
        return binom_exact(n, k)
    return binom_mod_p(n, k, ring.coeffs.p)


class ClassList:
    """Total characteristic class of an n-dimensional bundle (or a formal
    graded list standing in for one)."""

    __slots__ = ("ring", "dimension", "classes", "mode")

    def __init__(self, ring, classes, mode="real", _checked=False):
        """``classes`` lists [w1, ..., wn]; the unit w0 is implicit."""
        t_deg = _t_degree(mode)
        full = [ring.one()]
        for i, w in enumerate(classes, start=1):
            w = _coerce(ring, w)
            if not w.is_zero() and (
                not w.is_homogeneous() or w.degree() != i * t_deg
            ):
                raise DegreeMismatch(
                    f"class {i} must be homogeneous of degree {i * t_deg}"
                )
            full.append(w)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "dimension", len(full) - 1)
        object.__setattr__(self, "classes", tuple(full))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *_):
        raise AttributeError("ClassList is immutable")

    @staticmethod
    def trivial(ring, dimension: int, mode: str = "real") -> "ClassList":
        return ClassList(ring, [ring.zero()] * dimension, mode)

    @property
    def t_degree(self) -> int:
        return _t_degree(self.mode)

    @property
    def top(self) -> RingElement:
        return self.classes[self.dimension]

    def __getitem__(self, i: int) -> RingElement:
        if 0 <= i <= self.dimension:
            return self.classes[i]
        return self.ring.zero()

    def __eq__(self, other):
        return (
            isinstance(other, ClassList)
            and self.mode == other.mode
            and self.classes == other.classes
        )

    def __repr__(self):
        return f"<classes dim {self.dimension} [{', '.join(map(str, self.classes))}]>"

    def lift_to(self, ring) -> "ClassList":
        return ClassList(
            ring, [w.lift_to(ring) for w in self.classes[1:]], self.mode
        )


def whitney_sum(a: ClassList, b: ClassList) -> ClassList:
    """Total class of a direct sum: graded convolution, dimensions add."""
    if a.ring is not b.ring and a.ring != b.ring:
        raise MixedRings("class lists over different rings")
    if a.mode != b.mode:
        raise MixedRings("class lists in different modes")
    n = a.dimension + b.dimension
    out = []
    for k in range(1, n + 1):
        acc = a.ring.zero()
        for i in range(k + 1):
            ai, bj = a[i], b[k - i]
            if ai.is_zero() or bj.is_zero():
                continue
            acc = acc + ai * bj
        out.append(acc)
    return ClassList(a.ring, out, a.mode)


def whitney_inverse(a: ClassList, out_dim: int) -> ClassList:
    """First ``out_dim`` terms of the multiplicative inverse of the total
    class; the convolution of the two is 1 through that degree."""
    inv = [a.ring.one()]
    for k in range(1, out_dim + 1):
        acc = a.ring.zero()
        for i in range(1, k + 1):
            ai = a[i]
            if ai.is_zero() or inv[k - i].is_zero():
                continue
            acc = acc + ai * inv[k - i]
        inv.append(-acc)
    return ClassList(a.ring, inv[1:], a.mode)


# ---------------------------------------------------------------------------
# polynomials in an adjoined variable


class TPoly:
    """Polynomial in T with ring-element coefficients, leading term first.

    T carries ``t_degree`` (1 real, 2 complex); a nonzero TPoly must be
    homogeneous counting that weight, inhomogeneous input is rejected.
    """

    __slots__ = ("ring", "coeffs", "t_degree", "total_degree")

    def __init__(self, ring, coeffs, t_degree=1):
        coeffs = [_coerce(ring, c) for c in coeffs]
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
        total = None
        top = len(coeffs) - 1
        for i, c in enumerate(coeffs):
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                raise DegreeMismatch(f"coefficient of T^{top - i} is inhomogeneous")
            d = c.degree() + (top - i) * t_degree
            if total is None:
                total = d
            elif d != total:
                raise DegreeMismatch(
                    f"coefficient of T^{top - i} breaks homogeneity "
                    f"({d} vs {total})"
                )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "t_degree", t_degree)
        object.__setattr__(self, "total_degree", total)

    def __setattr__(self, *_):
        raise AttributeError("TPoly is immutable")

    @property
    def degree_t(self) -> int:
        """Degree in T; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] == self.ring.one()

    def coefficient(self, i: int) -> RingElement:
        """Coefficient of T^i."""
        top = self.degree_t
        if 0 <= i <= top:
            return self.coeffs[top - i]
        return self.ring.zero()

    def __eq__(self, other):
        return (
            isinstance(other, TPoly)
            and self.t_degree == other.t_degree
            and self.coeffs == other.coeffs
            and (self.ring is other.ring or self.ring == other.ring)
        )

    def lift_to(self, ring) -> "TPoly":
        return TPoly(ring, [c.lift_to(ring) for c in self.coeffs], self.t_degree)

    def __add__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        if self.t_degree != other.t_degree:
            raise DegreeMismatch("polynomials weight T differently")
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coefficient(n - 1 - i)
            b = other.coefficient(n - 1 - i)
            out.append(a + b)
        return TPoly(self.ring, out, self.t_degree)

    def __mul__(self, other):
        if isinstance(other, (int, RingElement)):
            c = _coerce(self.ring, other)
            return TPoly(self.ring, [c * x for x in self.coeffs], self.t_degree)
        if not isinstance(other, TPoly):
            return NotImplemented
        if self.t_degree != other.t_degree:
            raise DegreeMismatch("polynomials weight T differently")
        if self.is_zero() or other.is_zero():
            return TPoly(self.ring, [], self.t_degree)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return TPoly(self.ring, out, self.t_degree)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (other * -1)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        top = self.degree_t
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            p = top - i
            tpart = "" if p == 0 else ("T" if p == 1 else f"T^{p}")
            if c == self.ring.one() and tpart:
                parts.append(tpart)
            else:
                parts.append(f"({c})" + ("*" + tpart if tpart else ""))
        return " + ".join(parts)


def char_poly(xi: ClassList) -> TPoly:
    """Monic polynomial T^n + w1*T^(n-1) + ... + wn of the class list."""
    return TPoly(xi.ring, list(xi.classes), xi.t_degree)


def poly_divmod(r: TPoly, q: TPoly) -> tuple:
    """Long division by a monic divisor: r = q*quot + rem, deg_T rem < deg_T q."""
    if r.t_degree != q.t_degree:
        raise DegreeMismatch("polynomials weight T differently")
    if not q.is_monic():
        raise NonMonicDivisor("divisor must be monic in T")
    ring = r.ring
    dq = q.degree_t
    rem = list(r.coeffs)
    quot = []
    while len(rem) - 1 >= dq:
        lead = rem[0]
        quot.append(lead)
        if not lead.is_zero():
            # subtract lead * T^(len(rem)-1-dq) * q
            for j in range(1, dq + 1):
                rem[j] = rem[j] - lead * q.coeffs[j]
        rem.pop(0)
    return (
        TPoly(ring, quot, r.t_degree),
        TPoly(ring, rem, r.t_degree),
    )


def divides(q: TPoly, r: TPoly) -> bool:
    """True when q divides r exactly (q monic)."""
    _, rem = poly_divmod(r, q)
    return rem.is_zero()


def poly_derivative(q: TPoly) -> TPoly:
    """Formal T-derivative, exponents reduced into the coefficient domain."""
    top = q.degree_t
    out = []
    for i, c in enumerate(q.coeffs[:-1] if q.coeffs else []):
        out.append(c * (top - i))
    return TPoly(q.ring, out, q.t_degree)


def tpoly_eval(q: TPoly, at: RingElement) -> RingElement:
    """Horner evaluation of q at a class of T's degree."""
    at = _coerce(q.ring, at)
    if not at.is_zero() and (
        not at.is_homogeneous() or at.degree() != q.t_degree
    ):
        raise DegreeMismatch(
            f"evaluation point must be homogeneous of degree {q.t_degree}"
        )
    acc = q.ring.zero()
    for c in q.coeffs:
        acc = acc * at + c
    return acc


# ---------------------------------------------------------------------------
# tensor with a line bundle


def tensor_line_classes(xi: ClassList, e: RingElement) -> ClassList:
    """Classes of (line tensor xi): substitute T -> T + e into the class
    polynomial and read off coefficients.  In complex mode this computes the
    classes of (dual line tensor xi), i.e. the substitution T -> T - e, so
    the top entry carries the alternating signs."""
    ring = xi.ring
    e = _coerce(ring, e)
    t_deg = xi.t_degree
    if not e.is_zero() and (not e.is_homogeneous() or e.degree() != t_deg):
        raise DegreeMismatch(
            f"line class must be homogeneous of degree {t_deg}"
        )
    sub = e if xi.mode == "real" else -e
    n = xi.dimension
    epow = [ring.one()]
    for _ in range(n):
        epow.append(epow[-1] * sub)
    out = []
    for k in range(1, n + 1):
        acc = ring.zero()
        for j in range(k + 1):
            wj = xi[j]
            if wj.is_zero():
                continue
            b = _binom_in(ring, n - j, k - j)
            if b == 0:
                continue
            acc = acc + wj * epow[k - j] * b
        out.append(acc)
    return ClassList(ring, out, xi.mode)


def tensor_line_euler(xi: ClassList, e: RingElement) -> RingElement:
    """Top class of the line tensor: sum of (+-e)^i * w_{n-i}."""
    ring = xi.ring
    e = _coerce(ring, e)
    t_deg = xi.t_degree
    if not e.is_zero() and (not e.is_homogeneous() or e.degree() != t_deg):
        raise DegreeMismatch(
            f"line class must be homogeneous of degree {t_deg}"
        )
    sub = e if xi.mode == "real" else -e
    acc = ring.zero()
    ep = ring.one()
    for i in range(xi.dimension + 1):
        w = xi[xi.dimension - i]
        if not w.is_zero():
            acc = acc + ep * w
        if i < xi.dimension:
            ep = ep * sub
    return acc


def projective_extension(eta: ClassList, name: str = "t") -> GradedRingPresentation:
    """Ring of the projectivization of eta, free over the base on 1..t^m."""
    if eta.dimension < 1:
        raise DimensionMismatch("projectivization needs a bundle of dimension >= 1")
    return extend_projective(
        eta.ring, list(eta.classes[1:]), name=name, t_degree=eta.t_degree
    )
