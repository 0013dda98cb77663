"""Bound appliers and hypothesis checkers.

Each applier takes a scenario over a presented ring, verifies the theorem's
ring-level hypotheses by exact computation, and returns a
:class:`BoundReport`.  Hypothesis failures never raise: they are listed in
the report (with a witness) and the bound is withheld, because the theorems
are one-directional and a failed hypothesis proves nothing about the
coincidence set.  Structural misuse (wrong dimensions, k < n and the like)
does raise.

A certificate is an explicit nonzero ring element whose nonvanishing
instantiates the hypothesis and entitles the reported bound on the degree j
in which the coincidence set must have nonzero cohomology.  Certificates
computed in truncated model rings are labeled "formal" (the truncation is a
modeling device, so nonvanishing there is a consistency check, not a
proof); certificates in exact presentations are labeled "exact".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binom import binom_mod_p
from .charclass import (
    ClassList,
    TPoly,
    char_poly,
    divides,
    poly_derivative,
    poly_divmod,
    projective_extension,
    tensor_line_classes,
    tensor_line_euler,
    tpoly_eval,
)
from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    DimensionTooSmall,
    EmptyList,
    KLessThanN,
    MixedRings,
    NExceedsM,
    ParameterOutOfRange,
)
from .f2ring import GradedRingPresentation, RingElement, extend_sphere


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class Hypothesis:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class BoundReport:
    """Outcome record of one applier run.

    ``bound`` is set only when every hypothesis passed and the certificate
    is nonzero; otherwise the report documents which hypothesis failed and
    with what witness.
    """

    scenario: str
    mode: str
    theorem: str | None = None
    hypotheses: list = field(default_factory=list)
    certificate: object = None  # RingElement, or its canonical string
    certificate_degree: int | None = None
    certificate_label: str | None = None
    bound: int | None = None
    dims: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def all_passed(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    def failed(self) -> list:
        return [h for h in self.hypotheses if not h.passed]

    def to_structured(self) -> dict:
        return {
            "format_version": 1,
            "scenario": self.scenario,
            "mode": self.mode,
            "theorem": self.theorem,
            "hypotheses": [
                {"name": h.name, "passed": h.passed, "witness": h.witness}
                for h in self.hypotheses
            ],
            "certificate": None if self.certificate is None else str(self.certificate),
            "certificate_degree": self.certificate_degree,
            "certificate_label": self.certificate_label,
            "bound": self.bound,
            "dims": dict(sorted(self.dims.items())),
            "notes": list(self.notes),
        }

    @staticmethod
    def from_structured(doc: dict) -> "BoundReport":
        return BoundReport(
            scenario=doc["scenario"],
            mode=doc["mode"],
            theorem=doc.get("theorem"),
            hypotheses=[
                Hypothesis(h["name"], h["passed"], h.get("witness", ""))
                for h in doc.get("hypotheses", [])
            ],
            certificate=doc.get("certificate"),
            certificate_degree=doc.get("certificate_degree"),
            certificate_label=doc.get("certificate_label"),
            bound=doc.get("bound"),
            dims=dict(doc.get("dims", {})),
            notes=list(doc.get("notes", [])),
        )

    def __eq__(self, other):
        if not isinstance(other, BoundReport):
            return NotImplemented
        return self.to_structured() == other.to_structured()


@dataclass
class CheckResult:
    """Outcome of a structure checker; ``plan`` carries the data the main
    applier needs when the check passes."""

    name: str
    passed: bool
    witness: str = ""
    plan: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_structured(self) -> dict:
        return {
            "format_version": 1,
            "check": self.name,
            "passed": self.passed,
            "witness": self.witness,
            "plan": [dict(sorted(p.items())) for p in self.plan],
            "dims": dict(sorted(self.dims.items())),
            "notes": list(self.notes),
        }


def _label(ring) -> str:
    return "formal" if ring.truncations else "exact"


def _trace(trace, msg):
    if trace is not None:
        trace(msg)


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class StiefelScenario:
    """Data for the elementary bound: a ring modeling the total space,
    the top base class b (already pulled back), the line euler class, the
    power k, and the class list of the comparison bundle."""

    ring: GradedRingPresentation
    xi: ClassList
    k: int
    e_lambda: RingElement
    b: RingElement
    c: RingElement | None = None
    mode: str = "real"
    leray_hirsch: bool = False


@dataclass
class MainScenario:
    """Data for the fiberwise sphere-chain bound over a projectivization.

    ``zetas`` lists the sphere-bundle data along the chain; each entry is a
    ClassList over an already-built ring of the chain (base, projective
    extension, or an earlier sphere extension), or a callable that receives
    the current chain ring and returns such a ClassList.  ``s_classes``
    optionally gives the degree-2l constants of the sphere relations
    (default 0, recorded in the report notes).
    """

    base: GradedRingPresentation
    eta: ClassList
    xi: ClassList
    zetas: list = field(default_factory=list)
    b: RingElement | None = None
    s_classes: list | None = None
    mode: str = "real"


def stiefel_frames_main_scenario(
    base, eta: ClassList, xi: ClassList, r: int, b=None
) -> MainScenario:
    """Main scenario for the bundle of projective r+1-frames in eta.

    The chain consists of r sphere bundles over the projectivization whose
    classes all pull back from it: the i-th has dimension m+1-i with total
    class truncated from that of (hopf tensor eta).
    """
    m = eta.dimension - 1

    def zeta_at(i):
        def build(ring):
            t = ring.gen("t").lift_to(ring)
            full = tensor_line_classes(eta.lift_to(ring), t)
            return ClassList(
                ring, [full[j] for j in range(1, m + 2 - i)], eta.mode
            )

        return build

    return MainScenario(
        base=base,
        eta=eta,
        xi=xi,
        zetas=[zeta_at(i) for i in range(1, r + 1)],
        b=b,
        mode=eta.mode,
    )


def sphere_products_main_scenario(
    base, eta: ClassList, xi: ClassList, mus, b=None
) -> MainScenario:
    """Main scenario for a fiberwise product of sphere bundles of the
    (hopf tensor mu_i); mu_i are bundles over the base of dimension at
    least that of eta."""

    def zeta_of(mu):
        def build(ring):
            t = ring.gen("t").lift_to(ring)
            return tensor_line_classes(mu.lift_to(ring), t)

        return build

    return MainScenario(
        base=base,
        eta=eta,
        xi=xi,
        zetas=[zeta_of(mu) for mu in mus],
        b=b,
        mode=eta.mode,
    )


# ---------------------------------------------------------------------------
# elementary bound


def certificate_stiefel(inst: StiefelScenario, trace=None) -> BoundReport:
    """Certificate and bound for the elementary line-bundle condition.

    Verifies in the ring that b * w_{n-i}(xi) = 0 for i < n (so that the
    product identity a * e(tensor) = b * e^k holds), that the certificate
    a = b * e^(k-n) (or b * c) is nonzero, and that the governing class
    b * e^k (or b * c * e^n) is nonzero.  Reports bound d+k-n in real mode,
    1+d+2(k-n) in complex mode, with d the degree of b.
    """
    ring = inst.ring
    n = inst.xi.dimension
    k = inst.k
    mode = inst.mode
    t_deg = inst.xi.t_degree
    if (mode == "complex") != (t_deg == 2):
        raise DegreeMismatch("scenario mode disagrees with the class-list mode")
    if k < n:
        raise KLessThanN(f"k = {k} must be at least the bundle dimension n = {n}")
    if inst.xi.ring is not ring and inst.xi.ring != ring:
        raise MixedRings("class list lives in a different ring")
    e = inst.e_lambda
    if e.ring is not ring and e.ring != ring:
        raise MixedRings("line class lives in a different ring")
    if not e.is_zero() and (not e.is_homogeneous() or e.degree() != t_deg):
        raise DegreeMismatch(f"line class must be homogeneous of degree {t_deg}")
    b = inst.b
    if b.ring is not ring and b.ring != ring:
        raise MixedRings("class b lives in a different ring")
    if not b.is_homogeneous():
        raise DegreeMismatch("class b must be homogeneous")

    report = BoundReport(
        scenario="stiefel",
        mode=mode,
        theorem=f"stiefel-{mode}",
    )
    if inst.leray_hirsch:
        report.notes.append(
            "user asserts homological triviality (leray-hirsch); not computed"
        )
    if mode == "complex":
        report.notes.append(
            "complex mode: classes are those of (dual line) tensor xi"
        )

    d = b.degree()
    if d is None:
        report.hypotheses.append(
            Hypothesis("CertificateZero", False, "class b is zero")
        )
        return report
    report.dims.update({"d": d, "n": n, "k": k})

    if inst.c is not None:
        c = inst.c
        if c.ring is not ring and c.ring != ring:
            raise MixedRings("class c lives in a different ring")
        want = (k - n) * t_deg
        if not c.is_zero() and (not c.is_homogeneous() or c.degree() != want):
            raise DegreeMismatch(
                f"class c must be homogeneous of degree {want} for k = {k}"
            )
        a = b * c
        governing = a * e ** n
        gov_desc = "b*c*e^n"
    else:
        a = b * e ** (k - n)
        governing = b * e ** k
        gov_desc = "b*e^k"

    # annihilation: b (top degree) kills every lower class of xi
    ann_ok, ann_witness = True, ""
    for i in range(1, n + 1):
        w = inst.xi[n - i] if False else inst.xi[n - i]
        # classes w_{n-i} for i in 1..n, i.e. indices n-1 down to 0 excluded:
        # only positive-degree classes matter, w_0 = 1 is the governing term
        pass
    for j in range(1, n):
        w = inst.xi[j]
        if w.is_zero():
            continue
        prod = b * w
        if not prod.is_zero():
            ann_ok, ann_witness = False, f"b*w_{j}(xi) = {prod}"
            break
    report.hypotheses.append(
        Hypothesis("annihilation b*w_j(xi)=0 for 0<j<n", ann_ok, ann_witness)
    )

    # the product identity a * e(tensor) = (+-1)^n * governing
    euler = tensor_line_euler(inst.xi, e)
    sign = 1 if (mode == "real" or n % 2 == 0) else -1
    lhs = a * euler
    rhs = governing * sign
    ident_ok = lhs == rhs
    report.hypotheses.append(
        Hypothesis(
            f"identity a*e(tensor) = {'-' if sign < 0 else ''}{gov_desc}",
            ident_ok,
            "" if ident_ok else f"difference {lhs - rhs}",
        )
    )
    _trace(trace, f"a = {a}")
    _trace(trace, f"e(tensor) = {euler}")
    _trace(trace, f"a*e(tensor) = {lhs}")

    gov_ok = not governing.is_zero()
    report.hypotheses.append(
        Hypothesis(
            f"{gov_desc} nonzero",
            gov_ok,
            "" if gov_ok else "CertificateZero: governing class vanishes",
        )
    )
    cert_ok = not a.is_zero()
    report.hypotheses.append(
        Hypothesis(
            "certificate nonzero",
            cert_ok,
            "" if cert_ok else "CertificateZero",
        )
    )

    if ann_ok and ident_ok and gov_ok and cert_ok:
        report.certificate = a
        report.certificate_degree = a.degree()
        report.certificate_label = _label(ring)
        report.bound = d + k - n if mode == "real" else 1 + d + 2 * (k - n)
    return report


# ---------------------------------------------------------------------------
# fiber exponent calculators


def fiber_k_proj_stiefel(r: int, s: int, p: int = 2, mode: str = "real"):
    """Least k with s <= k < r+s and C(r+s, k+1) nonzero mod p; None if no
    such k exists.  Real fibers use p = 2; the complex analogue runs the
    same search mod an arbitrary prime."""
    if r < 1 or s < 1:
        raise ParameterOutOfRange("need r >= 1 and s >= 1")
    for k in range(s, r + s):
        if binom_mod_p(r + s, k + 1, p) != 0:
            return k
    return None


def fiber_k_product_spheres(dims) -> int:
    """For a fiber that is a product of spheres: the minimum dimension."""
    dims = list(dims)
    if not dims:
        raise EmptyList("need at least one sphere dimension")
    if any((not isinstance(d, int)) or d < 1 for d in dims):
        raise ParameterOutOfRange("sphere dimensions must be positive integers")
    return min(dims)


def fiber_k_wall_type(r: int, s: int) -> int:
    """Four-cell fiber with classes in degrees r, r+s, 2r+s: take k = 2r+s."""
    if not (isinstance(r, int) and isinstance(s, int)) or r <= 1 or s <= 1:
        raise ParameterOutOfRange("need integers r > 1 and s > 1")
    return 2 * r + s


# ---------------------------------------------------------------------------
# main bound


def _resolve_b(scenario, report):
    base = scenario.base
    if scenario.b is not None:
        b = scenario.b
        if b.ring is not base and b.ring != base:
            raise MixedRings("class b must live in the base ring")
        if not b.is_homogeneous():
            raise DegreeMismatch("class b must be homogeneous")
        return b
    if not base.is_finite():
        raise DimensionMismatch(
            "base ring has no finite monomial basis; supply the class b explicitly"
        )
    mono = base.max_degree_monomial()
    b = base.element({mono: 1})
    report.notes.append(f"b chosen as maximal-degree monomial {b}")
    return b


def certificate_main(inst: MainScenario, trace=None) -> BoundReport:
    """Certificate and bound for the sphere-chain scenario.

    Builds the projective extension of the base along eta, checks that each
    zeta in the chain has vanishing euler class (extending by a sphere
    generator in real mode), and verifies in the projectivization that
    b * t^(m-n) * e(hopf tensor xi) reduces to b * t^m and is nonzero.
    Reports bound d+l+m-n in real mode and 1+d+2(m-n+l) in complex mode.
    """
    base = inst.base
    mode = inst.mode
    m = inst.eta.dimension - 1
    n = inst.xi.dimension
    if inst.eta.mode != mode or inst.xi.mode != mode:
        raise DegreeMismatch("class-list modes disagree with the scenario mode")
    if n > m:
        raise NExceedsM(f"need n <= m, got n = {n}, m = {m}")
    if inst.xi.ring is not base and inst.xi.ring != base:
        raise MixedRings("xi must live in the base ring")
    if inst.eta.ring is not base and inst.eta.ring != base:
        raise MixedRings("eta must live in the base ring")

    report = BoundReport(scenario="main", mode=mode, theorem=f"main-{mode}")
    b = _resolve_b(inst, report)
    d = b.degree()
    r = len(inst.zetas)
    report.dims.update({"d": d, "n": n, "m": m, "r": r})

    pring = projective_extension(inst.eta, "t")
    t = pring.gen("t")
    _trace(trace, f"projective extension: {pring}")

    s_classes = list(inst.s_classes or [])
    s_classes += [0] * (r - len(s_classes))

    chain = pring
    l_total = 0
    l_list = []
    euler_failed = False
    for i, zspec in enumerate(inst.zetas, start=1):
        zcl = zspec(chain) if callable(zspec) else zspec
        if not isinstance(zcl, ClassList):
            raise TypeError("each zeta must resolve to a ClassList")
        if zcl.mode != mode:
            raise DegreeMismatch(f"zeta {i} mode disagrees with the scenario")
        zcl = zcl.lift_to(chain)
        li = zcl.dimension - 1
        l_list.append(li)
        l_total += li
        ez = zcl.top
        _trace(trace, f"e(zeta_{i}) = {ez}")
        if not ez.is_zero():
            report.hypotheses.append(
                Hypothesis(
                    f"euler class of zeta_{i} vanishes",
                    False,
                    f"EulerClassNonzero({i}): e(zeta_{i}) = {ez}",
                )
            )
            euler_failed = True
            continue
        report.hypotheses.append(
            Hypothesis(f"euler class of zeta_{i} vanishes", True)
        )
        if mode == "real" and not euler_failed:
            sc = s_classes[i - 1]
            if isinstance(sc, int):
                sc_el = chain.const(sc)
                if sc == 0:
                    report.notes.append(
                        f"sphere relation constant s_{i} defaulted to 0"
                    )
            else:
                sc_el = sc.lift_to(chain)
            chain = extend_sphere(
                chain, zcl[li].lift_to(chain) if li >= 1 else chain.zero(),
                sc_el, li, f"s{i}"
            )
            _trace(trace, f"sphere extension {i}: {chain}")

    report.dims["l"] = l_total
    for i, li in enumerate(l_list, start=1):
        report.dims[f"l{i}"] = li
    if mode == "complex" and r > 0:
        report.notes.append(
            "complex mode: sphere classes (odd degree) carried formally; "
            "certificate computed in the projectivization"
        )

    # the governing class in the projectivization
    b_p = b.lift_to(pring)
    xi_p = inst.xi.lift_to(pring)
    euler_p = tensor_line_euler(xi_p, t)
    governing = b_p * t ** (m - n) * euler_p
    sign = 1 if (mode == "real" or n % 2 == 0) else -1
    target = b_p * t ** m * sign
    _trace(trace, f"b*t^(m-n)*e(hopf tensor xi) = {governing}")

    ann_ok = governing == target
    report.hypotheses.append(
        Hypothesis(
            "annihilation: b has maximal degree in the base",
            ann_ok,
            "" if ann_ok else f"difference {governing - target}",
        )
    )
    gov_ok = not target.is_zero()
    report.hypotheses.append(
        Hypothesis(
            "b*t^m nonzero in the projectivization",
            gov_ok,
            "" if gov_ok else "CertificateZero: b*t^m vanishes",
        )
    )

    if euler_failed or not (ann_ok and gov_ok):
        return report

    if mode == "real":
        a = b.lift_to(chain) * chain.gen("t") ** (m - n)
        for i in range(1, r + 1):
            a = a * chain.gen(f"s{i}")
        euler_chain = tensor_line_euler(inst.xi.lift_to(chain), chain.gen("t"))
        product = a * euler_chain
        expected = target.lift_to(chain)
        for i in range(1, r + 1):
            expected = expected * chain.gen(f"s{i}")
        ident_ok = product == expected
        report.hypotheses.append(
            Hypothesis(
                "identity a*e(tensor) = b*t^m*s_1..s_r",
                ident_ok,
                "" if ident_ok else f"difference {product - expected}",
            )
        )
        cert_ok = not a.is_zero()
        report.hypotheses.append(
            Hypothesis("certificate nonzero", cert_ok,
                       "" if cert_ok else "CertificateZero")
        )
        if not (ident_ok and cert_ok):
            return report
        report.certificate = a
        report.certificate_degree = a.degree()
        report.certificate_label = _label(chain)
        report.bound = d + l_total + m - n
    else:
        a = b_p * t ** (m - n)
        cert_ok = not a.is_zero()
        report.hypotheses.append(
            Hypothesis("certificate nonzero", cert_ok,
                       "" if cert_ok else "CertificateZero")
        )
        if not cert_ok:
            return report
        report.certificate = a
        report.certificate_degree = (
            a.degree() + sum(2 * li + 1 for li in l_list)
        )
        report.certificate_label = _label(pring)
        report.bound = 1 + d + 2 * (m - n + l_total)
    _trace(trace, f"certificate = {report.certificate}")
    return report


# ---------------------------------------------------------------------------
# structure checkers


def check_ms(m_plus_1: int, r: int, eta: ClassList) -> CheckResult:
    """Frame-bundle criterion in two equivalent forms.

    Dyadic form: with s minimal such that r < 2^s, require 2^s | m+1 and
    w_j(eta) = 0 whenever j > 0 is not divisible by 2^s.  Binomial form:
    C(m+1-j, i) * w_j(eta) = 0 for 1 <= i <= r and 0 <= j <= m+1-i.  Both
    are evaluated and must agree; the result carries the chain plan
    l_i = m - i.
    """
    if eta.dimension != m_plus_1:
        raise DimensionMismatch(
            f"eta has dimension {eta.dimension}, expected {m_plus_1}"
        )
    if r < 1:
        raise ParameterOutOfRange("need r >= 1")
    if m_plus_1 < r + 1:
        raise DimensionTooSmall(f"need m+1 >= r+1, got m+1 = {m_plus_1}, r = {r}")
    m = m_plus_1 - 1
    s = r.bit_length()
    two_s = 1 << s

    dyadic_ok, dyadic_witness = True, ""
    if m_plus_1 % two_s:
        dyadic_ok, dyadic_witness = False, f"2^{s} does not divide m+1 = {m_plus_1}"
    else:
        for j in range(1, m_plus_1 + 1):
            if j % two_s and not eta[j].is_zero():
                dyadic_ok = False
                dyadic_witness = f"w_{j}(eta) nonzero with {j} not divisible by 2^{s}"
                break

    binom_ok, binom_witness = True, ""
    for i in range(1, r + 1):
        if not binom_ok:
            break
        for j in range(0, m_plus_1 - i + 1):
            if binom_mod_p(m_plus_1 - j, i, 2) and not eta[j].is_zero():
                binom_ok = False
                binom_witness = (
                    f"(i, j) = ({i}, {j}): C({m_plus_1 - j}, {i}) odd "
                    f"and w_{j}(eta) nonzero"
                )
                break

    if dyadic_ok != binom_ok:
        raise AssertionError(
            "dyadic and binomial characterizations disagree: "
            f"{dyadic_witness or 'dyadic passes'} / {binom_witness or 'binomial passes'}"
        )

    plan = [{"index": i, "l": m - i} for i in range(1, r + 1)]
    l_total = sum(p["l"] for p in plan)
    return CheckResult(
        name="check-ms",
        passed=binom_ok,
        witness=binom_witness or dyadic_witness,
        plan=plan,
        dims={
            "m": m,
            "r": r,
            "s": s,
            "l": l_total,
            "l_plus_m": l_total + m,
        },
        notes=[f"fiber dimension l+m = (r+1)m - r(r+1)/2 = {l_total + m}"],
    )


def check_mpss(eta: ClassList, mus) -> CheckResult:
    """Sphere-product criterion: the class polynomial of each mu_i must be
    divisible by that of eta.  On success the plan lists, per factor, the
    sphere generator degree l_i and the derivative polynomial whose value at
    t gives the sphere-relation coefficient."""
    mus = list(mus)
    q = char_poly(eta)
    m = eta.dimension - 1
    plan = []
    passed, witness = True, ""
    for i, mu in enumerate(mus, start=1):
        if mu.ring is not eta.ring and mu.ring != eta.ring:
            raise MixedRings(f"mu_{i} lives in a different ring")
        if mu.mode != eta.mode:
            raise DegreeMismatch(f"mu_{i} mode disagrees with eta")
        li = mu.dimension - 1
        if mu.dimension < eta.dimension:
            raise DimensionTooSmall(
                f"mu_{i} has dimension {mu.dimension} < {eta.dimension}"
            )
        ri = char_poly(mu)
        quot, rem = poly_divmod(ri, q)
        if passed and not rem.is_zero():
            passed = False
            witness = f"remainder of r_{i} by q is {rem}"
        plan.append(
            {
                "index": i,
                "l": li,
                "sigma_rel_coeff_poly": poly_derivative(ri),
                "divisible": rem.is_zero(),
            }
        )
    return CheckResult(
        name="check-mpss",
        passed=passed,
        witness=witness,
        plan=plan,
        dims={"m": m, "r": len(mus), "l": sum(p["l"] for p in plan)},
        notes=["sphere relation constants are not determined here (default 0)"],
    )


def _euler_expansion(eta: ClassList, order: int):
    """Value in the projectivization of the T^order coefficient of the
    substituted class polynomial q(T + t): sum of C(m+1-j, order) w_j t^(m+1-order-j)."""
    pring = projective_extension(eta, "t")
    t = pring.gen("t")
    m_plus_1 = eta.dimension
    acc = pring.zero()
    for j in range(0, m_plus_1 - order + 1):
        coeff = binom_mod_p(m_plus_1 - j, order, 2)
        if coeff == 0:
            continue
        wj = eta[j]
        if wj.is_zero():
            continue
        acc = acc + wj.lift_to(pring) * t ** (m_plus_1 - order - j)
    return acc


def check_two(eta: ClassList) -> CheckResult:
    """Two-frame criterion: the top class of (hopf tensor complement),
    computed as q'(t) in the projectivization, vanishes exactly when m+1 is
    even and every odd class of eta is zero.  Both routes are evaluated and
    must agree."""
    m_plus_1 = eta.dimension
    closed_ok, witness = True, ""
    if m_plus_1 % 2:
        closed_ok, witness = False, f"m+1 = {m_plus_1} is odd"
    else:
        for j in range(1, m_plus_1 + 1, 2):
            if not eta[j].is_zero():
                closed_ok, witness = False, f"w_{j}(eta) nonzero with {j} odd"
                break

    pring = projective_extension(eta, "t")
    qprime = poly_derivative(char_poly(eta)).lift_to(pring)
    symbolic = tpoly_eval(qprime, pring.gen("t"))
    if closed_ok != symbolic.is_zero():
        raise AssertionError(
            f"closed form and symbolic euler class disagree: {symbolic}"
        )
    return CheckResult(
        name="check-two",
        passed=closed_ok,
        witness=witness,
        plan=[{"index": 1, "l": m_plus_1 - 2}] if closed_ok else [],
        dims={"m": m_plus_1 - 1, "l": m_plus_1 - 2},
        notes=[f"symbolic euler class q'(t) = {symbolic}"],
    )


def check_u2(eta: ClassList) -> CheckResult:
    """Two-complex-frame criterion.

    Applies to bundles with the mod-2 pattern of a complex structure (m+1
    even, odd classes zero); under that gate, the euler class expansion with
    C(m+1-j, 2) coefficients vanishes exactly when m+1 is divisible by 4 and
    w_{2i}(eta) = 0 for odd i.  Outside the gate the check fails without
    asserting the equivalence.
    """
    m_plus_1 = eta.dimension
    gate_ok, gate_witness = True, ""
    if m_plus_1 % 2:
        gate_ok, gate_witness = False, f"m+1 = {m_plus_1} is odd"
    else:
        for j in range(1, m_plus_1 + 1, 2):
            if not eta[j].is_zero():
                gate_ok = False
                gate_witness = f"w_{j}(eta) nonzero with {j} odd"
                break

    symbolic = _euler_expansion(eta, 2)
    result = CheckResult(
        name="check-u2",
        passed=False,
        dims={"m": m_plus_1 - 1, "l": m_plus_1 - 3},
        notes=[f"symbolic euler class = {symbolic}"],
    )
    if not gate_ok:
        result.witness = f"complex-structure pattern violated: {gate_witness}"
        return result

    closed_ok, witness = True, ""
    if m_plus_1 % 4:
        closed_ok, witness = False, f"m+1 = {m_plus_1} not divisible by 4"
    else:
        for i in range(1, (m_plus_1 // 2) + 1, 2):
            if not eta[2 * i].is_zero():
                closed_ok, witness = False, f"w_{2 * i}(eta) nonzero with i = {i} odd"
                break
    if closed_ok != symbolic.is_zero():
        raise AssertionError(
            f"closed form and symbolic euler class disagree: {symbolic}"
        )
    result.passed = closed_ok
    result.witness = witness
    if closed_ok:
        result.plan = [{"index": 1, "l": m_plus_1 - 3}]
    return result


# ---------------------------------------------------------------------------
# spherical fibrations


def spherical_fibration_euler(xi_classes: ClassList, e_lambda: RingElement) -> RingElement:
    """Euler class of the twisted spherical fibration: the same expansion
    as the line-tensor euler class, but the class list may be any formal
    graded list, not one of a vector bundle."""
    return tensor_line_euler(xi_classes, e_lambda)
