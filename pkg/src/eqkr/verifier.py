"""Property suites that re-derive and check the algebraic laws.

Each check is a pure function from a built presentation (plus a seed)
to a CheckResult; failures carry a witness, never an exception.  The
negative-control fixtures below (make_mutant) exist so the test suite
can confirm each check actually fails when the corresponding law is
broken.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .coeffs import KCoeff, KRCoeff, c_coeff, r_coeff
from .groups import UnsupportedGroupError
from .presentation import (
    Presentation,
    RClassIndex,
    as_fundamental_polynomial,
    build_bz_presentation,
    canon_degree,
    classified_irreps,
    complexify,
    delta_lift,
    dominant_weights_up_to_dim,
    poincare_table,
    rclass_square,
)
from .realstruct import TYPE_C
from .torus import (
    LaurentForm,
    top_form,
    weyl_denominator,
    weyl_denominator_product,
)

DEFAULT_SEED = 20240801
DEFAULT_TRUNCATION = 50


@dataclass
class CheckResult:
    name: str
    status: str                 # pass | fail | skipped
    witness: str | None = None
    seed: int | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status == "fail" and not self.witness:
            raise ValueError("failures must carry a witness")

    @property
    def passed(self):
        return self.status == "pass"


def _timed(name, seed, fn):
    t0 = time.perf_counter()
    witness = fn()
    elapsed = time.perf_counter() - t0
    if witness is None:
        return CheckResult(name, "pass", None, seed, elapsed)
    return CheckResult(name, "fail", witness, seed, elapsed)


# ---------------------------------------------------------------------------
# random element pools
# ---------------------------------------------------------------------------

def odd_monomials(p: Presentation, degree: int):
    """Normal-form monomials of the given pure odd degree."""
    out = []
    gens = range(len(p.gens))
    for k in range(1, len(p.gens) + 1):
        for bits in itertools.combinations(gens, k):
            e = p.one()
            for g in bits:
                e = e * p.gen_element(g)
            if not e.is_zero() and e.degrees() == [degree]:
                out.append(e)
    if p.split is not None and p.split.t:
        t = p.split.t
        rhos = [None] + [rep for rep, _ in p.split.pairs]
        for i in range(4):
            for eps in itertools.product((0, 1), repeat=t):
                for nu in itertools.product((0, 1), repeat=t):
                    try:
                        idx = RClassIndex(None, i, eps, nu)
                    except ValueError:
                        continue
                    if idx.factor_count == 0:
                        continue
                    if canon_degree(idx.degree()) != degree:
                        continue
                    for rho in rhos:
                        e = p.rclass_element(
                            RClassIndex(rho, i, eps, nu))
                        if not e.is_zero() and e.degrees() == [degree]:
                            out.append(e)
    return out


def random_odd_element(p, pool, rng, max_terms=4):
    """Integer combination of odd monomials, scaled by even coefficients."""
    x = p.zero()
    for _ in range(rng.randint(1, max_terms)):
        m = pool[rng.randrange(len(pool))]
        if rng.random() < 0.35:
            m = m * p.scalar(KRCoeff.basis("mu"))
        if rng.random() < 0.25 and p.split is not None and p.split.real:
            m = m * p.class_element(p.split.real[0])
        x = x + m * rng.randint(-5, 5)
    return x


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def verify_squares(p: Presentation, seed: int = DEFAULT_SEED,
                   n_random: int = 100) -> CheckResult:
    """Generator squares match the relation table; random odd squares vanish."""
    def run():
        for g in p.gens:
            computed = p.gen_element(g.index) * p.gen_element(g.index)
            table = p.generator_square(g)
            if computed != table:
                return (f"square of {g.label()}: computed {computed!r} but "
                        f"relation table says {table!r}")
        rng = random.Random(seed)
        for degree in (1, -3):
            pool = odd_monomials(p, degree)
            if not pool:
                continue
            for trial in range(n_random):
                x = random_odd_element(p, pool, rng)
                sq = x * x
                if not sq.is_zero():
                    return (f"degree {degree} element (seed {seed}, trial "
                            f"{trial}) has nonzero square: x = {x!r}, "
                            f"x^2 = {sq!r}")
        return None
    return _timed(f"squares[{p.rd.spec}/{p.inv.name}]", seed, run)


def verify_leibniz(p: Presentation, bound: int = 15,
                   seed: int = DEFAULT_SEED,
                   flip_twist_sign: bool = False) -> CheckResult:
    """The derivation is well defined across tensor identities.

    For all irreducibles of dimension <= bound, lifting the polynomial
    identity V_a . V_b = sum m_nu V_nu along the derivation gives the
    same element on both sides; on every complex pair the pullback
    rewrite d(abar* gamma) = -d(sigmabar* gamma) holds.
    ``flip_twist_sign`` breaks the rewrite on purpose (sensitivity
    control).
    """
    def run():
        bz = build_bz_presentation(p.rd, inv=p.inv)
        try:
            weights = dominant_weights_up_to_dim(p.rd, bound)
        except UnsupportedGroupError:
            # U(n) factors: infinitely many determinant twists, so sweep
            # the fundamentals (tensor constituents still enter below)
            weights = [p.rd.zero()] + list(p.rd.fundamental_weights())
        polys = {w: as_fundamental_polynomial(p.rd, w) for w in weights}
        lifts = {w: delta_lift(bz, polys[w]) for w in weights}
        for a, b in itertools.combinations_with_replacement(weights, 2):
            prod_poly = {}
            for e1, c1 in polys[a].items():
                for e2, c2 in polys[b].items():
                    key = tuple(x + y for x, y in zip(e1, e2))
                    prod_poly[key] = prod_poly.get(key, 0) + c1 * c2
            lhs = delta_lift(bz, prod_poly)
            rhs = bz.zero()
            for nu, m in p.tensor(a, b).items():
                if nu not in polys:
                    polys[nu] = as_fundamental_polynomial(p.rd, nu)
                    lifts[nu] = delta_lift(bz, polys[nu])
                rhs = rhs + lifts[nu] * m
            if lhs != rhs:
                return (f"derivation disagrees on {a} x {b}: "
                        f"lhs {lhs!r}, rhs {rhs!r}")
        if p.split is not None:
            for rep, other in p.split.pairs:
                poly = as_fundamental_polynomial(p.rd, rep)
                da = delta_lift(bz, poly, twist="abar")
                ds = delta_lift(bz, poly, twist="sigmabar")
                expected = ds if flip_twist_sign else -ds
                if da != expected:
                    return (f"pullback rewrite fails on pair {rep}: "
                            f"d(abar*) = {da!r}, -d(sigmabar*) = {(-ds)!r}")
        # KR-side instances for the R/H fundamentals
        if p.kind == "KR" and p.split is not None and p.split.t == 0:
            funds = list(p.split.real) + list(p.split.quat)
            nf = len(funds)
            for i, j in itertools.combinations_with_replacement(range(nf), 2):
                e1 = tuple(int(k == i) for k in range(nf))
                e2 = tuple(int(k == j) for k in range(nf))
                prod = tuple(a + b for a, b in zip(e1, e2))
                lhs = delta_lift(p, {prod: 1})
                rhs = p.zero()
                for nu, m in p.tensor(funds[i], funds[j]).items():
                    nu_poly = _poly_in_rh_fundamentals(p, funds, nu)
                    if nu_poly is None:
                        rhs = None
                        break
                    rhs = rhs + delta_lift(p, nu_poly) * m
                if rhs is not None and lhs != rhs:
                    return (f"KR derivation disagrees on {funds[i]} x "
                            f"{funds[j]}: {lhs!r} vs {rhs!r}")
        return None
    return _timed(f"leibniz[{p.rd.spec}/{p.inv.name};dim<={bound}]", seed, run)


def _poly_in_rh_fundamentals(p, funds, nu):
    """as_fundamental_polynomial restricted to the R/H catalog, or None."""
    full = as_fundamental_polynomial(p.rd, nu)
    all_funds = list(p.rd.fundamental_weights())
    keep = [all_funds.index(f) for f in funds]
    out = {}
    for exp, c in full.items():
        if any(a and i not in keep for i, a in enumerate(exp)):
            return None
        out[tuple(exp[i] for i in keep)] = c
    return out


def noneq_table(p: Presentation):
    """Module table of KR*(G^-): the coefficient assembly augmented.

    Representation content is forgotten: plain monomials carry the
    KO-pattern of KR*(pt), realified slots (trivial rho only) carry a
    free Z each.
    """
    table = {canon_degree(-q): [0, 0] for q in range(8)}
    lam_gens = [g for g in p.gens if g.kind == "lam"]
    delta_gens = [g for g in p.gens if g.kind != "lam"]
    plain = []
    for k in range(len(delta_gens) + 1):
        for bits in itertools.combinations(delta_gens, k):
            for kl in range(len(lam_gens) + 1):
                for lbits in itertools.combinations(lam_gens, kl):
                    d = (sum(g.degree for g in bits)
                         + sum(g.degree for g in lbits))
                    plain.append((canon_degree(d),
                                  frozenset(g.pair for g in lbits)))
    for d, _ in plain:
        for off, kind in ((0, "free"), (-1, "tors"), (-2, "tors"),
                          (-4, "free")):
            table[canon_degree(d + off)][0 if kind == "free" else 1] += 1
    t = p.split.t if p.split else 0
    if t:
        from .presentation import _slot_patterns
        for d, lams in plain:
            for i in range(4):
                for eps, nu in _slot_patterns(t):
                    if not eps or (nu and min(nu) < min(eps)):
                        continue  # canonical trivial-rho patterns only
                    if (set(eps) | set(nu)) & lams:
                        continue
                    table[canon_degree(d - 2 * i - len(eps) - len(nu))][0] += 1
    return {d: tuple(v) for d, v in table.items()}


def k_basis_count(p: Presentation):
    """Degree census of the K*(G) basis as realified (phi shifts by 4)."""
    table = {canon_degree(-q): 0 for q in range(8)}
    roles = [role for role, _, _ in p.factors]
    n = len(roles)
    for k in range(n + 1):
        for bits in itertools.combinations(range(n), k):
            phis = sum(1 for b in bits if roles[b] == "phi")
            for j in range(4):
                d = canon_degree(-2 * j - k + 4 * phis)
                table[d] += 1
    return table


def rhs_module_table(p: Presentation, bound: int):
    """Structure-theorem side: (RR + RH) (x) KR*(G^-) + r(pairs (x) K*(G))."""
    reals, quats, pairs = classified_irreps(p, bound)
    ne = noneq_table(p)
    kb = k_basis_count(p)
    table = {}
    for q in ne:
        free = (len(reals) * ne[q][0]
                + len(quats) * ne[canon_degree(q + 4)][0]
                + len(pairs) * kb[q])
        tors = (len(reals) * ne[q][1]
                + len(quats) * ne[canon_degree(q + 4)][1])
        table[q] = (free, tors)
    return table


def verify_module_iso(p: Presentation, truncation: int = 30,
                      seed: int = DEFAULT_SEED,
                      drop_mu_shift: bool = False) -> CheckResult:
    """Both sides of the structure theorem have equal per-degree tables.

    The left side enumerates the engine's normal-form basis; the right
    side assembles (RR + RH) (x) KR*(G^-) + r(R(G,C) (x) K*(G)) from
    the non-equivariant tables.  Free ranks and Z/2-torsion counts
    must agree in every degree mod 8 at the truncation.
    """
    def run():
        lhs = poincare_table(p, truncation, drop_mu_shift=drop_mu_shift)
        rhs = rhs_module_table(p, truncation)
        for q in sorted(lhs, reverse=True):
            if lhs[q] != rhs[q]:
                return (f"degree {q}: basis table {lhs[q]} != structure "
                        f"side {rhs[q]} (truncation {truncation})")
        return None
    return _timed(f"module-iso[{p.rd.spec}/{p.inv.name};D={truncation}]",
                  seed, run)


def verify_cr(p: Presentation, seed: int = DEFAULT_SEED,
              n_random: int = 100) -> CheckResult:
    """Complexification/realification laws, coefficient and element level."""
    def run():
        # coefficient level, exhaustive over the bases
        for i in range(8):
            b = KCoeff.beta(i)
            if c_coeff(r_coeff(b)) != b + b.conj():
                return f"c(r(beta^{i})) != beta^{i} + conj"
        for name in ("1", "eta", "eta2", "mu"):
            x = KRCoeff.basis(name)
            for j in range(4):
                y = KCoeff.beta(j)
                if r_coeff(c_coeff(x) * y) != x * r_coeff(y):
                    return f"projection formula fails on ({name}, beta^{j})"
        if p.kind != "KR":
            return None
        cmap = complexify(p)
        bz = cmap.target
        rng = random.Random(seed)
        # element level: c(r(y)) = y + tau(y) and r(c(x) y) = x r(y)
        pool_w = [p.zero_weight] + [w for _, w, _ in p.factors]
        nf = len(p.factors)
        for trial in range(n_random):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                w = pool_w[rng.randrange(len(pool_w))]
                j = rng.randrange(4)
                bits = tuple(sorted(rng.sample(range(nf),
                                               rng.randint(0, min(2, nf)))))
                terms[(w, j, bits)] = rng.randint(-3, 3)
            y = bz._element(terms)
            ry = p.realify_bz(y)
            lhs = cmap(ry)
            rhs = y + bz._element(dict(bz._tau_bz(y.terms)))
            if lhs != rhs:
                return (f"c(r(y)) != y + tau(y) for y = {y!r} (seed {seed}, "
                        f"trial {trial}): {lhs!r} vs {rhs!r}")
            x = p.one() if trial % 2 else p.scalar(KRCoeff.basis("mu"))
            if p.split.real and trial % 3 == 0:
                x = p.class_element(p.split.real[0])
            if p.realify_bz(cmap(x) * y) != x * ry:
                return (f"projection formula fails on trial {trial} "
                        f"(seed {seed})")
        # generator-level eta/mu rules on enumerated realified classes
        if p.split.t:
            eta = p.scalar(KRCoeff.basis("eta"))
            mu = p.scalar(KRCoeff.basis("mu"))
            for idx in enumerate_rclasses(p, 20):
                r = p.rclass_element(idx)
                if not (r * eta).is_zero():
                    return f"r.eta != 0 for {idx}"
                if r * mu != 2 * p.rclass_element(idx.shifted(2)):
                    return f"r.mu != 2 r_(i+2) for {idx}"
        return None
    return _timed(f"cr[{p.rd.spec}/{p.inv.name}]", seed, run)


def enumerate_rclasses(p: Presentation, count: int):
    """A deterministic list of realified-class indexes for rule checks."""
    t = p.split.t
    rhos = [None] + [rep for rep, _ in p.split.pairs]
    for rep, other in p.split.pairs:
        for w2, m in p.tensor(rep, rep).items():
            if p.classify(w2).type == TYPE_C and w2 not in rhos:
                rhos.append(w2)
    out = []
    patterns = [(tuple(int(k == a) for k in range(t)), (0,) * t)
                for a in range(t)]
    patterns.insert(0, ((0,) * t, (0,) * t))
    if t >= 2:
        patterns.append(((1, 1) + (0,) * (t - 2), (0,) * t))
        patterns.append(((1,) + (0,) * (t - 1),
                         (0, 1) + (0,) * (t - 2)))
    for rho in rhos:
        for i in range(4):
            for eps, nu in patterns:
                if rho is None and not any(eps) and not any(nu):
                    continue
                try:
                    out.append(RClassIndex(rho, i, eps, nu))
                except ValueError:
                    continue
                if len(out) >= count:
                    return out
    return out


def verify_weyl_denominator(n: int, seed: int = DEFAULT_SEED) -> CheckResult:
    """The torus-restriction product carries the Weyl denominator.

    The product of the restricted character differentials equals
    d_U(n) . de_1...de_n exactly (the Jacobian identity), and the
    product of the weight-decorated restrictions is nonzero and equals
    the monomial unit e_1...e_n times prod_{i<j}(e_i + e_j) times the
    same element.
    """
    if n > 4:
        raise ValueError("Weyl-denominator check limited to n <= 4")
    def run():
        char_prod, weighted = weyl_denominator_product(n)
        target = weyl_denominator(n) * top_form(n)
        if char_prod != target:
            return (f"character product differs from the Weyl denominator "
                    f"times the top form for U({n})")
        if char_prod.is_zero():
            return "character product is zero"
        if weighted.is_zero():
            return "weighted product is zero"
        expect = LaurentForm.monomial(n, (1,) * n)
        for i in range(n):
            for j in range(i + 1, n):
                ei = tuple(int(a == i) for a in range(n))
                ej = tuple(int(a == j) for a in range(n))
                expect = expect * (LaurentForm.monomial(n, ei)
                                   + LaurentForm.monomial(n, ej))
        expect = expect * target
        if weighted != expect:
            return (f"weighted product is not the expected unit-adjusted "
                    f"multiple of the Weyl denominator for U({n})")
        return None
    return _timed(f"weyl-denominator[U({n})]", seed, run)


def verify_rclass_squares(p: Presentation, seed: int = DEFAULT_SEED) -> CheckResult:
    """Realified squares follow the degree-case table with computed signs."""
    def run():
        if not p.split.t:
            return None
        for idx in enumerate_rclasses(p, 24):
            if idx.factor_count == 0:
                continue
            res = rclass_square(p, idx)
            deg = idx.degree()
            expected = {(-1): "eta2", (-5): "eta2", (-2): "mu", (-6): "mu",
                        (-3): "zero", 1: "zero", 0: "two", (-4): "two"}[deg]
            if res.case != expected:
                return (f"square case of {idx} (degree {deg}) is {res.case},"
                        f" expected {expected}")
            if res.case == "zero" and not res.element.is_zero():
                return f"square of {idx} should vanish, got {res.element!r}"
        return None
    return _timed(f"rclass-squares[{p.rd.spec}/{p.inv.name}]", seed, run)


# ---------------------------------------------------------------------------
# mutants (negative controls) and suites
# ---------------------------------------------------------------------------

def make_mutant(p: Presentation, kind: str) -> Presentation:
    """A deliberately broken copy of a presentation, for sensitivity tests."""
    if kind == "delta-square":
        overrides = dict(p.relation_overrides)
        target = p.gens[0].index
        bad = Presentation(p.rd, p.inv, p.split, p.kind, p.factors, p.gens,
                           overrides)
        if any(g.kind == "lam" for g in p.gens):
            lam = next(g for g in p.gens if g.kind == "lam")
            bad.relation_overrides[("square", target)] = bad.gen_element(lam.index)
        else:
            bad.relation_overrides[("square", target)] = bad.one()
        return bad
    raise ValueError(f"unknown mutant kind {kind!r}")


@dataclass
class VerificationReport:
    group: str
    involution: str
    suite: str
    seed: int
    truncation: int
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.status != "fail" for r in self.results)


SUITES = ("none", "fast", "all", "weyl")


def run_suite(p: Presentation | None, suite: str, seed: int = DEFAULT_SEED,
              truncation: int = DEFAULT_TRUNCATION, un_rank: int | None = None,
              probe: str | None = None) -> VerificationReport:
    """Run a named check suite on a built presentation.

    ``un_rank`` supplies the U(n) rank for the Weyl-denominator check
    (defaults to the group's own rank when it is a U family).
    ``probe`` injects a named fault for sensitivity testing.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; pick one of {SUITES}")
    group = str(p.rd.spec) if p is not None else f"U{un_rank}"
    invname = p.inv.name if p is not None and p.inv is not None else "trivial"
    report = VerificationReport(group, invname, suite, seed, truncation)
    if suite == "none":
        return report
    target = p
    if probe is not None and p is not None:
        target = make_mutant(p, probe)
    checks = []
    if suite in ("fast", "all") and target is not None:
        checks.append(lambda: verify_squares(target, seed))
        checks.append(lambda: verify_cr(target, seed))
        checks.append(lambda: verify_leibniz(target, 10, seed))
        if target.split is not None and target.split.t:
            checks.append(lambda: verify_rclass_squares(target, seed))
    if suite == "all" and target is not None:
        if not _has_un_factor(target):
            checks.append(lambda: verify_module_iso(target, truncation, seed))
    if suite in ("all", "weyl"):
        n = un_rank
        if n is None and p is not None and _un_rank_of(p) is not None:
            n = _un_rank_of(p)
        if n is not None and n <= 4:
            checks.append(lambda: verify_weyl_denominator(n, seed))
        elif suite == "weyl":
            report.results.append(CheckResult(
                "weyl-denominator", "skipped",
                "no U(n) factor with n <= 4", seed))
    for fn in checks:
        report.results.append(fn())
    report.results.sort(key=lambda r: r.name)
    return report


def _has_un_factor(p: Presentation):
    return any(fam == "U" for fam, _ in p.rd.spec.factors)


def _un_rank_of(p: Presentation):
    for fam, n in p.rd.spec.factors:
        if fam == "U":
            return n
    return None
