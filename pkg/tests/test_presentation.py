import itertools
import random

import pytest

from eqkr.coeffs import KRCoeff
from eqkr.groups import build_root_data
from eqkr.presentation import (
    PresentationError,
    RClassIndex,
    as_fundamental_polynomial,
    augment_bz,
    augment_element,
    build_bz_presentation,
    build_kr_presentation,
    canon_degree,
    complexify,
    delta_lift,
    exterior_ranks,
    multiply,
    poincare_table,
    rclass_square,
)
from eqkr.realstruct import Involution

GOLDEN = [("SU2", "trivial"), ("SU3", "sigmaR"), ("SU4", "sigmaH"),
          ("Sp2", "trivial"), ("SU3", "trivial")]


def kr(name, kind):
    rd = build_root_data(name)
    return build_kr_presentation(rd, Involution(rd, kind))


# ---------------------------------------------------------------------------
# Brylinski-Zhang side
# ---------------------------------------------------------------------------

def test_bz_su2():
    bz = build_bz_presentation(build_root_data("SU2"))
    assert exterior_ranks(bz) == (1, 1)
    # K^0_G = R(G): a weight times the empty monomial
    e = bz.bz_weight((3,))
    assert (e * bz.one()) == e


def test_bz_su3_exterior_ranks():
    bz = build_bz_presentation(build_root_data("SU3"))
    assert exterior_ranks(bz) == (1, 2, 1)


def test_k_su2_total_rank_two():
    bz = build_bz_presentation(build_root_data("SU2"))
    k = augment_bz(bz)
    assert exterior_ranks(k) == (1, 1)  # free Z-module of total rank 2
    # augmentation sends a weight to its dimension
    e = augment_element(k, bz.bz_weight((2,)))
    assert e == 3 * k.one()


def test_bz_product_rules():
    bz = build_bz_presentation(build_root_data("SU3"))
    d1, d2 = bz.gen_element(0), bz.gen_element(1)
    assert (d1 * d1).is_zero()
    assert d1 * d2 == -(d2 * d1)
    v = bz.bz_weight((1, 0))
    assert v * d1 == d1 * v


# ---------------------------------------------------------------------------
# KR presentations
# ---------------------------------------------------------------------------

def test_omega_form_golden_cases():
    expected = {
        ("SU2", "trivial"): [-3],
        ("SU3", "sigmaR"): [1, 1],
        ("SU4", "sigmaH"): [-3, -3, 1],
        ("Sp2", "trivial"): [-3, 1],
    }
    for (name, kind), degs in expected.items():
        p = kr(name, kind)
        assert p.omega_form
        assert sorted(g.degree for g in p.gens) == sorted(degs)
        assert len(p.gens) == len(p.rd.fundamental_weights())
        for g in p.gens:
            assert (p.gen_element(g.index) * p.gen_element(g.index)).is_zero()


def test_su3_trivial_generators():
    p = kr("SU3", "trivial")
    assert not p.omega_form
    kinds = [g.kind for g in p.gens]
    assert kinds == ["lam"]
    lam = p.gen_element(0)
    assert (lam * lam).is_zero()
    assert lam.degrees() == [0]


def test_multiply_examples():
    p = kr("SU3", "sigmaR")
    a, b = p.gen_element(0), p.gen_element(1)
    assert (a * a).is_zero()
    assert a * b == -(b * a)
    with pytest.raises(PresentationError):
        multiply(p, a, kr("SU2", "trivial").one())


def test_eta_mu_rules_on_realified_classes():
    p = kr("SU3", "trivial")
    eta = p.scalar(KRCoeff.basis("eta"))
    mu = p.scalar(KRCoeff.basis("mu"))
    for idx in [RClassIndex(None, 0, (1,), (0,)),
                RClassIndex((1, 0), 1, (0,), (0,)),
                RClassIndex((0, 1), 2, (1,), (0,)),
                RClassIndex({(1, 0): 2, (0, 1): -1}, 0, (1,), (0,))]:
        r = p.rclass_element(idx)
        assert (r * eta).is_zero()
        assert r * mu == 2 * p.rclass_element(idx.shifted(2))
        # Bott periodicity of the realified index
        assert p.rclass_element(idx.shifted(4)) == r


def test_rclass_square_cases_su3():
    p = kr("SU3", "trivial")
    # degree -1: eta^2 . (rho sigmabar rho) . lam
    res = rclass_square(p, RClassIndex(None, 0, (1,), (0,)))
    assert res.case == "eta2"
    lam = p.gen_element(0)
    eta2 = p.scalar(KRCoeff.basis("eta2"))
    assert res.element == eta2 * lam
    # with rho = the defining representation: rho sigmabar*rho = 1 + adjoint
    res = rclass_square(p, RClassIndex((1, 0), 0, (1,), (0,)))
    assert res.case == "eta2"
    expected = eta2 * lam * (p.one() + p.class_element((1, 1)))
    assert res.element == expected
    # degrees -3 and 1: zero
    for i in (1, 3):
        res = rclass_square(p, RClassIndex(None, i, (1,), (0,)))
        assert res.case == "zero" and res.element.is_zero()
    # bare realifications are coefficient arithmetic
    with pytest.raises(PresentationError):
        rclass_square(p, RClassIndex((1, 0), 1, (0,), (0,)))


def test_rclass_square_mu_case_su5():
    p = kr("SU5", "trivial")
    res = rclass_square(p, RClassIndex(None, 0, (1, 1), (0, 0)))
    assert res.case == "mu"
    assert res.transpositions == 1
    assert res.sign == -1
    lam12 = p.gen_element(p._lam_gen[0]) * p.gen_element(p._lam_gen[1])
    assert res.element == -(p.scalar(KRCoeff.basis("mu")) * lam12)
    # mixed eps/nu pattern costs two transpositions
    res = rclass_square(p, RClassIndex(None, 0, (1, 0), (0, 1)))
    assert res.case == "mu" and res.transpositions == 2 and res.sign == 1
    # double realifications in degrees 0/-4 do not vanish: their
    # complexification is 2 x tau(x)
    res = rclass_square(p, RClassIndex(None, 1, (1, 1), (0, 0)))
    assert res.case == "two"
    assert res.element == 2 * res.sign * lam12


def test_graded_commutativity_random():
    rng = random.Random(99)
    for name, kind in GOLDEN:
        p = kr(name, kind)
        pool = _homogeneous_pool(p)
        for _ in range(200):
            d1, a = pool[rng.randrange(len(pool))]
            d2, b = pool[rng.randrange(len(pool))]
            lhs = a * b
            rhs = b * a
            if d1 % 2 and d2 % 2:
                rhs = -rhs
            assert lhs == rhs


def _homogeneous_pool(p):
    pool = [(0, p.one()), (-4, p.scalar(KRCoeff.basis("mu"))),
            (-1, p.scalar(KRCoeff.basis("eta")))]
    for g in p.gens:
        pool.append((g.degree, p.gen_element(g.index)))
    for w in p.split.real:
        pool.append((0, p.class_element(w)))
    for w in p.split.quat:
        pool.append((-4, p.class_element(w)))
    if p.split.t:
        for idx in [RClassIndex(None, 0, (1,) + (0,) * (p.split.t - 1),
                                (0,) * p.split.t),
                    RClassIndex(p.split.pairs[0][0], 1,
                                (0,) * p.split.t, (0,) * p.split.t)]:
            e = p.rclass_element(idx)
            pool.append((canon_degree(idx.degree()), e))
    return pool


def test_associativity_and_normal_form_idempotence():
    rng = random.Random(5)
    for name, kind in GOLDEN:
        p = kr(name, kind)
        pool = [e for _, e in _homogeneous_pool(p)]
        for _ in range(100):
            a, b, c = (pool[rng.randrange(len(pool))] for _ in range(3))
            assert (a * b) * c == a * (b * c)
        for e in pool:
            assert p._element(dict(e.terms)) == e  # renormalize fixed point


def test_complexify_generator_images():
    p = kr("SU3", "sigmaR")
    c = complexify(p)
    bz = c.target
    for fi, g in enumerate(p.gens):
        assert c(p.gen_element(g.index)) == bz.dg_element(fi, 1)
    p3 = kr("SU3", "trivial")
    c3 = complexify(p3)
    lam_img = c3(p3.gen_element(0))
    u = p3._pair_factor(0, "u")
    v = p3._pair_factor(0, "v")
    assert lam_img == -(c3.target.dg_element(u, 3) * c3.target.dg_element(v, 0))


def test_complexify_is_multiplicative():
    for name, kind in GOLDEN:
        p = kr(name, kind)
        c = complexify(p)
        elems = [p.gen_element(g.index) for g in p.gens]
        elems.append(p.scalar(KRCoeff.basis("mu")))
        elems.append(p.scalar(KRCoeff.basis("eta")))
        if p.split.t:
            elems.append(p.rclass_element(
                RClassIndex(None, 0, (1,) + (0,) * (p.split.t - 1),
                            (0,) * p.split.t)))
        for a, b in itertools.product(elems, repeat=2):
            assert c(a * b) == c(a) * c(b)


def test_complexify_intertwines_relations():
    p = kr("SU4", "sigmaH")
    c = complexify(p)
    for g in p.gens:
        img = c(p.gen_element(g.index))
        assert (img * img).is_zero()


def test_monomial_degree_tables():
    assert kr("SU3", "sigmaR").monomial_degrees() == [0, 1, 1, 2]
    assert kr("SU2", "trivial").monomial_degrees() == [-3, 0]
    assert kr("SU4", "sigmaH").monomial_degrees() == \
        sorted([0, -3, -3, 1, -6, -2, -2, -5])


def test_delta_lift_examples():
    su2 = build_root_data("SU2")
    bz = build_bz_presentation(su2)
    assert delta_lift(bz, {(0,): 1}).is_zero()  # d(trivial) = 0
    lhs = delta_lift(bz, {(2,): 1})
    assert lhs == bz.bz_weight((1,)) * bz.dg_element(0) * 2
    su3 = build_root_data("SU3")
    bz3 = build_bz_presentation(su3, inv=Involution(su3, "trivial"))
    da = delta_lift(bz3, {(1, 0): 1}, twist="abar")
    ds = delta_lift(bz3, {(1, 0): 1}, twist="sigmabar")
    assert da == -ds


def test_delta_lift_un_laurent():
    u2 = build_root_data("U2")
    bz = build_bz_presentation(u2)
    d_inv = delta_lift(bz, {(0, -1): 1})
    assert d_inv == -(bz.bz_weight((-2, -2)) * bz.dg_element(1))
    # Leibniz on det . det^-1 = 1
    lhs = bz.bz_weight((-1, -1)) * delta_lift(bz, {(0, 1): 1}) + \
        bz.bz_weight((1, 1)) * d_inv
    assert lhs.is_zero()


def test_delta_lift_kr_side():
    p = kr("SU2", "trivial")
    l = delta_lift(p, {(2,): 1})
    assert l == p.class_element((1,)) * p.gen_element(0) * 2
    assert l.degrees() == [1]  # V (x) V is a degree-0 class, d lands in 1


def test_as_fundamental_polynomial_roundtrip():
    su3 = build_root_data("SU3")
    from eqkr.presentation import _expand_monomial
    funds = su3.fundamental_weights()
    for lam in [(0, 0), (1, 0), (1, 1), (2, 1), (0, 3)]:
        poly = as_fundamental_polynomial(su3, lam)
        total = {}
        for exp, c in poly.items():
            for w, m in _expand_monomial(su3, funds, exp).items():
                total[w] = total.get(w, 0) + c * m
                if total[w] == 0:
                    del total[w]
        assert total == {lam: 1}


def test_poincare_table_bz():
    bz = build_bz_presentation(build_root_data("SU3"))
    tab = poincare_table(bz)
    assert all(v == (2, 0) for v in tab.values())


def test_realify_roundtrip_canonical_slots():
    p = kr("SU3", "trivial")
    for idx in [RClassIndex(None, 0, (1,), (0,)),
                RClassIndex((0, 1), 2, (0,), (0,)),
                RClassIndex((0, 1), 1, (1,), (0,))]:
        e = p.rclass_element(idx)
        assert len(e.terms) == 1
        assert list(e.terms.values()) == [1]


def test_realify_is_tau_invariant():
    """r(y) = r(tau y) holds on the nose after canonicalization."""
    rng = random.Random(17)
    for name, kind in [("SU3", "trivial"), ("SU4", "sigmaH"),
                       ("SU4", "trivial")]:
        p = kr(name, kind)
        c = complexify(p)
        bz = c.target
        nf = len(p.factors)
        for _ in range(40):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                w = [p.zero_weight] + [w for _, w, _ in p.factors]
                terms[(w[rng.randrange(len(w))], rng.randrange(4),
                       tuple(sorted(rng.sample(range(nf),
                                    rng.randint(0, min(2, nf))))))] = \
                    rng.randint(-3, 3)
            y = bz._element(terms)
            ty = bz._element(dict(bz._tau_bz(y.terms)))
            assert p.realify_bz(y) == p.realify_bz(ty)


def test_mixed_split_su4_trivial():
    """SU(4) trivial has one real fundamental and one complex pair."""
    p = kr("SU4", "trivial")
    assert (p.split.r, p.split.s, p.split.t) == (1, 0, 1)
    dR = next(g for g in p.gens if g.kind == "dR")
    lam = next(g for g in p.gens if g.kind == "lam")
    a, b = p.gen_element(dR.index), p.gen_element(lam.index)
    assert (a * a).is_zero() and (b * b).is_zero()
    r = p.rclass_element(RClassIndex(None, 0, (1,), (0,)))
    # odd (deg 1) times odd (deg -1) anticommute
    assert a * r == -(r * a)
    assert b * r == r * b


def test_stress_verifier_on_wider_groups():
    from eqkr.verifier import (verify_cr, verify_module_iso,
                               verify_rclass_squares, verify_squares)
    for name, kind in [("SU5", "trivial"), ("Sp3", "trivial"),
                       ("Spin7", "trivial"), ("SU2xSU2",
                                              ("trivial", "trivial"))]:
        p = kr(name, kind) if isinstance(kind, str) else \
            build_kr_presentation(build_root_data(name),
                                  Involution(build_root_data(name), kind))
        assert verify_squares(p, n_random=20).passed
        assert verify_cr(p, n_random=20).passed
        assert verify_module_iso(p, 18).passed
        if p.split.t:
            assert verify_rclass_squares(p).passed
