import itertools

import pytest

from eqkr.groups import build_root_data, tensor_decompose, weyl_dimension
from eqkr.realstruct import (
    Involution,
    InvolutionSpecError,
    UnclassifiableError,
    classify_type,
    fs_rule_type,
    split_fundamentals,
    twisted_dual,
)


def test_twisted_dual_examples():
    su3 = build_root_data("SU3")
    triv = Involution(su3, "trivial")
    sR = Involution(su3, "sigmaR")
    assert twisted_dual(su3, triv, (1, 0)) == (0, 1)
    assert twisted_dual(su3, sR, (1, 0)) == (1, 0)
    su4 = build_root_data("SU4")
    sH = Involution(su4, "sigmaH")
    assert twisted_dual(su4, sH, (0, 1, 0)) == (0, 1, 0)


def test_twisted_dual_is_involutive():
    cases = [("SU3", "trivial"), ("SU3", "sigmaR"), ("SU4", "sigmaH"),
             ("Sp2", "trivial"), ("Spin7", "trivial")]
    for name, kind in cases:
        rd = build_root_data(name)
        inv = Involution(rd, kind)
        for lam in itertools.product(range(3), repeat=rd.rank):
            star = inv.twisted_dual_weight(lam)
            assert inv.twisted_dual_weight(star) == lam


def test_classify_examples():
    su2 = build_root_data("SU2")
    triv = Involution(su2, "trivial")
    assert classify_type(su2, triv, (1,)).type == "H"
    su3 = build_root_data("SU3")
    assert classify_type(su3, Involution(su3, "trivial"), (1, 0)).type == "C"
    for k, w in enumerate(su3.fundamental_weights()):
        assert classify_type(su3, Involution(su3, "sigmaR"), w).type == "R"
    su4 = build_root_data("SU4")
    sH = Involution(su4, "sigmaH")
    types = [classify_type(su4, sH, w).type for w in su4.fundamental_weights()]
    assert types == ["H", "R", "H"]


def test_classify_respects_twisted_dual_symmetry():
    su3 = build_root_data("SU3")
    inv = Involution(su3, "trivial")
    for lam in itertools.product(range(3), repeat=2):
        cls = classify_type(su3, inv, lam)
        mate = classify_type(su3, inv, cls.twisted_dual)
        assert cls.type == mate.type
        assert (cls.type == "C") == (cls.twisted_dual != tuple(lam))


def test_fs_rule_examples():
    su2 = build_root_data("SU2")
    for n in range(6):
        expect = "R" if n % 2 == 0 else "H"
        assert fs_rule_type(su2, (n,)) == expect
    sp2 = build_root_data("Sp2")
    assert fs_rule_type(sp2, (1, 0)) == "H"
    assert fs_rule_type(sp2, (0, 1)) == "R"
    su3 = build_root_data("SU3")
    with pytest.raises(ValueError):
        fs_rule_type(su3, (1, 0))  # not self-dual


def test_split_examples():
    su3 = build_root_data("SU3")
    s = split_fundamentals(su3, Involution(su3, "sigmaR"))
    assert (s.r, s.s, s.t) == (2, 0, 0)
    s = split_fundamentals(su3, Involution(su3, "trivial"))
    assert (s.r, s.s, s.t) == (0, 0, 1)
    assert s.cplx == ((0, 1),)  # lexicographically smaller member
    assert s.pairs == (((0, 1), (1, 0)),)
    su4 = build_root_data("SU4")
    s = split_fundamentals(su4, Involution(su4, "sigmaH"))
    assert s.real == ((0, 1, 0),)
    assert s.quat == ((1, 0, 0), (0, 0, 1))
    assert (s.r, s.s, s.t) == (1, 2, 0)
    sp2 = build_root_data("Sp2")
    s = split_fundamentals(sp2, Involution(sp2, "trivial"))
    assert s.quat == ((1, 0),) and s.real == ((0, 1),)


def test_split_counts_cover_fundamentals():
    for name, kind in [("SU5", "trivial"), ("SU5", "sigmaR"),
                       ("SU4", "trivial"), ("Sp3", "trivial")]:
        rd = build_root_data(name)
        s = split_fundamentals(rd, Involution(rd, kind))
        assert s.r + s.s + 2 * s.t == len(rd.fundamental_weights())


def test_override_priority():
    su2 = build_root_data("SU2")
    inv = Involution(su2, "trivial", overrides={(1,): "R"})
    cls = classify_type(su2, inv, (1,))
    assert cls.type == "R" and cls.provenance == "override"
    # the rule would have said H
    cls2 = classify_type(su2, Involution(su2, "trivial"), (1,))
    assert cls2.type == "H" and cls2.provenance == "rule"


def test_unclassifiable_catalog_gap():
    e8 = build_root_data("E8")
    inv = Involution(e8, "sigmaR")
    with pytest.raises(UnclassifiableError):
        classify_type(e8, inv, (1, 0, 0, 0, 0, 0, 0, 0))


def test_un_trivial_split_has_no_catalog():
    u2 = build_root_data("U2")
    with pytest.raises(UnclassifiableError):
        split_fundamentals(u2, Involution(u2, "trivial"))


def test_un_sigma_involutions():
    u2 = build_root_data("U2")
    s = split_fundamentals(u2, Involution(u2, "sigmaR"))
    assert (s.r, s.s, s.t) == (2, 0, 0)
    s = split_fundamentals(u2, Involution(u2, "sigmaH"))
    assert s.quat == ((1, 0),) and s.real == ((1, 1),)
    with pytest.raises(InvolutionSpecError):
        Involution(build_root_data("U3"), "sigmaH")
    with pytest.raises(InvolutionSpecError):
        Involution(build_root_data("SU3"), "sigmaH")


def test_product_involutions():
    rd = build_root_data("SU2xSU2")
    inv = Involution(rd, ("trivial", "trivial"))
    # H (x) H = R across factors
    cls = classify_type(rd, inv, (1, 1))
    assert cls.type == "R"
    assert classify_type(rd, inv, (1, 0)).type == "H"
    s = split_fundamentals(rd, inv)
    assert (s.r, s.s, s.t) == (0, 2, 0)
    with pytest.raises(InvolutionSpecError):
        Involution(rd, ("trivial",))


def test_tensor_type_bookkeeping():
    """R (x) R and H (x) H products contain only self-twisted-dual parts."""
    for name in ("SU2", "Sp2"):
        rd = build_root_data(name)
        inv = Involution(rd, "trivial")
        funds = rd.fundamental_weights()
        for a, b in itertools.product(funds, repeat=2):
            ta = classify_type(rd, inv, a).type
            tb = classify_type(rd, inv, b).type
            if ta == "C" or tb == "C" or ta != tb:
                continue
            for nu in tensor_decompose(rd, a, b):
                assert inv.twisted_dual_weight(nu) == nu


def test_irrep_class_invariants():
    su3 = build_root_data("SU3")
    inv = Involution(su3, "trivial")
    cls = classify_type(su3, inv, (2, 0))
    assert cls.type == "C"
    assert weyl_dimension(su3, cls.weight) == weyl_dimension(su3, cls.twisted_dual)
