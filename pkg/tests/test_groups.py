import random

import pytest

from eqkr.groups import (
    DominanceError,
    UnsupportedGroupError,
    build_root_data,
    character,
    dual_highest_weight,
    parse_group,
    restrict_to_torus,
    tensor_decompose,
    weyl_dimension,
)


# ---------------------------------------------------------------------------
# brute-force Weyl group oracle
# ---------------------------------------------------------------------------

def _reflection_matrix(rd, i):
    dim = rd.dim
    cols = [rd.reflect_simple(tuple(1 if k == j else 0 for k in range(dim)), i)
            for j in range(dim)]
    return tuple(tuple(cols[j][k] for j in range(dim)) for k in range(dim))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def weyl_group(rd):
    """Closure of the simple reflections, as matrices on weight tuples."""
    eye = tuple(tuple(int(i == j) for j in range(rd.dim))
                for i in range(rd.dim))
    gens = [_reflection_matrix(rd, i) for i in range(rd.n_simple())]
    seen = {eye}
    todo = [eye]
    while todo:
        m = todo.pop()
        for g in gens:
            m2 = _matmul(g, m)
            if m2 not in seen:
                seen.add(m2)
                todo.append(m2)
    return seen


def _apply(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v)))
                 for i in range(len(v)))


def test_su2_root_data_smallest_case():
    rd = build_root_data("SU2")
    assert rd.rank == 1
    assert len(rd.positive_roots()) == 1
    assert rd.w0_matrix() == ((-1,),)


def test_su4_root_data_against_weyl_enumeration():
    rd = build_root_data("SU4")
    w = weyl_group(rd)
    assert len(w) == 24  # S_4
    assert len(rd.positive_roots()) == 6
    # w0 is the unique element sending rho to -rho, and equals -(flip)
    rho = rd.rho_vec()
    w0s = [m for m in w if _apply(m, rho) == tuple(-x for x in rho)]
    assert len(w0s) == 1
    assert rd.w0_matrix() == w0s[0]
    flip = ((0, 0, -1), (0, -1, 0), (-1, 0, 0))
    assert rd.w0_matrix() == flip


def test_sp2_root_data_against_weyl_enumeration():
    rd = build_root_data("Sp2")
    w = weyl_group(rd)
    assert len(w) == 8
    assert len(rd.positive_roots()) == 4
    assert rd.diagram_automorphisms() == ((0, 1),)  # trivial group
    rho = rd.rho_vec()
    w0s = [m for m in w if _apply(m, rho) == tuple(-x for x in rho)]
    assert rd.w0_matrix() == w0s[0]


def test_w0_negates_positive_roots():
    for name in ("SU3", "Sp2", "Spin7", "G2"):
        rd = build_root_data(name)
        w0 = rd.w0_matrix()
        pos = {rd.root_to_weight(c) for c in rd.positive_roots()}
        neg = {tuple(-x for x in v) for v in pos}
        assert {_apply(w0, v) for v in pos} == neg


def test_cartan_matrix_invariants():
    for name in ("SU5", "Sp3", "Spin8", "G2", "F4", "E6"):
        rd = build_root_data(name)
        a = rd.cartan
        for i in range(rd.rank):
            assert a[i][i] == 2
            for j in range(rd.rank):
                if i != j:
                    assert a[i][j] <= 0
        # <omega_i, alpha_j^vee> = delta: reflections act on fundamentals
        for i, w in enumerate(rd.fundamental_weights()):
            for j in range(rd.rank):
                assert rd.pairing_simple(w, j) == int(i == j)


# ---------------------------------------------------------------------------
# dimensions and characters
# ---------------------------------------------------------------------------

def test_weyl_dimension_su2_classical():
    rd = build_root_data("SU2")
    for n in range(8):
        assert weyl_dimension(rd, (n,)) == n + 1


def test_weyl_dimension_su3_hand_value():
    rd = build_root_data("SU3")
    assert weyl_dimension(rd, (1, 0)) == 3
    assert weyl_dimension(rd, (1, 1)) == 8


def test_weyl_dimension_sp2_against_character_mass():
    rd = build_root_data("Sp2")
    assert weyl_dimension(rd, (0, 1)) == 5
    for lam in [(1, 0), (0, 1), (1, 1), (2, 0)]:
        assert sum(character(rd, lam).values()) == weyl_dimension(rd, lam)


def test_character_su2():
    rd = build_root_data("SU2")
    assert character(rd, (2,)) == {(2,): 1, (0,): 1, (-2,): 1}


def test_character_su3_adjoint_freudenthal_by_hand():
    rd = build_root_data("SU3")
    ch = character(rd, (1, 1))
    assert ch[(0, 0)] == 2
    roots = {rd.root_to_weight(c) for c in rd.positive_roots()}
    for r in roots:
        assert ch[r] == 1
        assert ch[tuple(-x for x in r)] == 1
    assert sum(ch.values()) == 8


def test_character_sp2_defining_orbit():
    rd = build_root_data("Sp2")
    ch = character(rd, (1, 0))
    assert len(ch) == 4
    assert set(ch.values()) == {1}
    assert ch == {w: 1 for w in rd.orbit((1, 0))}


def test_character_weyl_invariance():
    for name, lam in [("SU3", (2, 1)), ("Sp2", (1, 1)), ("Spin7", (0, 0, 1))]:
        rd = build_root_data(name)
        ch = character(rd, lam)
        for i in range(rd.n_simple()):
            assert all(ch[rd.reflect_simple(w, i)] == m for w, m in ch.items())


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------

def test_tensor_su2_clebsch_gordan():
    rd = build_root_data("SU2")
    assert tensor_decompose(rd, (1,), (1,)) == {(2,): 1, (0,): 1}
    assert tensor_decompose(rd, (2,), (1,)) == {(3,): 1, (1,): 1}


def test_tensor_su3_examples_against_character_product():
    rd = build_root_data("SU3")
    assert tensor_decompose(rd, (1, 0), (0, 1)) == {(1, 1): 1, (0, 0): 1}
    assert tensor_decompose(rd, (1, 0), (1, 0)) == {(2, 0): 1, (0, 1): 1}


def _char_product(rd, a, b):
    out = {}
    for w1, m1 in character(rd, a).items():
        for w2, m2 in character(rd, b).items():
            w = tuple(x + y for x, y in zip(w1, w2))
            out[w] = out.get(w, 0) + m1 * m2
    return out


@pytest.mark.parametrize("name,pairs", [
    ("SU3", [((1, 0), (0, 1)), ((1, 1), (1, 0)), ((2, 0), (2, 0))]),
    ("Sp2", [((1, 0), (1, 0)), ((0, 1), (1, 0)), ((1, 1), (0, 1))]),
    ("SU4", [((1, 0, 0), (0, 0, 1)), ((0, 1, 0), (0, 1, 0))]),
])
def test_tensor_is_character_homomorphism(name, pairs):
    rd = build_root_data(name)
    for a, b in pairs:
        dec = tensor_decompose(rd, a, b)
        total = {}
        for nu, m in dec.items():
            for w, k in character(rd, nu).items():
                total[w] = total.get(w, 0) + m * k
                if total[w] == 0:
                    del total[w]
        assert total == _char_product(rd, a, b)
        dims = sum(m * weyl_dimension(rd, nu) for nu, m in dec.items())
        assert dims == weyl_dimension(rd, a) * weyl_dimension(rd, b)


def test_duality():
    su3 = build_root_data("SU3")
    assert dual_highest_weight(su3, (1, 0)) == (0, 1)
    sp3 = build_root_data("Sp3")
    for lam in [(1, 0, 0), (0, 1, 0), (2, 1, 0)]:
        assert dual_highest_weight(sp3, lam) == lam  # w0 = -1 in type C
    rng = random.Random(3)
    for name in ("SU4", "Spin7", "G2"):
        rd = build_root_data(name)
        for _ in range(5):
            lam = tuple(rng.randrange(3) for _ in range(rd.rank))
            assert dual_highest_weight(rd, dual_highest_weight(rd, lam)) == lam


def test_determinism():
    a = character(build_root_data("SU3"), (2, 1))
    b = character(build_root_data("SU3"), (2, 1))
    assert a == b
    assert tensor_decompose(build_root_data("Sp2"), (1, 1), (1, 0)) == \
        tensor_decompose(build_root_data("Sp2"), (1, 1), (1, 0))


# ---------------------------------------------------------------------------
# U(n) and products
# ---------------------------------------------------------------------------

def test_un_torus_restriction_examples():
    u1 = build_root_data("U1")
    assert restrict_to_torus(u1, (1,)) == {(1,): 1}
    u2 = build_root_data("U2")
    assert restrict_to_torus(u2, (1, 0)) == {(1, 0): 1, (0, 1): 1}
    assert restrict_to_torus(u2, (1, 1)) == {(1, 1): 1}


def test_un_arithmetic():
    u2 = build_root_data("U2")
    assert weyl_dimension(u2, (1, 0)) == 2
    assert weyl_dimension(u2, (2, 0)) == 3
    assert dual_highest_weight(u2, (1, 0)) == (0, -1)
    assert tensor_decompose(u2, (1, 0), (1, 0)) == {(2, 0): 1, (1, 1): 1}
    assert tensor_decompose(u2, (1, 0), (0, -1)) == {(1, -1): 1, (0, 0): 1}
    u3 = build_root_data("U3")
    ch = restrict_to_torus(u3, (1, 1, 0))
    assert ch == {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}


def test_products():
    rd = build_root_data("SU2xSU2")
    assert weyl_dimension(rd, (1, 1)) == 4
    assert tensor_decompose(rd, (1, 0), (1, 0)) == {(2, 0): 1, (0, 0): 1}
    ch = character(rd, (1, 1))
    assert sum(ch.values()) == 4


def test_group_spec_validation():
    with pytest.raises(UnsupportedGroupError):
        parse_group("SU1")
    with pytest.raises(UnsupportedGroupError):
        parse_group("Spin4")
    with pytest.raises(UnsupportedGroupError):
        parse_group("E9")
    with pytest.raises(UnsupportedGroupError):
        parse_group("bogus")
    assert str(parse_group("SU2xSp3")) == "SU2xSp3"


def test_dominance_errors():
    rd = build_root_data("SU3")
    with pytest.raises(DominanceError):
        weyl_dimension(rd, (-1, 0))
    with pytest.raises(DominanceError):
        character(rd, (1,))
