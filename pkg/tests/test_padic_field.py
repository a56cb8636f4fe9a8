import pytest

from q2quartic.errors import InvalidParams
from q2quartic.padic.field import (
    TRIVIAL,
    UNRAMIFIED,
    field_from_spec,
    ramified_quadratic,
)
from q2quartic.params import MinusOneClass


def exhaustive_square_classes_mod32():
    # odd squares mod 32 determine unit square classes of Q2
    squares = {(x * x) % 32 for x in range(1, 32, 2)}
    return squares


def test_is_square_q2_vs_exhaustive(Q2):
    squares_mod32 = exhaustive_square_classes_mod32()
    for n in range(1, 64, 2):
        assert Q2.is_square(Q2.from_int(n)) == (n % 32 in squares_mod32), n
    assert not Q2.is_square(Q2.from_int(2))
    assert Q2.is_square(Q2.from_int(4))
    assert not Q2.is_square(Q2.from_int(-4))


def test_hecke_disc_q2(Q2):
    cases = {3: 2, 5: UNRAMIFIED, 2: 3, 9: TRIVIAL, -1: 2, -2: 3, 7: 2, 10: 3, 17: TRIVIAL}
    for n, want in cases.items():
        assert Q2.hecke_disc(Q2.from_int(n)) == want, n


def test_square_class_reps_q2(Q2):
    reps = Q2.square_class_reps()
    assert len(reps) == 8
    R = Q2.ring
    # pairwise inequivalent: the product of two distinct classes is not a square
    for i in range(8):
        assert Q2.is_square(R.mul(reps[i], reps[i]))
        for j in range(i + 1, 8):
            assert not Q2.is_square(R.mul(reps[i], reps[j]))
    # exactly one class generates the unramified quadratic extension
    unram = [r for r in reps if Q2.hecke_disc(r) == UNRAMIFIED]
    assert len(unram) == 1
    # the classical representatives {1,5,3,7,2,10,6,14} land in distinct classes
    classic = [1, 5, 3, 7, 2, 10, 6, 14]
    matched = set()
    for n in classic:
        x = Q2.from_int(n)
        hits = [i for i, r in enumerate(reps) if Q2.is_square(R.mul(x, r))]
        assert len(hits) == 1
        matched.add(hits[0])
    assert len(matched) == 8


@pytest.mark.parametrize(
    "spec,size",
    [({"f": 2}, 16), ({"f": 1, "eisenstein": [-2, 0, 1]}, 16)],
)
def test_square_class_reps_sizes(spec, size):
    K = field_from_spec(spec)
    reps = K.square_class_reps()
    assert len(reps) == size
    R = K.ring
    for i in range(size):
        for j in range(i + 1, size):
            assert not K.is_square(R.mul(reps[i], reps[j]))
    assert sum(1 for r in reps if K.hecke_disc(r) == UNRAMIFIED) == 1


def brute_hilbert(a, b, modulus=32):
    # z^2 = a x^2 + b y^2 with a primitive solution mod 2^5; primitive
    # solutions of these small-valuation forms lift by Hensel's lemma
    for x in range(modulus):
        for y in range(modulus):
            for z in range(modulus):
                if x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
                    continue
                if (z * z - a * x * x - b * y * y) % modulus == 0:
                    return 1
    return -1


@pytest.mark.parametrize("a", [-1, 2, 3, 5, -2, 1])
@pytest.mark.parametrize("b", [-1, 2, 3, 5, -10, 1])
def test_hilbert_symbol_vs_brute(Q2, a, b):
    assert Q2.hilbert_symbol(Q2.from_int(a), Q2.from_int(b)) == brute_hilbert(a, b)


def test_hilbert_symbol_symmetry_bimultiplicative(Q2):
    R = Q2.ring
    reps = Q2.square_class_reps()
    for a in reps:
        for b in reps:
            assert Q2.hilbert_symbol(a, b) == Q2.hilbert_symbol(b, a)
    a = reps[5]
    for b in reps:
        for c in reps:
            assert Q2.hilbert_symbol(a, R.mul(b, c)) == Q2.hilbert_symbol(a, b) * Q2.hilbert_symbol(a, c)


def test_derive_params_examples(Q2):
    assert Q2.derive_params().to_json() == {
        "e": 1, "f": 1, "q": 2, "d_minus_one": 2, "minus_one_class": "ramified",
    }
    # Q2(sqrt(3)) via the Eisenstein polynomial of 1+sqrt(3)
    k3 = field_from_spec({"f": 1, "eisenstein": [-2, -2, 1]})
    p3 = k3.derive_params()
    assert (p3.e, p3.f, p3.d_minus_one, p3.minus_one_class) == (2, 1, 0, MinusOneClass.UNRAMIFIED)
    # Q2(i) via the Eisenstein polynomial of 1+i
    ki = field_from_spec({"f": 1, "eisenstein": [2, -2, 1]})
    pi = ki.derive_params()
    assert (pi.e, pi.f, pi.d_minus_one, pi.minus_one_class) == (2, 1, 0, MinusOneClass.SQUARE)


def test_ramified_quadratic_structure(Q2):
    R = Q2.ring
    E = ramified_quadratic(Q2, Q2.from_int(2))
    # norm of x + y*sqrt(2) is x^2 - 2 y^2 in the sqrt-basis
    assert E.norm_pair(Q2.from_int(2), Q2.from_int(1), Q2.from_int(2)) == Q2.from_int(2)
    # in the theta-basis theta = sqrt(2), so N(theta) = -2
    assert E.norm((R.zero, R.one)) == Q2.from_int(-2)
    sx, sy = E.sqrt_d
    # sqrt_d squared equals d inside E
    ER = E.ring
    sd = (sx, sy)
    sq = ER.mul(sd, sd)
    assert sq == (Q2.from_int(2), R.zero)
    # unit-class extension: d = -1
    Em = ramified_quadratic(Q2, Q2.from_int(-1))
    sd = Em.sqrt_d
    assert Em.ring.mul(sd, sd) == (Q2.from_int(-1), R.zero)
    with pytest.raises(InvalidParams):
        ramified_quadratic(Q2, Q2.from_int(9))
    with pytest.raises(InvalidParams):
        ramified_quadratic(Q2, Q2.from_int(5))


def test_field_spec_validation():
    with pytest.raises(InvalidParams):
        field_from_spec({"f": 1, "eisenstein": [3, 0, 1]})  # constant not valuation 1
    with pytest.raises(InvalidParams):
        field_from_spec({"f": 1, "eisenstein": [2, 1, 1]})  # middle coefficient a unit
    with pytest.raises(InvalidParams):
        field_from_spec({"f": 1, "eisenstein": [2, 0, 3]})  # not monic
    with pytest.raises(InvalidParams):
        field_from_spec({"e": 2})
    with pytest.raises(InvalidParams):
        field_from_spec({"f": 1, "e": 2})
    # digit-list coefficients: [[0,1],[1]] encodes y + 2, i.e. Q2 itself
    K = field_from_spec({"f": 1, "eisenstein": [[0, 1], [1]]})
    assert K.e_abs == 1 and K.f == 1
    assert K.derive_params().d_minus_one == 2


def test_arith_dispatch(Q2):
    from q2quartic.padic.field import arith, element

    one = element(Q2, 1)
    three = element(Q2, 3)
    assert arith("add", one, one).data == Q2.from_int(2)
    assert arith("mul", arith("inv", three), three).data == Q2.ring.one
    assert arith("neg", one).data == Q2.from_int(-1)
    with pytest.raises(InvalidParams):
        arith("div", one, one)


def test_norm_quad_examples(Q2):
    from q2quartic.padic.field import ramified_quadratic

    E2 = ramified_quadratic(Q2, Q2.from_int(2))
    assert E2.norm_pair(Q2.from_int(2), Q2.from_int(1), Q2.from_int(2)) == Q2.from_int(2)
    d = Q2.from_int(-10)
    Em = ramified_quadratic(Q2, d)
    assert Em.norm_pair(Q2.ring.zero, Q2.ring.one, d) == Q2.from_int(10)  # N(sqrt(d)) = -d
    Ei = ramified_quadratic(Q2, Q2.from_int(-1))
    assert Ei.norm_pair(Q2.ring.one, Q2.ring.one, Q2.from_int(-1)) == Q2.from_int(2)


def test_classify_tower_examples(Q2):
    from q2quartic.padic.quartic import classify_tower
    from q2quartic.params import GroupTag

    two = Q2.from_int(2)
    # alpha = 2 + sqrt(2): norm 2 lies in 2 * squares
    assert classify_tower(Q2, two, (Q2.from_int(2), Q2.from_int(1))) is GroupTag.C4
    # alpha = sqrt(2): norm -2
    assert classify_tower(Q2, two, (Q2.ring.zero, Q2.ring.one)) is GroupTag.D4
    # alpha = i over E = Q2(i): norm 1 is a square
    assert classify_tower(Q2, Q2.from_int(-1), (Q2.ring.zero, Q2.ring.one)) is GroupTag.V4
