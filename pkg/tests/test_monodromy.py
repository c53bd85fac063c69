import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realkn.exact_linalg import IntMatrix, mat_mul, mat_pow
from realkn.monodromy import (
    T1,
    T2,
    T3,
    AffineElement,
    AffineMonodromyRep,
    MonodromyError,
    NotOrthogonal,
    NotPrimitive,
    PartialPresentation,
    Presentation,
    UnknownGenerator,
    coboundary,
    compose,
    focus_focus_shear,
    free_rep,
    h1_theta,
    invert_word,
    is_cocycle,
    livne_moishezon_rep,
    parse_letter,
    random_word,
    sphere_presentation,
    twisted_product,
    verify,
)
from realkn.affine_complex import builtin_quartic_k3

from conftest import random_rep, reps

I2 = IntMatrix.identity(2)


# --- independent oracle: numpy evaluation of the twisted rule --------------


def oracle_compose(rep, word):
    """Evaluate a word letter by letter with numpy, inverses via float inverse."""
    n = rep.rank
    T = np.eye(n, dtype=np.int64)
    lam = np.zeros(n, dtype=np.int64)
    th = np.zeros(n, dtype=np.int64)
    for item in word:
        name, e = parse_letter(item) if isinstance(item, str) else item
        Tg = np.array(rep.linear[name].tolist(), dtype=np.int64)
        lg = np.array(rep.translation[name], dtype=np.int64)
        tg = np.array(rep.theta[name], dtype=np.int64)
        if e == -1:
            Ti = np.rint(np.linalg.inv(Tg)).astype(np.int64)
            Tg, lg, tg = Ti, -(lg @ Ti), (tg @ Ti) % 2
        # the letter runs after everything so far: new = letter . acc
        lam = lg @ T + lam
        th = (tg @ T + th) % 2
        T = Tg @ T
    return T.tolist(), lam.tolist(), th.tolist()


def as_lists(el):
    return el.T.tolist(), list(el.lam), list(el.theta)


def gf2_rank_oracle(rows):
    rows = [list(r) for r in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % 2), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % 2:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def brute_h1_dimension(rep):
    """Count cocycles and coboundaries by enumerating every assignment."""
    n, gens = rep.rank, rep.generators
    cocycles = set()
    for bits in itertools.product((0, 1), repeat=n * len(gens)):
        theta = {g: bits[i * n : (i + 1) * n] for i, g in enumerate(gens)}
        probe = rep.with_theta(theta)
        if all(not any(oracle_compose(probe, rel)[2]) for rel in rep.presentation.relations):
            cocycles.add(bits)
    cobs = set()
    for phi in itertools.product((0, 1), repeat=n):
        vec = []
        for g in gens:
            T = np.array(rep.linear[g].tolist())
            vec += list((np.array(phi) @ T + np.array(phi)) % 2)
        cobs.add(tuple(int(x) for x in vec))
    return int(np.log2(len(cocycles))), int(np.log2(len(cobs)))


# --- presentations -----------------------------------------------------------


@pytest.mark.parametrize("k", [24, 3])
def test_sphere_presentation(k):
    p = sphere_presentation(k, 2)
    assert len(p.generators) == k
    assert len(p.relations) == 1 and len(p.relations[0]) == k


def test_sphere_presentation_empty():
    p = sphere_presentation(0, 2)
    assert p.generators == () and p.relations == ()


def test_relation_with_unknown_generator():
    with pytest.raises(UnknownGenerator):
        Presentation(2, ("a",), (("b",),))


def test_word_parsing():
    assert parse_letter("g^-1") == ("g", -1)
    assert parse_letter("g") == ("g", 1)
    assert invert_word(["a", "b^-1"]) == (("b", 1), ("a", -1))
    with pytest.raises(MonodromyError):
        parse_letter("")


# --- shears ------------------------------------------------------------------


@pytest.mark.parametrize(
    "d, n, expected",
    [((0, 1), (1, 0), T1), ((1, 1), (1, -1), T2), ((1, 0), (0, -1), T3)],
)
def test_shear_matrices(d, n, expected):
    assert focus_focus_shear(d, n) == expected


def test_shear_rejects_bad_input():
    with pytest.raises(NotOrthogonal):
        focus_focus_shear((1, 0), (1, 0))
    with pytest.raises(NotPrimitive):
        focus_focus_shear((2, 0), (0, 1))


def test_reversed_conormal_gives_inverse():
    assert mat_mul(focus_focus_shear((0, 1), (1, 0)), focus_focus_shear((0, 1), (-1, 0))) == I2


@given(st.integers(-20, 20), st.integers(-20, 20), st.booleans())
def test_shear_is_unipotent(a, b, flip):
    from math import gcd

    if gcd(a, b) != 1:
        return
    d = (a, b)
    n = (b, -a) if flip else (-b, a)
    T = np.array(focus_focus_shear(d, n).tolist())
    N = T - np.eye(2, dtype=int)
    assert (N @ N == 0).all()
    assert round(np.linalg.det(T)) == 1


# --- composition -------------------------------------------------------------


def two_gen_rep():
    pres = Presentation(2, ("g1", "g2"), ())
    return AffineMonodromyRep(pres, {"g1": T1, "g2": T3}, {"g1": (1, 0), "g2": (0, 1)})


def test_empty_word_is_identity():
    assert compose(two_gen_rep(), []).is_identity()


def test_twisted_translation_by_hand():
    el = compose(two_gen_rep(), ["g1", "g2"])
    assert el.lam == (2, 1)  # (0,1).T1 + (1,0)
    assert el.T == mat_mul(T3, T1)
    assert as_lists(el) == oracle_compose(two_gen_rep(), ["g1", "g2"])


@pytest.mark.parametrize("g", ["g1", "g2"])
def test_letter_times_inverse(g):
    assert compose(two_gen_rep(), [g, g + "^-1"]).is_identity()
    assert compose(two_gen_rep(), [g + "^-1", g]).is_identity()


def test_twisted_product_matches_then():
    a = AffineElement(T1, (1, 2), (1, 0))
    b = AffineElement(T2, (0, -1), (1, 1))
    assert a.then(b) == twisted_product(a, b)


@given(reps(), st.integers(0, 2**32 - 1), st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=150, deadline=None)
def test_cocycle_law(rep, seed, l1, l2):
    rng = random.Random(seed)
    w1 = random_word(rng, rep.generators, l1)
    w2 = random_word(rng, rep.generators, l2)
    whole = compose(rep, w1 + w2)
    assert whole == twisted_product(compose(rep, w1), compose(rep, w2))
    assert as_lists(whole) == oracle_compose(rep, w1 + w2)
    assert whole.T.det() in (1, -1)


@given(reps(), st.integers(0, 2**32 - 1), st.integers(0, 10))
@settings(max_examples=100, deadline=None)
def test_word_times_inverse(rep, seed, length):
    w = random_word(random.Random(seed), rep.generators, length)
    assert compose(rep, w + invert_word(w)).is_identity()


# --- verification ------------------------------------------------------------


def test_livne_moishezon_verifies():
    rep = livne_moishezon_rep()
    assert verify(rep).ok
    assert mat_pow(mat_mul(T1, T3), 12) == I2
    el = compose(rep, rep.presentation.relations[0])
    assert as_lists(el) == oracle_compose(rep, rep.presentation.relations[0])
    assert el.is_identity()


def test_partial_quartic_verifies_with_notice():
    report = verify(builtin_quartic_k3().rep)
    assert report.ok
    assert "partial presentation: relations skipped" in report.notices


def test_det_two_fails():
    rep = free_rep({"a": [[2, 0], [0, 1]]})
    report = verify(rep)
    assert not report.ok
    assert report.failures[0]["kind"] == "NotUnimodular"


def test_violated_relation_reported():
    pres = Presentation(2, ("a",), (("a",),))
    report = verify(AffineMonodromyRep(pres, {"a": T1}))
    assert [f["kind"] for f in report.failures] == ["RelationViolated"]


# --- cohomology --------------------------------------------------------------


def test_h1_free_identity():
    res = h1_theta(free_rep({"g": [[1, 0], [0, 1]]}))
    assert (res.dimension, res.cocycle_dimension, res.coboundary_dimension) == (2, 2, 0)


def test_h1_free_t1():
    res = h1_theta(free_rep({"g": T1.tolist()}))
    assert (res.dimension, res.cocycle_dimension, res.coboundary_dimension) == (1, 2, 1)
    assert gf2_rank_oracle((np.array(T1.tolist()) + np.eye(2, dtype=int)) % 2) == 1


def test_h1_trivial_group():
    rep = AffineMonodromyRep(Presentation(2, (), ()), {})
    assert h1_theta(rep).dimension == 0


def test_h1_partial_refused():
    with pytest.raises(PartialPresentation):
        h1_theta(builtin_quartic_k3().rep)


def small_sphere_reps():
    inv = lambda m: IntMatrix.of(np.rint(np.linalg.inv(np.array(m.tolist()))).astype(int).tolist())  # noqa: E731
    yield AffineMonodromyRep(sphere_presentation(2, 2), {"gamma1": T1, "gamma2": inv(T1)})
    third = inv(mat_mul(T3, T1))
    yield AffineMonodromyRep(sphere_presentation(3, 2), {"gamma1": T1, "gamma2": T3, "gamma3": third})
    yield AffineMonodromyRep(sphere_presentation(3, 2), {"gamma1": T2, "gamma2": inv(T2), "gamma3": I2})


@pytest.mark.parametrize("rep", list(small_sphere_reps()))
def test_h1_against_enumeration(rep):
    assert verify(rep).ok
    z, b = brute_h1_dimension(rep)
    res = h1_theta(rep)
    assert (res.cocycle_dimension, res.coboundary_dimension, res.dimension) == (z, b, z - b)


def test_h1_livne_moishezon_dimensions():
    rep = livne_moishezon_rep()
    # relation map: theta_j is twisted by the product of the earlier letters
    cols, acc = [], np.eye(2, dtype=int)
    for g in rep.generators:
        cols.append(acc % 2)
        acc = np.array(rep.linear[g].tolist()) @ acc
    relation_rank = gf2_rank_oracle(np.vstack(cols).T)
    cob_rank = gf2_rank_oracle(
        [np.concatenate([(np.eye(2, dtype=int)[i] @ (np.array(rep.linear[g].tolist()) + np.eye(2, dtype=int))) % 2 for g in rep.generators]) for i in range(2)]
    )
    res = h1_theta(rep, max_classes=4)
    assert res.cocycle_dimension == 48 - relation_rank == 46
    assert res.coboundary_dimension == cob_rank == 2
    assert res.dimension == 44
    assert res.truncated and len(res.representatives) == 4


@pytest.mark.parametrize("rep", [livne_moishezon_rep(), *small_sphere_reps()])
def test_representatives_and_shifts_are_cocycles(rep):
    res = h1_theta(rep, max_classes=16)
    assert not any(any(v) for v in res.representatives[0].values())
    for r in res.representatives:
        assert is_cocycle(rep, r)
        for phi in itertools.product((0, 1), repeat=rep.rank):
            cob = coboundary(rep, phi)
            shifted = {g: tuple((a + b) % 2 for a, b in zip(r[g], cob[g])) for g in rep.generators}
            assert is_cocycle(rep, shifted)


def test_random_rep_helper_is_unimodular(rng):
    for _ in range(20):
        rep = random_rep(rng, rng.randint(1, 4), 3)
        assert verify(rep).ok
