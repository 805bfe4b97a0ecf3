"""Tests for the graded polynomial towers."""

import pytest
from hypothesis import given, settings, strategies as st

from ccalc.rings import (
    CyclicTower,
    DegreeMismatch,
    DuplicateGenerator,
    NonMonicRelation,
    NonUnique,
    NotDivisible,
    NotSymmetric,
    Poly,
    Ring,
    RingMismatch,
    TruncationExceeded,
    UnknownGenerator,
    exact_divide,
    substitute,
    symmetric_reduce,
)


def chern_ring(cap=None):
    """Z[c1,c2,c3][t] with t^3 + c1 t^2 + c2 t + c3 = 0."""
    return Ring(
        [("c1", 1), ("c2", 2), ("c3", 3), ("t", 1)],
        relations={
            "t": (3, [[(1, {"c1": 1})], [(1, {"c2": 1})], [(1, {"c3": 1})]])
        },
        cap=cap,
    )


def root_ring():
    """Z[l1,l2,l3][h][s,t]: h capped-free, s and t both split cubic fibers."""
    rel = lambda: (
        3,
        [
            [(-1, {"l1": 1}), (-1, {"l2": 1}), (-1, {"l3": 1})],
            [(1, {"l1": 1, "l2": 1}), (1, {"l1": 1, "l3": 1}), (1, {"l2": 1, "l3": 1})],
            [(-1, {"l1": 1, "l2": 1, "l3": 1})],
        ],
    )
    return Ring(
        ["l1", "l2", "l3", "h", "s", "t"],
        relations={"s": rel(), "t": rel(), "h": None},
        cap=6,
    )


# -- construction and guards -------------------------------------------------


def test_duplicate_generator_rejected():
    with pytest.raises(DuplicateGenerator):
        Ring(["h", "h"])


def test_unknown_generator_in_relation():
    with pytest.raises(UnknownGenerator):
        Ring(["h"], relations={"t": (2, [[], []])})


def test_relation_referencing_later_generator_rejected():
    # coefficient of the s-relation may not mention t
    with pytest.raises(CyclicTower):
        Ring(
            ["s", "t"],
            relations={"s": (2, [[(1, {"t": 1})], []]), "t": (2, [[], []])},
        )


def test_relation_referencing_itself_rejected():
    with pytest.raises(CyclicTower):
        Ring(["t"], relations={"t": (2, [[(1, {"t": 1})], []])})


def test_inhomogeneous_relation_coefficient_rejected():
    with pytest.raises(DegreeMismatch):
        Ring(
            [("c2", 2), "t"],
            relations={"t": (3, [[(1, {"c2": 1})], [], []])},
        )


def test_omitted_relation_requires_cap():
    with pytest.raises(NonMonicRelation):
        Ring(["h"], relations={"h": None})


def test_mixed_ring_arithmetic_rejected():
    r1, r2 = chern_ring(), chern_ring()
    with pytest.raises(RingMismatch):
        r1.gen("t") + r2.gen("t")


# -- normal form -------------------------------------------------------------


def test_cubic_relation_t3():
    r = chern_ring()
    t, c1, c2, c3 = (r.gen(n) for n in ("t", "c1", "c2", "c3"))
    assert t ** 3 == -(c1 * t ** 2 + c2 * t + c3)


def test_cubic_relation_t4():
    r = chern_ring()
    t, c1, c2, c3 = (r.gen(n) for n in ("t", "c1", "c2", "c3"))
    assert t ** 4 == (c1 ** 2 - c2) * t ** 2 + (c1 * c2 - c3) * t + c1 * c3


def test_split_cubic_kills_product_of_roots():
    r = root_ring()
    s = r.gen("s")
    prod = (s - r.gen("l1")) * (s - r.gen("l2")) * (s - r.gen("l3"))
    assert prod.is_zero()


def test_cap_trips_only_above_working_degree():
    r = root_ring()
    h = r.gen("h")
    assert (h ** 6).degree() == 6  # degree == cap is still exact
    with pytest.raises(TruncationExceeded):
        h ** 7


def test_coefficient_extraction():
    r = chern_ring()
    t, c1 = r.gen("t"), r.gen("c1")
    p = t ** 3
    assert p.coefficient("t", 2) == -c1
    assert p.coefficient("t", 0) == -r.gen("c3")
    assert p.coefficient("t", 1) == -r.gen("c2")


def test_content():
    r = chern_ring()
    t, c1 = r.gen("t"), r.gen("c1")
    assert (6 * t - 15 * c1).content() == 3
    assert r.zero.content() == 0
    assert r.one.content() == 1


def test_str_rendering():
    r = Ring(
        [("c1", 1), "h"],
        display_order=["h", "c1"],
    )
    h, c1 = r.gen("h"), r.gen("c1")
    assert str(27 * h - 36 * c1) == "27*h - 36*c1"
    assert str(r.zero) == "0"
    assert str(-h) == "-h"
    assert str(h ** 2 + h) == "h + h^2"


# -- exact division ----------------------------------------------------------


def test_exact_divide_recovers_factor():
    r = chern_ring()
    t, c1, c2 = r.gen("t"), r.gen("c1"), r.gen("c2")
    num = (t + c1) * (t ** 2 + c2)
    assert exact_divide(num, t + c1) == t ** 2 + c2
    assert exact_divide(num, t ** 2 + c2) == t + c1


def test_exact_divide_not_divisible():
    r = root_ring()
    with pytest.raises(NotDivisible):
        exact_divide(r.gen("h") ** 2, r.gen("t"))


def test_exact_divide_fractional_quotient_rejected():
    r = chern_ring()
    with pytest.raises(NotDivisible):
        exact_divide(r.gen("c1"), r.const(2))


def test_exact_divide_reports_nonunique():
    # (s-l1)(s-l2) times anything kills (s-l3)-multiples, so the quotient of
    # den*h by den is only determined up to that kernel.
    r = root_ring()
    s, l1, l2 = r.gen("s"), r.gen("l1"), r.gen("l2")
    den = (s - l1) * (s - l2)
    with pytest.raises(NonUnique):
        exact_divide(den * r.gen("h"), den)


def test_exact_divide_zero_numerator():
    r = chern_ring()
    assert exact_divide(r.zero, r.gen("t")) == r.zero


# -- substitution ------------------------------------------------------------


def test_substitute_renames_and_maps():
    src = Ring([("c1", 1), "h", "s"], display_order=["h", "c1", "s"])
    dst = Ring([("c1", 1), "hz", "u"], display_order=["hz", "c1", "u"])
    p = 3 * src.gen("h") - 2 * src.gen("c1") - src.gen("s")
    q = substitute(p, {"h": "hz", "s": "u"}, target=dst)
    assert str(q) == "3*hz - 2*c1 - u"


def test_substitute_degree_checked():
    src = Ring(["h"])
    dst = Ring([("c2", 2)])
    with pytest.raises(DegreeMismatch):
        substitute(src.gen("h"), {"h": dst.gen("c2")}, target=dst)


def test_substitute_zero_image():
    r = chern_ring()
    p = r.gen("t") ** 2 + r.gen("c2")
    assert substitute(p, {"t": r.zero}) == r.gen("c2")


# -- symmetric reduction -----------------------------------------------------


def l_ring():
    return Ring(["l1", "l2", "l3", "h"])


def c_ring():
    return Ring([("c1", 1), ("c2", 2), ("c3", 3), "h"], display_order=["h", "c1", "c2", "c3"])


def test_symmetric_reduce_elementary():
    src, dst = l_ring(), c_ring()
    l1, l2, l3 = (src.gen(n) for n in ("l1", "l2", "l3"))
    assert symmetric_reduce(l1 + l2 + l3, dst) == -dst.gen("c1")
    assert symmetric_reduce(l1 * l2 + l1 * l3 + l2 * l3, dst) == dst.gen("c2")
    assert symmetric_reduce(l1 * l2 * l3, dst) == -dst.gen("c3")


def test_symmetric_reduce_power_sum():
    src, dst = l_ring(), c_ring()
    l1, l2, l3 = (src.gen(n) for n in ("l1", "l2", "l3"))
    c1, c2 = dst.gen("c1"), dst.gen("c2")
    # p2 = e1^2 - 2 e2 = c1^2 - 2 c2
    assert symmetric_reduce(l1 ** 2 + l2 ** 2 + l3 ** 2, dst) == c1 ** 2 - 2 * c2


def test_symmetric_reduce_carries_other_generators():
    src, dst = l_ring(), c_ring()
    p = src.gen("h") * (src.gen("l1") + src.gen("l2") + src.gen("l3"))
    assert symmetric_reduce(p, dst) == -dst.gen("h") * dst.gen("c1")


def test_symmetric_reduce_rejects_asymmetric():
    src, dst = l_ring(), c_ring()
    with pytest.raises(NotSymmetric):
        symmetric_reduce(src.gen("l1"), dst)
    with pytest.raises(NotSymmetric):
        symmetric_reduce(src.gen("l1") * src.gen("l2"), dst)


# -- property suites ---------------------------------------------------------

CHERN = chern_ring()

MONOS = [
    {},
    {"t": 1},
    {"t": 2},
    {"c1": 1},
    {"c2": 1},
    {"c1": 1, "t": 1},
    {"c1": 2},
    {"c3": 1},
    {"t": 3},
    {"t": 4},
    {"c1": 1, "t": 2},
]

raw_terms = st.lists(
    st.tuples(st.integers(min_value=-9, max_value=9), st.sampled_from(MONOS)),
    max_size=6,
)

chern_polys = raw_terms.map(CHERN.poly)


@settings(max_examples=300)
@given(raw_terms)
def test_normal_form_idempotent(raw):
    p = CHERN.poly(raw)
    raw_again = [
        (c, {CHERN.names[i]: e[i] for i in range(len(e)) if e[i]})
        for e, c in p.terms.items()
    ]
    assert CHERN.poly(raw_again) == p


@settings(max_examples=300)
@given(raw_terms, st.randoms())
def test_normal_form_order_independent(raw, rng):
    shuffled = list(raw)
    rng.shuffle(shuffled)
    assert CHERN.poly(raw) == CHERN.poly(shuffled)


@settings(max_examples=200)
@given(chern_polys, chern_polys, chern_polys)
def test_ring_axioms(a, b, c):
    r = CHERN
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + r.zero == a
    assert a * r.one == a
    assert a - a == r.zero


@settings(max_examples=200)
@given(chern_polys, chern_polys)
def test_exact_divide_inverts_multiplication(a, b):
    # keep inputs homogeneous for the division contract
    a = a.homogeneous_part(a.degree()) if not a.is_zero() else a
    b = b.homogeneous_part(b.degree()) if not b.is_zero() else b
    if b.is_zero():
        return
    try:
        q = exact_divide(a * b, b)
    except NonUnique:
        return
    assert q * b == a * b


@settings(max_examples=200)
@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-5, max_value=5),
            st.tuples(
                st.integers(min_value=0, max_value=2),
                st.integers(min_value=0, max_value=2),
                st.integers(min_value=0, max_value=2),
            ),
        ),
        max_size=5,
    )
)
def test_symmetric_reduce_round_trip(spec):
    """Symmetrize a random polynomial, reduce, expand back: must agree."""
    from itertools import permutations

    src, dst = l_ring(), c_ring()
    sym = src.zero
    for c, (a1, a2, a3) in spec:
        for p in set(permutations((a1, a2, a3))):
            sym = sym + src.poly([(c, {"l1": p[0], "l2": p[1], "l3": p[2]})])
    reduced = symmetric_reduce(sym, dst)
    # expand c1,c2,c3 back into root variables and compare
    e1 = src.poly([(1, {"l1": 1}), (1, {"l2": 1}), (1, {"l3": 1})])
    e2 = src.poly([(1, {"l1": 1, "l2": 1}), (1, {"l1": 1, "l3": 1}), (1, {"l2": 1, "l3": 1})])
    e3 = src.poly([(1, {"l1": 1, "l2": 1, "l3": 1})])
    back = substitute(reduced, {"c1": -e1, "c2": e2, "c3": -e3, "h": "h"}, target=src)
    assert back == sym
