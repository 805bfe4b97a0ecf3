"""
Worksheets for the equivariant classes of singular plane-curve loci.

The setting: plane curves of degree d, acted on by the torus of GL3 with
weights l1, l2, l3.  A curve singular at an assigned point lies in the
intersection of three hyperplanes H_i with torus-equivariant classes
h + (d-1)t + l_i, where h is the hyperplane class of the curve space and t
the hyperplane class of the point's P^2.  Everything here is exact integer
arithmetic in the graded towers of `rings`; the payoff is the gcd ("content")
of each locus class in a fixed degree-1 basis, which controls the torsion
bookkeeping downstream.

Two loci are computed:

* the locus of curves singular somewhere (class over the full curve space,
  basis {h, c1}), and
* the residual two-singular-point locus: an excess-intersection computation
  on the incidence space with two point factors s and t, pushed forward,
  divided exactly by the one-point class, and renamed to the basis
  {hz, u, c1} of the universal singular-point space.
"""

from math import gcd

from .rings import (
    NotAFiberGenerator,
    Ring,
    exact_divide,
    substitute,
    symmetric_reduce,
)


class DegreeTooSmall(ValueError):
    pass


def _split_cubic():
    """Relation list for x^3 = e1 x^2 - e2 x + e3 over the roots l1,l2,l3."""
    return (
        3,
        [
            [(-1, {"l1": 1}), (-1, {"l2": 1}), (-1, {"l3": 1})],
            [
                (1, {"l1": 1, "l2": 1}),
                (1, {"l1": 1, "l3": 1}),
                (1, {"l2": 1, "l3": 1}),
            ],
            [(-1, {"l1": 1, "l2": 1, "l3": 1})],
        ],
    )


# One-point incidence ring: P^2 fiber t over base Z[l1,l2,l3], curve-space
# hyperplane h left relation-free below the working degree.
POINT_RING = Ring(
    ["l1", "l2", "l3", "h", "t"],
    relations={"t": _split_cubic(), "h": None},
    cap=6,
)

# Two-point incidence ring: independent P^2 fibers s and t.
TWOPOINT_RING = Ring(
    ["l1", "l2", "l3", "h", "s", "t"],
    relations={"s": _split_cubic(), "t": _split_cubic(), "h": None},
    cap=6,
)

# Chern-class target for the one-point computation, basis {h, c1} in degree 1.
CURVE_BASE = Ring(
    [("c1", 1), ("c2", 2), ("c3", 3), "h"],
    display_order=["h", "c1", "c2", "c3"],
)

# Intermediate and target rings for the two-point computation: hz is the
# hyperplane class of the universal singular-point space, u the class pulled
# back from its point factor.
_SINGULAR_FREE = Ring(["l1", "l2", "l3", "hz", "u"])
SINGULAR_BASE = Ring(
    [("c1", 1), ("c2", 2), ("c3", 3), "hz", "u"],
    display_order=["hz", "c1", "u", "c2", "c3"],
)


class LocusClassReport:
    """A degree-1 locus class with its divisibility bookkeeping.

    Fields: degree (the curve degree d), poly (the class), basis_coefficients
    (integers on the declared degree-1 basis), content (gcd of those),
    expected_divisor, divisibility_ok, and formal_only (True when the class
    was emitted from the closed formula below the geometric guard).
    """

    def __init__(self, degree, poly, basis, expected_divisor, formal_only=False):
        self.degree = degree
        self.poly = poly
        self.basis_coefficients = {name: _unit_coeff(poly, name) for name in basis}
        self.content = poly.content()
        self.expected_divisor = expected_divisor
        if expected_divisor:
            self.divisibility_ok = self.content % expected_divisor == 0
        else:
            self.divisibility_ok = self.content == 0
        self.formal_only = formal_only

    def to_json(self):
        out = {
            "d": self.degree,
            "class": str(self.poly),
            "coefficients": dict(self.basis_coefficients),
            "content": self.content,
            "expected_divisor": self.expected_divisor,
            "ok": self.divisibility_ok,
        }
        if self.formal_only:
            out["formal_only"] = True
        return out

    def __repr__(self):
        return "LocusClassReport(d=%d, %s)" % (self.degree, self.poly)


def _unit_coeff(poly, name):
    i = poly.ring.index[name]
    e = tuple(1 if j == i else 0 for j in range(poly.ring.ngens))
    return poly.terms.get(e, 0)


def fiber_pushforward(p, fiber):
    """Integration along a fiber generator with a monic relation of degree n:
    extracts the coefficient of fiber^(n-1).  Sends fiber^(n-1) to 1 and all
    lower powers to 0, and drops total degree by n-1.
    """
    ring = p.ring
    if fiber not in ring.index or ring.index[fiber] not in ring.rel:
        raise NotAFiberGenerator(fiber)
    n = ring.rel[ring.index[fiber]][0]
    return p.coefficient(fiber, n - 1)


def class_ztilde(d):
    """Product of the three hyperplane classes h + (d-1)t + l_i cutting out
    a curve singular at the universal point of the t-fiber."""
    if d < 3:
        raise DegreeTooSmall("need curve degree >= 3, got %d" % d)
    r = POINT_RING
    h, t = r.gen("h"), r.gen("t")
    cls = r.one
    for i in (1, 2, 3):
        cls = cls * (h + (d - 1) * t + r.gen("l%d" % i))
    return cls


def _closed_form_z(d):
    h, c1 = CURVE_BASE.gen("h"), CURVE_BASE.gen("c1")
    return (d - 1) ** 2 * (3 * h - d * c1)


def _closed_form_bin(d):
    hz, u, c1 = (SINGULAR_BASE.gen(n) for n in ("hz", "u", "c1"))
    return 3 * d * (d - 2) * hz - d * (d - 1) ** 2 * c1 - 3 * (d - 2) * u


def _i3(d):
    return 1 if d % 3 == 0 else 0


def class_z(d, allow_formal=False):
    """Class of the singular-curve locus: push the three-plane product down
    the point fiber and rewrite symmetrically over the basis {h, c1}."""
    if d < 3:
        if not allow_formal:
            raise DegreeTooSmall("need curve degree >= 3, got %d" % d)
        return LocusClassReport(
            d, _closed_form_z(d), ("h", "c1"),
            3 ** _i3(d) * (d - 1) ** 2, formal_only=True,
        )
    pushed = fiber_pushforward(class_ztilde(d), "t")
    cls = symmetric_reduce(pushed, CURVE_BASE)
    return LocusClassReport(d, cls, ("h", "c1"), 3 ** _i3(d) * (d - 1) ** 2)


def r_value(d):
    """gcd(d(d-1)^2, 3(d-2)): the content of the two-singular-point class."""
    if d < 4:
        raise DegreeTooSmall("need curve degree >= 4, got %d" % d)
    return gcd(d * (d - 1) ** 2, 3 * (d - 2))


def class_bin(d, allow_formal=False, push_fiber="t"):
    """Residual class of curves with a second singular point.

    Pipeline on the two-point incidence ring: form the product xi of both
    three-plane classes, push forward along one point fiber, subtract the
    excess contribution supported on the diagonal (degree-1 part
    2*sum_i(class of H_i) - c1 of the embedding's normal bundle, multiplied
    by the surviving three-plane class), divide exactly by that class, and
    rename to the singular-point-space basis {hz, u, c1}.  Either fiber may
    be the pushforward direction; the result is identical.
    """
    if d < 4:
        if not allow_formal:
            raise DegreeTooSmall("need curve degree >= 4, got %d" % d)
        expected = gcd(d * (d - 1) ** 2, 3 * (d - 2))
        return LocusClassReport(
            d, _closed_form_bin(d), ("hz", "u", "c1"), expected, formal_only=True,
        )
    if push_fiber not in ("s", "t"):
        raise NotAFiberGenerator(push_fiber)
    kept = "s" if push_fiber == "t" else "t"
    r = TWOPOINT_RING
    h = r.gen("h")
    ls = [r.gen("l%d" % i) for i in (1, 2, 3)]

    planes_kept = [h + (d - 1) * r.gen(kept) + l for l in ls]
    planes_pushed = [h + (d - 1) * r.gen(push_fiber) + l for l in ls]
    a = planes_kept[0] * planes_kept[1] * planes_kept[2]
    b = planes_pushed[0] * planes_pushed[1] * planes_pushed[2]
    xi = a * b

    # Excess term along the diagonal: twice the sum of the plane classes
    # minus the first Chern class of the diagonal's normal bundle (the
    # tangent directions of the point plane), all restricted to the diagonal
    # where both point fibers agree with the kept one.
    sum_planes = planes_kept[0] + planes_kept[1] + planes_kept[2]
    c1_normal = sum_planes + 3 * r.gen(kept) + ls[0] + ls[1] + ls[2]
    excess = 2 * sum_planes - c1_normal

    num = fiber_pushforward(xi, push_fiber) - excess * a
    quotient = exact_divide(num, a)
    assert not quotient.contains(push_fiber)

    renamed = substitute(
        quotient, {"h": "hz", kept: "u"}, target=_SINGULAR_FREE
    )
    cls = symmetric_reduce(renamed, SINGULAR_BASE)
    return LocusClassReport(d, cls, ("hz", "u", "c1"), r_value(d))
