"""
Abstract abelian-group descriptors for the Brauer-group and torsion-order
bookkeeping attached to the moduli stacks of plane curves and genus-3 curves.

Everything here is arithmetic on top of the two orders the intersection layer
produces: beta_1's order 3^{i_d}(d-1)^2 (the content of the singular-locus
class) and the kernel-of-doubling order gcd(2, gcd(d(d-1)^2, 3(d-2))).  Galois
cohomology of the base field is never computed: Br(k) and H^1(k, Z/n) enter
as opaque named summands, and the undetermined p-primary torsion parts are
carried as labelled placeholders, never expanded.
"""

from collections import namedtuple
from math import gcd

from .chow import DegreeTooSmall, class_z, r_value


class GroupsError(Exception):
    pass


class UnsupportedCharacteristic(GroupsError):
    pass


class UndeterminedTorsion(GroupsError):
    pass


class GroupDescriptor:
    """A finite direct sum: opaque field summands, cyclic pieces, and an
    optional p-primary placeholder.

    cyclic entries are (order, degree_shift, generator_label); order-1
    entries are dropped on construction so equality and rendering agree.
    Equality is multiset equality of the remaining summands.
    """

    def __init__(self, cyclic=(), field_summands=(), placeholder_label=None):
        kept = []
        for order, shift, label in cyclic:
            if not (isinstance(order, int) and order >= 1):
                raise GroupsError("cyclic order must be a positive integer")
            if order > 1:
                kept.append((order, shift, label))
        self.cyclic = tuple(kept)
        self.field_summands = tuple(field_summands)
        self.placeholder_label = placeholder_label

    @property
    def p_primary_placeholder(self):
        return self.placeholder_label is not None

    def _key(self):
        # generator labels are presentation hints, not structure; placeholder
        # labels stay, since differently-named unknown groups need not agree
        return (
            tuple(sorted((order, shift) for order, shift, _ in self.cyclic)),
            tuple(sorted(self.field_summands)),
            self.placeholder_label,
        )

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def summands(self):
        out = list(self.field_summands)
        out.extend("Z/%d" % order for order, _, _ in self.cyclic)
        if self.placeholder_label is not None:
            out.append(self.placeholder_label)
        return out

    def __str__(self):
        parts = self.summands()
        return " ⊕ ".join(parts) if parts else "trivial group"

    __repr__ = __str__

    def to_json(self):
        data = {"summands": self.summands(), "placeholder": self.p_primary_placeholder}
        if self.placeholder_label is not None:
            data["placeholder_label"] = self.placeholder_label
        return data


def _require_degree(d, minimum):
    if not (isinstance(d, int) and d >= minimum):
        raise DegreeTooSmall("need an integer degree d >= %d, got %r" % (minimum, d))


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _require_char(char, excluded, d=None):
    """char is 0 or a prime outside `excluded` (and coprime to d if given)."""
    if char == 0:
        return
    if not _is_prime(char):
        raise UnsupportedCharacteristic("characteristic must be 0 or a prime")
    if char in excluded:
        raise UnsupportedCharacteristic(
            "characteristic %d is excluded here" % char
        )
    if d is not None and d % char == 0:
        raise UnsupportedCharacteristic(
            "characteristic %d divides the degree %d" % (char, d)
        )


def beta1_order(d):
    """Order of the degree-1 invariant attached to the singular locus:
    3^{i_d}(d-1)^2 with i_d = 1 exactly when 3 | d."""
    _require_degree(d, 3)
    i_d = 1 if d % 3 == 0 else 0
    return 3 ** i_d * (d - 1) ** 2


def n_torsion(d):
    """Order of the kernel of doubling on Z/r, r = gcd(d(d-1)^2, 3(d-2)):
    2 for even d, 1 for odd d."""
    _require_degree(d, 4)
    return 2 if d % 2 == 0 else 1


def brauer_xd(d, char=0):
    """Brauer group of the stack of smooth plane degree-d curves over an
    algebraically closed field: Z/gcd(d,6), plus a p-primary placeholder in
    positive characteristic."""
    _require_degree(d, 3)
    _require_char(char, excluded=(2, 3), d=d)
    placeholder = "B'_{%d,%d}" % (char, d) if char else None
    return GroupDescriptor(
        cyclic=[(gcd(d, 6), 0, None)], placeholder_label=placeholder
    )


def brauer_stack(stack, d=None, char=0, closed=False):
    """Brauer-group descriptors for the framed plane-curve stacks and the
    genus-3 stacks.

    stack: one of "xdfr", "x4fr", "m3", "m3_minus_h3", "a3".  For "xdfr" pass
    d and whether the base field is algebraically closed; for even d > 4 over
    a non-closed field the 2-torsion summand is genuinely undetermined and
    UndeterminedTorsion is raised.
    """
    if stack == "x4fr":
        return brauer_stack("xdfr", d=4, char=char, closed=closed)
    if stack == "xdfr":
        if d is None:
            raise GroupsError("xdfr needs the degree d")
        _require_degree(d, 3)
        _require_char(char, excluded=(2,), d=d)
        if closed:
            placeholder = "B_{%d,%d}" % (d, char) if char else None
            return GroupDescriptor(
                cyclic=[(gcd(2, d), 0, "N")], placeholder_label=placeholder
            )
        if d % 2 == 1:
            return GroupDescriptor(
                field_summands=["Br(k)", "H^1(k, Z/%d)" % beta1_order(d)]
            )
        if d == 4:
            # the one even case settled over every base field, through the
            # identification with the non-hyperelliptic genus-3 locus
            return GroupDescriptor(
                cyclic=[(2, 0, "N")],
                field_summands=["Br(k)", "H^1(k, Z/9)"],
            )
        raise UndeterminedTorsion(
            "for even d > 4 over a non-closed field the 2-torsion summand N "
            "is only bounded (N <= Z/2); pass closed=True or d=4"
        )
    if stack == "m3":
        _require_char(char, excluded=(2,))
        placeholder = "B_%d" % char if char else None
        return GroupDescriptor(
            cyclic=[(2, 0, "alpha2")],
            field_summands=["Br(k)"],
            placeholder_label=placeholder,
        )
    if stack == "m3_minus_h3":
        _require_char(char, excluded=(2,))
        return GroupDescriptor(
            cyclic=[(2, 0, "alpha2")],
            field_summands=["Br(k)", "H^1(k, Z/9)"],
        )
    if stack == "a3":
        _require_char(char, excluded=(2,))
        placeholder = "B''_%d" % char if char else None
        return GroupDescriptor(
            cyclic=[(2, 0, "alpha2")],
            field_summands=["Br(k)"],
            placeholder_label=placeholder,
        )
    raise GroupsError("unknown stack %r" % (stack,))


DivisibilityResult = namedtuple("DivisibilityResult", ["value", "factors"])


def hyperelliptic_divisibility():
    """Divisibility of the image of the hyperelliptic divisor class under the
    degree-2 Torelli map: 9 * 2 = 18."""
    hyperelliptic_coefficient = 9
    torelli_degree = 2
    return DivisibilityResult(
        value=hyperelliptic_coefficient * torelli_degree,
        factors=(hyperelliptic_coefficient, torelli_degree),
    )


def _class_z_content(d):
    return class_z(d).content


def consistency_report(d_max=12):
    """Cross-module checks tying the group orders back to the intersection
    layer; returns a list of (name, ok) pairs, all expected True."""
    checks = []
    for d in range(3, d_max + 1):
        checks.append(
            ("beta1_order(%d) == content of the degree-%d locus class" % (d, d),
             beta1_order(d) == _class_z_content(d))
        )
    for d in range(4, d_max + 1):
        checks.append(
            ("n_torsion(%d) == gcd(2, r_value(%d))" % (d, d),
             n_torsion(d) == gcd(2, r_value(d)))
        )
    for d in range(3, 31):
        checks.append(
            ("gcd(%d,6) splits into its 2-part and 3-part" % d,
             gcd(d, 6) == gcd(d, 2) * gcd(d, 3))
        )
    return checks
