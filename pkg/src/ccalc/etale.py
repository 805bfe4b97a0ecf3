"""
Etale algebras as formal products of multiquadratic extensions, their trace
forms, and their (Galois-)Stiefel-Whitney classes.

An algebra is a product of factors F(sqrt(m1),...,sqrt(ms))^multiplicity,
each m_j a square class of the base function field.  The trace form of a
factor is computed honestly from the 2^s x 2^s multiplication table on the
basis of square roots of subproducts — diagonality is asserted, not assumed —
and its diagonal entries, read as square classes (d_1,...,d_n) across the
whole algebra, feed the symbol calculus:

    alpha_i^SW = sigma_i({d_1},...,{d_n})        (elementary symmetric),
    alpha_i    = alpha_i^SW                       for odd i,
    alpha_i    = alpha_i^SW + {2}*alpha_(i-1)^SW  for even i,

with the total class alpha_tot = sum alpha_i multiplicative in the algebra.
The sigma_i are accumulated by the standard one-pass recurrence so that a
rank-28 algebra costs rank*cap symbol products, not 2^28 expansions.
"""

from itertools import combinations
from math import isqrt

from .rings import Ring
from .ksymbols import (
    ModelMismatch,
    UnknownGenerator,
    _parse_monomial,
    one,
    symbol,
    zero,
)


class EtaleError(Exception):
    pass


class DependentClasses(EtaleError):
    pass


class UnknownName(EtaleError):
    pass


class NonDiagonalGram(EtaleError):
    pass


def monomial_str(mono, model):
    """Render a square class: sorted generator names, '-' for the class of -1."""
    neg = "minus_one" in mono
    names = [model.spell(n) for n in model.sort_gens(set(mono) - {"minus_one"})]
    body = "*".join(names) if names else "1"
    return ("-" + body) if neg else body


class EtaleAlgebraExpr:
    """A product of multiquadratic extensions over a field model.

    factors: list of (extension, multiplicity) where extension is a tuple of
    square classes (frozensets of names) generating F(sqrt m1, ..., sqrt ms).
    Within each extension no nonempty subproduct of the classes may be trivial
    in the model — otherwise the factor would not be a field.
    """

    def __init__(self, model, factors):
        self.model = model
        self.factors = []
        for ext, mult in factors:
            ext = tuple(frozenset(m) for m in ext)
            if not (isinstance(mult, int) and mult >= 1):
                raise EtaleError("multiplicity must be a positive integer")
            for mono in ext:
                for name in mono:
                    if not model.knows(name):
                        raise UnknownName(name)
            for r in range(1, len(ext) + 1):
                for combo in combinations(range(len(ext)), r):
                    acc = frozenset()
                    for j in combo:
                        acc ^= ext[j]
                    if not {n for n in acc if not model.is_trivial(n)}:
                        raise DependentClasses(
                            "subproduct of sqrt arguments %s is a square"
                            % (sorted(combo),)
                        )
            self.factors.append((ext, mult))
        self.rank = sum(mult * 2 ** len(ext) for ext, mult in self.factors)

    def times(self, other):
        if other.model != self.model:
            raise ModelMismatch("algebras live over different field models")
        return EtaleAlgebraExpr(self.model, self.factors + other.factors)

    def __eq__(self, other):
        return (
            isinstance(other, EtaleAlgebraExpr)
            and self.model == other.model
            and sorted(self._factor_key()) == sorted(other._factor_key())
        )

    def _factor_key(self):
        out = []
        for ext, mult in self.factors:
            key = tuple(sorted(tuple(sorted(m)) for m in ext))
            out.extend([key] * mult)
        return out

    def __str__(self):
        chunks = []
        for ext, mult in self.factors:
            if ext:
                inner = ",".join("sqrt(%s)" % monomial_str(m, self.model) for m in ext)
                body = "F(%s)" % inner
            else:
                body = "F"
            chunks.append(body + ("^%d" % mult if mult > 1 else ""))
        return " * ".join(chunks) if chunks else "F^0"

    __repr__ = __str__


def parse_algebra(text, model):
    """Parse `F(sqrt(a),sqrt(b))^2 * F` style algebra expressions."""
    s = text
    pos = 0

    def err(msg):
        raise SyntaxError("%s at position %d in %r" % (msg, pos, text))

    def ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    factors = []
    while True:
        ws()
        if pos >= len(s) or s[pos] != "F":
            err("expected 'F'")
        pos += 1
        ext = []
        ws()
        if pos < len(s) and s[pos] == "(":
            pos += 1
            while True:
                ws()
                if not s.startswith("sqrt", pos):
                    err("expected 'sqrt'")
                pos += 4
                ws()
                if pos >= len(s) or s[pos] != "(":
                    err("expected '(' after sqrt")
                pos += 1
                start = pos
                while pos < len(s) and s[pos] != ")":
                    pos += 1
                if pos >= len(s):
                    err("unclosed sqrt(")
                try:
                    ext.append(_parse_monomial(s[start:pos], model))
                except UnknownGenerator as e:
                    raise UnknownName(str(e)) from None
                pos += 1
                ws()
                if pos < len(s) and s[pos] == ",":
                    pos += 1
                    continue
                if pos < len(s) and s[pos] == ")":
                    pos += 1
                    break
                err("expected ',' or ')'")
        ws()
        mult = 1
        if pos < len(s) and s[pos] == "^":
            pos += 1
            ws()
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if start == pos:
                err("expected an integer after '^'")
            mult = int(s[start:pos])
            if mult < 1:
                err("multiplicity must be >= 1")
        factors.append((tuple(ext), mult))
        ws()
        if pos >= len(s):
            break
        if s[pos] != "*":
            err("expected '*' between factors")
        pos += 1
    return EtaleAlgebraExpr(model, factors)


# -- trace forms ---------------------------------------------------------------


def _mult_table_product(x, y, s, ring):
    """Product of two extension elements, each a dict {basis mask: Poly}.
    Basis element for mask S is the product of the sqrt generators in S;
    e_S * e_T = (product of the squared generators over S & T) * e_(S xor T).
    """
    out = {}
    for sm, cx in x.items():
        for tm, cy in y.items():
            coeff = cx * cy
            both = sm & tm
            for j in range(s):
                if both >> j & 1:
                    coeff = coeff * ring.gen("q%d" % j)
            key = sm ^ tm
            out[key] = out.get(key, ring.zero) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def _honest_trace(elt, s, ring):
    """Trace of multiplication by elt, summed over the subset basis."""
    total = ring.zero
    for v in range(2 ** s):
        prod = _mult_table_product(elt, {v: ring.one}, s, ring)
        total = total + prod.get(v, ring.zero)
    return total


def trace_form(ext, model):
    """Diagonal square classes of the trace form of F(sqrt m1,...,sqrt ms).

    Works in the polynomial ring on placeholders q0..q(s-1) for the m_j,
    builds the full Gram matrix tr(e_S * e_T) from the multiplication table,
    asserts every off-diagonal entry vanishes, and converts each diagonal
    entry (an integer times a q-monomial) to a square class.
    """
    s = len(ext)
    ring = Ring([("q%d" % j, 1) for j in range(s)]) if s else Ring([])
    size = 2 ** s
    diag = []
    for a in range(size):
        for b in range(a, size):
            prod = _mult_table_product({a: ring.one}, {b: ring.one}, s, ring)
            entry = _honest_trace(prod, s, ring)
            if a == b:
                diag.append(entry)
            elif not entry.is_zero():
                raise NonDiagonalGram(
                    "trace pairing of basis elements %d and %d is %s" % (a, b, entry)
                )
    classes = []
    for a, entry in enumerate(diag):
        if len(entry.terms) != 1:
            raise NonDiagonalGram("diagonal entry %d is not a monomial: %s" % (a, entry))
        (exps, coeff), = entry.terms.items()
        if coeff <= 0:
            raise NonDiagonalGram("diagonal entry %d has coefficient %d" % (a, coeff))
        cls = frozenset()
        two_power = 0
        while coeff % 2 == 0:
            coeff //= 2
            two_power += 1
        if isqrt(coeff) ** 2 != coeff:
            raise NonDiagonalGram(
                "diagonal entry %d is not a square times a power of two" % a
            )
        if two_power % 2:
            cls ^= {"two"}
        for j, e in enumerate(exps):
            if e % 2:
                cls ^= ext[j]
        classes.append(cls)
    return classes


# -- Stiefel-Whitney vectors -----------------------------------------------------


class SWClassVector:
    """alpha_0..alpha_cap of an algebra, flavor 'plain-SW' or 'galois-SW'."""

    def __init__(self, model, rank, flavor, classes):
        assert classes[0].is_one()
        for i, c in enumerate(classes):
            assert c.is_zero() or c.degrees() == [i]
        self.model = model
        self.rank = rank
        self.flavor = flavor
        self.classes = list(classes)

    @property
    def cap(self):
        return len(self.classes) - 1

    def alpha(self, i):
        if not 0 <= i <= self.cap:
            raise IndexError("alpha_%d not materialized (cap %d)" % (i, self.cap))
        return self.classes[i]

    def alpha_tot(self):
        return sum(self.classes, zero(self.model))


def _diagonal_classes(alg):
    out = []
    for ext, mult in alg.factors:
        out.extend(trace_form(ext, alg.model) * mult)
    return out


def sw_total(alg, max_degree=None):
    """Plain Stiefel-Whitney classes: elementary symmetric polynomials of the
    degree-1 classes of the trace-form diagonal, by the one-pass recurrence."""
    model = alg.model
    diag = _diagonal_classes(alg)
    n = len(diag)
    cap = min(n, 7 if max_degree is None else max_degree)
    e = [one(model)] + [zero(model)] * cap
    for d in diag:
        sym = symbol([d], model)
        if sym.is_zero():
            continue
        for i in range(cap, 0, -1):
            e[i] = e[i] + sym * e[i - 1]
    return SWClassVector(model, n, "plain-SW", e)


def galois_sw_total(alg, max_degree=None):
    """Galois-corrected classes: {2}*previous added in even degrees."""
    sw = sw_total(alg, max_degree)
    two = symbol(["2"], alg.model)
    classes = [sw.classes[0]]
    for i in range(1, len(sw.classes)):
        c = sw.classes[i]
        if i % 2 == 0:
            c = c + two * sw.classes[i - 1]
        classes.append(c)
    return SWClassVector(alg.model, sw.rank, "galois-SW", classes)


def alpha_tot_product_check(a, b):
    """Does alpha_tot of the product equal the product of the alpha_tots?
    Computed with full caps on both sides, through independent code paths."""
    if a.model != b.model:
        raise ModelMismatch("algebras live over different field models")
    prod = a.times(b)
    lhs = galois_sw_total(prod, max_degree=prod.rank).alpha_tot()
    fa = galois_sw_total(a, max_degree=a.rank).alpha_tot()
    fb = galois_sw_total(b, max_degree=b.rank).alpha_tot()
    return lhs == fa * fb
