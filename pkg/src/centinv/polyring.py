"""Sparse exact multivariate polynomials over QQ or GF(p).

A monomial is a tuple of ``(variable position, exponent)`` pairs sorted by
position, with no zero exponents.  Terms are printed in descending graded
lexicographic order, variables ordered as listed in the ring.
"""

import json
from fractions import Fraction
from itertools import combinations_with_replacement

from .fields import FieldMismatch, QQ
from .linalg import rank


class MissingImage(KeyError):
    pass


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _mono_degree(m):
    return sum(e for _, e in m)


class PolyRing:
    """Polynomial ring over ``field`` in the given ordered variables."""

    def __init__(self, variables, field=QQ):
        self.variables = tuple(variables)
        self.field = field
        self.index = {v: k for k, v in enumerate(self.variables)}
        if len(self.index) != len(self.variables):
            raise ValueError("duplicate variables")

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.variables == other.variables)

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({len(self.variables)} vars over {self.field})"

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {(): c} if c else {})

    def var(self, label):
        return Poly(self, {((self.index[label], 1),): self.field(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def linear(self, coeffs):
        """sum c * label for a dict {label: c}."""
        F = self.field
        terms = {}
        for lab, c in coeffs.items():
            c = F(c)
            if c:
                terms[((self.index[lab], 1),)] = c
        return Poly(self, terms)

    def monomials(self, degree):
        """All monomials of the given total degree, as exponent tuples."""
        out = []
        for combo in combinations_with_replacement(range(self.nvars), degree):
            m = {}
            for v in combo:
                m[v] = m.get(v, 0) + 1
            out.append(tuple(sorted(m.items())))
        return out

    def extend(self, extra):
        """Same field, with further variables appended."""
        return PolyRing(self.variables + tuple(extra), self.field)

    def with_field(self, field):
        return PolyRing(self.variables, field)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise FieldMismatch(f"{self.ring.field} vs {other.ring.field}")
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: F.norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = F.norm(out.get(m, 0) + c1 * c2)
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    __hash__ = None

    # -- structure --------------------------------------------------------
    def degree(self):
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self, degree=None):
        degs = {_mono_degree(m) for m in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def homogeneous_part(self, k):
        return Poly(self.ring, {m: c for m, c in self.terms.items() if _mono_degree(m) == k})

    def variables_used(self):
        return {self.ring.variables[v] for m in self.terms for v, _ in m}

    def coefficient(self, exponents):
        """Coefficient of the monomial given as {label: exponent}."""
        idx = self.ring.index
        m = tuple(sorted((idx[lab], e) for lab, e in exponents.items() if e))
        return self.terms.get(m, self.ring.field(0))

    def change_field(self, field):
        ring = self.ring.with_field(field)
        out = {}
        for m, c in self.terms.items():
            c = field(c)
            if c:
                out[m] = c
        return Poly(ring, out)

    # -- calculus and evaluation -----------------------------------------
    def evaluate(self, point):
        """Substitute ``point[label]`` for each variable; missing labels are 0."""
        F = self.ring.field
        vals = [F(point.get(v, 0)) for v in self.ring.variables]
        acc = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * vals[v] ** e
                if not t:
                    break
            acc += t
        return F.norm(F(acc))

    def diff(self, label):
        F = self.ring.field
        k = self.ring.index[label]
        out = {}
        for m, c in self.terms.items():
            for pos, (v, e) in enumerate(m):
                if v == k:
                    nm = m[:pos] + (((v, e - 1),) if e > 1 else ()) + m[pos + 1:]
                    coef = F.norm(c * e)
                    if coef:
                        out[nm] = F.norm(out.get(nm, 0) + coef)
                    break
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    def differential(self, point):
        """Linear part of v -> f(point + v), as {label: scalar}."""
        F = self.ring.field
        vals = [F(point.get(v, 0)) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            for pos, (v, e) in enumerate(m):
                t = F.norm(c * e)
                if not t:
                    continue
                t = t * vals[v] ** (e - 1)
                for w, f in m[:pos] + m[pos + 1:]:
                    if not t:
                        break
                    t = t * vals[w] ** f
                if t:
                    out[v] = out.get(v, 0) + t
        labels = self.ring.variables
        res = {}
        for v, t in out.items():
            t = F.norm(F(t))
            if t:
                res[labels[v]] = t
        return res

    # -- output -----------------------------------------------------------
    def sorted_terms(self):
        n = self.ring.nvars

        def key(m):
            dense = [0] * n
            for v, e in m:
                dense[v] = e
            return (_mono_degree(m), [-x for x in dense])

        # descending grlex: higher degree first, then lex with variable 0 largest
        return sorted(self.terms.items(), key=lambda kv: (-key(kv[0])[0], key(kv[0])[1]))

    def __str__(self):
        if not self.terms:
            return "0"
        labels = self.ring.variables
        out = ""
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            c = -c if neg else c
            factors = [str(labels[v]) + (f"^{e}" if e > 1 else "") for v, e in m]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            sep = ("-" if neg else "") if k == 0 else (" - " if neg else " + ")
            out += sep + "*".join(factors)
        return out

    __repr__ = __str__

    def to_json(self):
        labels = self.ring.variables
        return {
            "field": self.ring.field.spec(),
            "terms": [{"coeff": str(c), "monomial": [[str(labels[v]), e] for v, e in m]}
                      for m, c in self.sorted_terms()],
        }

    def to_json_text(self):
        return json.dumps(self.to_json(), sort_keys=True)


def poly_arith(f, g, op):
    if f.ring.field != g.ring.field:
        raise FieldMismatch(f"{f.ring.field} vs {g.ring.field}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def evaluate(f, point):
    return f.evaluate(point)


def differential(f, point):
    return f.differential(point)


def substitute(f, images, ring=None):
    """Ring homomorphism sending each variable of ``f`` to ``images[label]``."""
    if ring is None:
        ring = next(iter(images.values())).ring if images else f.ring
    labels = f.ring.variables
    powers = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            lab = labels[v]
            if lab not in images:
                raise MissingImage(lab)
            img = images[lab]
            powers[key] = img if e == 1 else power(v, e - 1) * img
        return powers[key]

    F = ring.field
    out = ring.zero()
    acc = {}
    for m, c in f.terms.items():
        term = ring.const(c)
        for v, e in m:
            term = term * power(v, e)
            if not term:
                break
        for mm, cc in term.terms.items():
            acc[mm] = F.norm(acc.get(mm, 0) + cc)
    out = Poly(ring, {m: c for m, c in acc.items() if c})
    return out


def substitute_linear(f, images, ring=None):
    """As :func:`substitute`, for images of degree at most one."""
    for lab in f.variables_used():
        if lab not in images:
            raise MissingImage(lab)
        if images[lab].degree() > 1:
            raise ValueError(f"image of {lab} is not of degree <= 1")
    return substitute(f, images, ring)


def derivation(f, images):
    """The derivation of the polynomial ring with v -> images[v] on variables."""
    ring = f.ring
    F = ring.field
    acc = {}
    labels = ring.variables
    for m, c in f.terms.items():
        for pos, (v, e) in enumerate(m):
            img = images.get(labels[v])
            if not img:
                continue
            rest = m[:pos] + (((v, e - 1),) if e > 1 else ()) + m[pos + 1:]
            coef = F.norm(c * e)
            if not coef:
                continue
            for mi, ci in img.terms.items():
                mm = _mono_mul(rest, mi)
                acc[mm] = F.norm(acc.get(mm, 0) + coef * ci)
    return Poly(ring, {m: c for m, c in acc.items() if c})


def ad_images(x, module, algebra_cent, ring):
    """Images v -> [x, v] of the module basis, as linear polynomials.

    ``x`` is an acting element in xi-coordinates, ``module`` a SpanBasis whose
    labels are the variables of ``ring`` and ``algebra_cent`` the ambient
    centraliser supplying the bracket.
    """
    F = ring.field
    out = {}
    for lab in module.labels:
        u = algebra_cent.bracket_vectors(x, module.vectors[lab], F)
        if u:
            out[lab] = ring.linear(module.coords(u))
    return out


def ad_derivation(x, f, module, cent):
    """The derivation extending v -> [x, v] applied to ``f``."""
    return derivation(f, ad_images(x, module, cent, f.ring))


def jacobian_rank(fs, point, subspace=None):
    """Rank of the differentials at ``point``, restricted to ``subspace``
    (a list of variable labels; all variables when omitted)."""
    if not fs:
        return 0
    field = fs[0].ring.field
    keep = None if subspace is None else set(subspace)
    rows = []
    for f in fs:
        d = f.differential(point)
        if keep is not None:
            d = {k: v for k, v in d.items() if k in keep}
        rows.append({f.ring.index[k]: v for k, v in d.items()})
    return rank(rows, field)
