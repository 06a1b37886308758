"""The elementary invariants x_r of g_e, their restrictions to k_e* and p_e*,
and checks of invariance, sigma-parity and generation."""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .centralizer import (BasisIndex, Centraliser, SignTable, ZetaEtaBasis, enumerate_basis,
                          in_range, sigma_index)
from .combinatorics import Case, compositions, degree_sequence, invariant_indices, support
from .fields import QQ
from .linalg import Echelon
from .polyring import Poly, PolyRing, ad_images, derivation, substitute


class ResourceCapExceeded(RuntimeError):
    def __init__(self, degree, size, cap):
        super().__init__(f"degree {degree} needs {size} monomials (cap {cap})")
        self.degree = degree


def _perm_sign(w):
    sign = 1
    for a in range(len(w)):
        for b in range(a + 1, len(w)):
            if w[a] > w[b]:
                sign = -sign
    return sign


def theta_factors(lam, w, mu):
    """Factors xi_{i_k}^{i_{wk}, s_k} of Theta_r(w, mu), or None if one is out
    of range.  ``w`` is a permutation of range(d) (0-based)."""
    idx = support(mu)
    out = []
    for k, wk in enumerate(w):
        i, j = idx[k], idx[wk]
        s = lam[j] - lam[i] + mu[i - 1] - 1
        if not in_range(lam, i, j, s):
            return None
        out.append(BasisIndex(i, j, s))
    return out


def g_ring(lam, field=QQ):
    return PolyRing(enumerate_basis(lam), field)


def theta(lam, r, w, mu, field=QQ):
    ring = g_ring(lam, field)
    fs = theta_factors(lam, w, mu)
    if fs is None:
        return ring.zero()
    out = ring.const(_perm_sign(w))
    for b in fs:
        out = out * ring.var(b)
    return out


def _pruned_terms(lam, mu):
    """(sign, factors) for every w with all factors in range, by backtracking."""
    idx = support(mu)
    d = len(idx)
    allowed = []
    for k in range(d):
        i = idx[k]
        row = []
        for m in range(d):
            j = idx[m]
            s = lam[j] - lam[i] + mu[i - 1] - 1
            if in_range(lam, i, j, s):
                row.append((m, BasisIndex(i, j, s)))
        allowed.append(row)
    out = []
    w, used, factors = [], set(), []

    def rec(k):
        if k == d:
            out.append((_perm_sign(w), list(factors)))
            return
        for m, b in allowed[k]:
            if m in used:
                continue
            used.add(m)
            w.append(m)
            factors.append(b)
            rec(k + 1)
            factors.pop()
            w.pop()
            used.discard(m)

    rec(0)
    return out


@lru_cache(maxsize=None)
def _x_rational(lam, r):
    ring = g_ring(lam, QQ)
    d = degree_sequence(lam)[r - 1]
    terms = {}
    for mu in compositions(lam, r, d):
        for sign, factors in _pruned_terms(lam, mu):
            m = {}
            for b in factors:
                v = ring.index[b]
                m[v] = m.get(v, 0) + 1
            key = tuple(sorted(m.items()))
            terms[key] = terms.get(key, 0) + sign
    return Poly(ring, {m: c for m, c in terms.items() if c})


@dataclass
class ElementaryInvariant:
    r: int
    degree: int
    poly: Poly


def elementary_invariant(lam, r, field=QQ):
    if not 1 <= r <= lam.N:
        raise ValueError(f"r must lie in 1..{lam.N}")
    f = _x_rational(lam, r)
    if field != QQ:
        f = f.change_field(field)
    return ElementaryInvariant(r, degree_sequence(lam)[r - 1], f)


def all_invariants(lam, field=QQ):
    return [elementary_invariant(lam, r, field).poly for r in range(1, lam.N + 1)]


@dataclass
class Report:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    def fail(self, what):
        self.passed = False
        self.failures.append(what)

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "checked": self.checked,
                "failures": [str(f) for f in self.failures[:20]]}


def _unit_module(cent, field):
    from .centralizer import SpanBasis
    return SpanBasis(cent.basis, [{b: 1} for b in cent.basis], field)


def adjoint_images(lam, g, h, ring):
    """Images of the g_e variables under Y -> g Y h, where g and h are lists of
    matrix coefficients of powers of the extra ring variable ``t``."""
    cent = Centraliser(lam)
    F = ring.field
    t = ring.var("t")
    images = {}
    for Y in cent.basis:
        MY = cent.matrices[Y]
        img = ring.zero()
        for c in range(len(g) + len(h) - 1):
            M = np.zeros_like(MY)
            for a, Ga in enumerate(g):
                b = c - a
                if 0 <= b < len(h):
                    M = M + Ga @ MY @ h[b]
            if M.any():
                vec = cent.from_matrix(M, F)
                img = img + ring.linear(vec) * t ** c
        images[Y] = img
    return images


def group_generators(lam):
    """Unipotent generators 1 + t xi of G_e with their polynomial inverses,
    as (label, [G_0, G_1, ...], [H_0, H_1, ...])."""
    cent = Centraliser(lam)
    one = np.eye(lam.N, dtype=np.int64)
    out = []
    for b in cent.basis:
        X = cent.matrices[b]
        if b.i == b.j and b.s == 0:
            continue  # not unipotent; covered by the infinitesimal check
        inv, P, sign = [one], one, 1
        while True:
            P = P @ X
            sign = -sign
            if not P.any():
                break
            inv.append(sign * P)
        out.append((b, [one, X], inv))
    return out


def verify_ad_invariance(lam, p=None, group=True):
    """ad(xi) x_r = 0 for all basis xi and r, and x_r(Ad(1 + t xi) .) = x_r."""
    from .fields import Field
    F = QQ if p is None else Field(p)
    cent = Centraliser(lam)
    module = _unit_module(cent, F)
    xs = all_invariants(lam, F)
    rep = Report("ad_invariance")
    ring = xs[0].ring
    for b in cent.basis:
        imgs = ad_images({b: 1}, module, cent, ring)
        for r, f in enumerate(xs, 1):
            rep.checked += 1
            if derivation(f, imgs):
                rep.fail((str(b), r))
    if group:
        tring = ring.extend(["t"])
        lifted = [Poly(tring, f.terms) for f in xs]
        for b, g, h in group_generators(lam):
            imgs = adjoint_images(lam, g, h, tring)
            for r, f in enumerate(lifted, 1):
                rep.checked += 1
                if substitute(f, imgs, tring) != f:
                    rep.fail(("group", str(b), r))
    return rep


def sigma_poly(f, lam, case):
    """sigma extended multiplicatively to S(g_e)."""
    signs = SignTable(lam, case)
    ring = f.ring
    images = {}
    for b in ring.variables:
        sg, b2 = sigma_index(b, lam, case, signs)
        images[b] = ring.var(b2) * sg
    return substitute(f, images, ring)


def verify_sigma_parity(lam, case, p=None):
    from .fields import Field
    F = QQ if p is None else Field(p)
    F.require_odd()
    rep = Report("sigma_parity")
    for r in range(1, lam.N + 1):
        f = elementary_invariant(lam, r, F).poly
        rep.checked += 1
        if sigma_poly(f, lam, case) != f * (-1) ** r:
            rep.fail(r)
    return rep


@dataclass
class RestrictedInvariant:
    r: int
    target: str
    poly: Poly


def restriction_images(zb, target):
    """xi_i^{j, lambda_j-1-s} -> 1/2 zeta_i^{j,s} (or eta) in canonical labels."""
    F = zb.field
    lam = zb.lam
    span = zb.k if target == "k" else zb.p
    rel = zb.zeta_rel if target == "k" else zb.eta_rel
    ring = PolyRing(span.labels, F)
    half = F.half
    images = {}
    for b in enumerate_basis(lam):
        s = lam[b.j] - 1 - b.s
        hit = rel[(b.i, b.j, s)]
        if hit is None:
            images[b] = ring.zero()
        else:
            sign, lab = hit
            images[b] = ring.var(lab) * F.norm(sign * half)
    return ring, images


def restrict(lam, case, r, target, field=QQ):
    field.require_odd()
    zb = ZetaEtaBasis(lam, case, field)
    ring, images = restriction_images(zb, target)
    f = elementary_invariant(lam, r, field).poly
    return RestrictedInvariant(r, target, substitute(f, images, ring))


def module_generators(lam, case, field=QQ):
    """The generators whose restrictions survive: (ring, [polys])."""
    if case is Case.GL:
        return g_ring(lam, field), all_invariants(lam, field)
    target = "k" if case is Case.SP else "p"
    zb = ZetaEtaBasis(lam, case, field)
    ring, images = restriction_images(zb, target)
    polys = [substitute(elementary_invariant(lam, r, field).poly, images, ring)
             for r in invariant_indices(lam, case)]
    return ring, polys


def verify_restrictions(lam, case, p=None):
    """Vanishing exactly as predicted, survivors nonzero and pairwise distinct."""
    from .fields import Field
    F = QQ if p is None else Field(p)
    rep = Report("restrictions")
    d = degree_sequence(lam)
    for target in ("k", "p"):
        survivors = []
        for r in range(1, lam.N + 1):
            f = restrict(lam, case, r, target, F).poly
            if target == "k":
                vanish = r % 2 == 1
            else:
                vanish = (r + d[r - 1]) % 2 == 1
            rep.checked += 1
            if bool(f) == vanish:
                rep.fail((target, r, "vanishing mismatch"))
            if f:
                survivors.append((r, f))
        relevant = (target == "k") == (case is Case.SP)
        if relevant:
            for a in range(len(survivors)):
                for b in range(a + 1, len(survivors)):
                    rep.checked += 1
                    if survivors[a][1] == survivors[b][1]:
                        rep.fail((target, survivors[a][0], survivors[b][0], "equal"))
    return rep


@dataclass
class GradedDimensionReport:
    rows: list  # (degree, invariant dim, generated dim)

    @property
    def equal(self):
        return all(a == b for _, a, b in self.rows)

    def to_json(self):
        return [{"degree": k, "invariant": a, "generated": b, "equal": a == b}
                for k, a, b in self.rows]


def acting_setup(lam, case, field):
    """(acting elements in xi-coordinates, module SpanBasis, centraliser)."""
    cent = Centraliser(lam)
    if case is Case.GL:
        module = _unit_module(cent, field)
        return [{b: 1} for b in cent.basis], module, cent
    zb = ZetaEtaBasis(lam, case, field)
    acting = [zb.k.vectors[lab] for lab in zb.k.labels]
    module = zb.k if case is Case.SP else zb.p
    return acting, module, cent


def graded_invariant_dims(lam, case, p, dmax, cap=20000):
    from .fields import Field
    F = Field(p)
    ring, gens = module_generators(lam, case, F)
    acting, module, cent = acting_setup(lam, case, F)
    images = [ad_images(x, module, cent, ring) for x in acting]
    gens = [g for g in gens if g]
    rows = []
    for k in range(dmax + 1):
        monos = ring.monomials(k)
        if len(monos) > cap:
            raise ResourceCapExceeded(k, len(monos), cap)
        # (a) common kernel of the derivations on degree k
        ech = Echelon(F)
        for m in monos:
            f = Poly(ring, {m: F(1)})
            col = {}
            for a, imgs in enumerate(images):
                for mm, c in derivation(f, imgs).terms.items():
                    col[(a, mm)] = c
            ech.add(col)
        inv_dim = len(monos) - ech.rank
        # (b) span of products of p-th powers and generators
        gen_dim = _generated_dim(ring, gens, p, k, F)
        rows.append((k, inv_dim, gen_dim))
    return GradedDimensionReport(rows)


def _generated_dim(ring, gens, p, k, F):
    pieces = [(p, ring.var(v) ** p) for v in ring.variables]
    pieces += [(g.degree(), g) for g in gens]
    ech = Echelon(F)

    def rec(start, remaining, prod):
        if remaining == 0:
            ech.add(dict(prod.terms))
            return
        for q in range(start, len(pieces)):
            deg, f = pieces[q]
            if 0 < deg <= remaining:
                rec(q, remaining - deg, prod * f)

    rec(0, k, ring.one())
    return ech.rank
