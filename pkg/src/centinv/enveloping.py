"""Degree-capped enveloping algebra of g_e or k_e in PBW normal form, the
p-centre, Mil'ner's symmetrisation and the map beta = S(pi) o mu."""

import random
from functools import reduce

import numpy as np

from .centralizer import NotInAlgebra, build_gram, gl_algebra, k_algebra, sigma_matrix
from .combinatorics import Case
from .fields import QQ, Field
from .invariants import Report
from .polyring import PolyRing, derivation


class CapExceeded(RuntimeError):
    pass


class SaturationViolated(RuntimeError):
    pass


class NonIntegralExponent(ValueError):
    pass


def make_algebra(lam, case, field=QQ):
    if case is Case.GL:
        return gl_algebra(lam, field)
    return k_algebra(lam, case, field)


class Envelope:
    """U(L) truncated at total degree ``cap``.

    Elements are dicts from nondecreasing tuples of basis positions to
    scalars.  Any intermediate word longer than the cap raises CapExceeded.
    """

    def __init__(self, algebra, cap, case=Case.GL):
        self.algebra = algebra
        self.field = algebra.field
        self.cap = cap
        self.case = case
        self.labels = algebra.labels
        self._memo = {}
        self._br = {}

    # -- basic plumbing ---------------------------------------------------
    def _bracket_pos(self, a, b):
        key = (a, b)
        if key not in self._br:
            res = self.algebra.bracket(self.labels[a], self.labels[b])
            self._br[key] = [(self.algebra.position[c], v) for c, v in res.items()]
        return self._br[key]

    def _check(self, n):
        if n > self.cap:
            raise CapExceeded(f"degree {n} exceeds cap {self.cap}")

    def _acc(self, out, elem, c):
        F = self.field
        for m, v in elem.items():
            w = F.norm(out.get(m, 0) + c * v)
            if w:
                out[m] = w
            else:
                out.pop(m, None)

    def normalize(self, word, rng=None):
        """PBW normal form of a word of basis positions via xy = yx + [x, y]."""
        word = tuple(word)
        self._check(len(word))
        if rng is None and word in self._memo:
            return self._memo[word]
        descents = [k for k in range(len(word) - 1) if word[k] > word[k + 1]]
        if not descents:
            res = {word: self.field(1)}
        else:
            k = rng.choice(descents) if rng is not None else descents[0]
            a, b = word[k], word[k + 1]
            res = {}
            self._acc(res, self.normalize(word[:k] + (b, a) + word[k + 2:], rng), 1)
            for c, v in self._bracket_pos(a, b):
                self._acc(res, self.normalize(word[:k] + (c,) + word[k + 2:], rng), v)
        if rng is None:
            self._memo[word] = res
        return res

    def word(self, labels):
        return self.normalize([self.algebra.position[x] for x in labels])

    def one(self):
        return {(): self.field(1)}

    def element(self, x):
        """Degree-one element from {label: scalar}."""
        F = self.field
        return {(self.algebra.position[lab],): F(c) for lab, c in x.items() if F(c)}

    def add(self, u, v, c=1):
        out = dict(u)
        self._acc(out, v, c)
        return out

    def mul(self, u, v):
        F = self.field
        out = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                self._acc(out, self.normalize(m1 + m2), F.norm(c1 * c2))
        return out

    def commutator(self, u, v):
        return self.add(self.mul(u, v), self.mul(v, u), -1)

    def power(self, u, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def monomials(self, degree):
        from itertools import combinations_with_replacement
        return list(combinations_with_replacement(range(len(self.labels)), degree))

    # -- p-structure -------------------------------------------------------
    def p_power_restricted(self, x):
        """x^{[p]}: the p-th matrix power re-expressed in the algebra."""
        p = self.field.p
        if p is None:
            raise ValueError("the p-operation needs a prime field")
        M = self.algebra.matrix(x)
        P = np.eye(M.shape[0], dtype=object)
        for _ in range(p):
            P = (P @ M) % p
        return self.algebra.from_matrix(P)

    def p_centre_generator(self, x, restricted=None):
        """x^p - x^{[p]}; ``restricted`` overrides x^{[p]} (fault injection)."""
        if self.cap < self.field.p + 1:
            raise CapExceeded("centrality checks need cap >= p + 1")
        xp = self.p_power_restricted(x) if restricted is None else restricted
        return self.add(self.power(self.element(x), self.field.p), self.element(xp), -1)

    def verify_central(self, u):
        rep = Report("central")
        for lab in self.labels:
            rep.checked += 1
            if self.commutator(u, self.element({lab: 1})):
                rep.fail(str(lab))
        return rep

    # -- pi, mu, beta -----------------------------------------------------
    def _matrix_of_monomial(self, m):
        N = self.algebra.lam.N
        M = np.eye(N, dtype=object)
        for a in m:
            M = M @ self.algebra.matrix({self.labels[a]: 1})
        return M

    def pi_monomial(self, m):
        """Matrix product of the factors, projected back into the algebra."""
        F = self.field
        M = self._matrix_of_monomial(m)
        if self.case is not Case.GL:
            J = build_gram(self.algebra.lam, self.case)
            M = (M + sigma_matrix(M, J.astype(object), self.case)) * F.half
            M = np.vectorize(lambda z: F(z), otypes=[object])(M)
        try:
            return self.algebra.from_matrix(M)
        except NotInAlgebra as exc:
            raise SaturationViolated(str(exc)) from None

    def pi(self, u):
        F = self.field
        out = {}
        for m, c in u.items():
            for lab, v in self.pi_monomial(m).items():
                out[lab] = F.norm(out.get(lab, 0) + c * v)
        return {k: v for k, v in out.items() if v}

    def milner_mu(self, u):
        """Sum over unordered set partitions; factors v_I keep the monomial's order.

        Result: dict from sorted tuples of PBW monomials (the symmetric
        factors) to scalars.
        """
        F = self.field
        out = {}
        for m, c in u.items():
            for blocks in set_partitions(len(m)):
                key = tuple(sorted(tuple(m[k] for k in b) for b in blocks))
                out[key] = F.norm(out.get(key, 0) + c)
        return {k: v for k, v in out.items() if v}

    def sym_ring(self):
        return PolyRing(self.labels, self.field)

    def beta(self, u):
        """S(pi) applied to mu(u): a polynomial in the algebra labels."""
        ring = self.sym_ring()
        out = ring.zero()
        cache = {}
        for factors, c in self.milner_mu(u).items():
            term = ring.const(c)
            for f in factors:
                if f not in cache:
                    cache[f] = ring.linear(self.pi_monomial(f))
                term = term * cache[f]
            out = out + term
        return out

    def symbol(self, m):
        ring = self.sym_ring()
        return reduce(lambda a, b: a * b, (ring.var(self.labels[k]) for k in m), ring.one())

    def ad(self, x, u):
        return self.commutator(self.element(x), u)

    def ad_sym_images(self, x):
        ring = self.sym_ring()
        out = {}
        for lab in self.labels:
            v = self.algebra.bracket_elements(x, {lab: 1})
            if v:
                out[lab] = ring.linear(v)
        return out


def set_partitions(m):
    """Unordered set partitions of range(m), blocks as sorted tuples."""
    if m == 0:
        yield ()
        return
    for part in set_partitions(m - 1):
        for k in range(len(part)):
            yield part[:k] + (part[k] + (m - 1,),) + part[k + 1:]
        yield part + ((m - 1,),)


def check_confluence(env, max_len=4, trials=3, seed=0):
    rng = random.Random(seed)
    rep = Report("pbw_confluence")
    n = len(env.labels)
    for length in range(2, max_len + 1):
        for _ in range(trials * n):
            w = [rng.randrange(n) for _ in range(length)]
            rep.checked += 1
            if env.normalize(w, rng) != env.normalize(w):
                rep.fail(tuple(w))
    return rep


def verify_mu_leading(env, degree):
    """The component of mu(v_1...v_m) with m symmetric factors is v_1 o ... o v_m
    and every other component has fewer factors."""
    rep = Report("mu_leading")
    for m in env.monomials(degree):
        mu = env.milner_mu({m: env.field(1)})
        top = {k: v for k, v in mu.items() if len(k) == len(m)}
        want = {tuple(sorted((a,) for a in m)): env.field(1)}
        rep.checked += 1
        if top != want:
            rep.fail(m)
    return rep


def verify_gr_beta(env, cap):
    """Top component of beta(u) is the symbol of u, and beta is injective on
    PBW monomials of degree <= cap."""
    from .linalg import Echelon
    rep = Report("gr_beta")
    ech = Echelon(env.field)
    for d in range(cap + 1):
        for m in env.monomials(d):
            b = env.beta({m: env.field(1)})
            rep.checked += 1
            if b.homogeneous_part(d) != env.symbol(m) or b.degree() > d:
                rep.fail(m)
            if not ech.add(dict(b.terms)):
                rep.fail(("dependent", m))
    return rep


def verify_equivariance(env, degree):
    """pi(ad x . u) = [x, pi(u)] and beta(ad x . u) = ad x . beta(u)."""
    rep = Report("equivariance")
    alg = env.algebra
    for lab in env.labels:
        x = {lab: 1}
        images = env.ad_sym_images(x)
        for d in range(1, degree + 1):
            for m in env.monomials(d):
                u = {m: env.field(1)}
                adu = env.ad(x, u)
                rep.checked += 2
                if env.pi(adu) != alg.bracket_elements(x, env.pi(u)):
                    rep.fail(("pi", str(lab), m))
                if env.beta(adu) != derivation(env.beta(u), images):
                    rep.fail(("beta", str(lab), m))
    return rep


def zassenhaus_bound(lam, case, p):
    """p^{(dim - ind)/2} for g_e (gl) or k_e acting on k_e* (sp)."""
    from .coadjoint import index_report
    if case is Case.SO:
        raise ValueError("the index of k_e in type so is not available")
    dim = make_algebra(lam, case, Field(p)).dim
    ind = index_report(lam, case, QQ)
    if (dim - ind) % 2 or dim < ind:
        raise NonIntegralExponent(f"dim {dim}, ind {ind}")
    return p ** ((dim - ind) // 2)
