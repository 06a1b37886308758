"""The centraliser g_e of a nilpotent e with Jordan type lambda.

Basis elements xi_i^{j,s} send w_i to e^s w_j and commute with e; they are
labelled by :class:`BasisIndex` with the raw shift ``s``, which is in range
when ``lambda_j - min(lambda_i, lambda_j) <= s < lambda_j``.  Out-of-range
symbols stand for the zero element.

The symplectic/orthogonal data (Gram matrix, involution sigma, the zeta/eta
spanning sets of k_e and p_e) are built on top of this.
"""

from functools import cached_property
from typing import NamedTuple

import numpy as np

from .combinatorics import involution
from .fields import QQ


class NotInAlgebra(ValueError):
    pass


class BasisIndex(NamedTuple):
    i: int
    j: int
    s: int

    def __str__(self):
        return f"xi[{self.i},{self.j},{self.s}]"

    def to_json(self):
        return {"i": self.i, "j": self.j, "s": self.s}


class SpanLabel(NamedTuple):
    """Label of zeta_i^{j,s} or eta_i^{j,s}; here ``s`` is the reversed shift
    with 0 <= s < min(lambda_i, lambda_j)."""

    family: str
    i: int
    j: int
    s: int

    def __str__(self):
        return f"{self.family}[{self.i},{self.j},{self.s}]"

    def to_json(self):
        return {"family": self.family, "i": self.i, "j": self.j, "s": self.s}


def in_range(lam, i, j, s):
    if not (1 <= i <= lam.n and 1 <= j <= lam.n):
        return False
    lj = lam[j]
    return lj - min(lam[i], lj) <= s < lj


def enumerate_basis(lam):
    """All in-range (i, j, s), ordered by i, then j, then s."""
    out = []
    for i in range(1, lam.n + 1):
        for j in range(1, lam.n + 1):
            lj = lam[j]
            for s in range(lj - min(lam[i], lj), lj):
                out.append(BasisIndex(i, j, s))
    return out


def triangular_split(lam):
    """(n-, h, n+) index lists: i < j, i = j and i > j respectively."""
    basis = enumerate_basis(lam)
    return ([b for b in basis if b.i < b.j],
            [b for b in basis if b.i == b.j],
            [b for b in basis if b.i > b.j])


def block_offsets(lam):
    offs, acc = {}, 0
    for i, part in enumerate(lam.parts, 1):
        offs[i] = acc
        acc += part
    return offs


def e_matrix(lam):
    """Matrix of e on the basis e^t w_i (blocks in order, powers ascending)."""
    N, offs = lam.N, block_offsets(lam)
    E = np.zeros((N, N), dtype=np.int64)
    for i, part in enumerate(lam.parts, 1):
        for t in range(part - 1):
            E[offs[i] + t + 1, offs[i] + t] = 1
    return E


def as_matrix(idx, lam):
    """Matrix of xi_i^{j,s}: e^t w_i -> e^{s+t} w_j, zero elsewhere."""
    i, j, s = idx
    N, offs = lam.N, block_offsets(lam)
    M = np.zeros((N, N), dtype=np.int64)
    if not in_range(lam, i, j, s):
        return M
    for t in range(lam[i]):
        if s + t < lam[j]:
            M[offs[j] + s + t, offs[i] + t] = 1
    return M


def bracket(a, b, lam):
    """Closed-form [a, b] = ab - ba of two basis elements, as {BasisIndex: int}.

    With a = xi_i^{j,s} and b = xi_k^{l,t}:
    [a, b] = delta_{li} xi_k^{j,s+t} - delta_{jk} xi_i^{l,s+t}.
    """
    i, j, s = a
    k, l, t = b
    out = {}
    if l == i and in_range(lam, k, j, s + t):
        key = BasisIndex(k, j, s + t)
        out[key] = out.get(key, 0) + 1
    if j == k and in_range(lam, i, l, s + t):
        key = BasisIndex(i, l, s + t)
        out[key] = out.get(key, 0) - 1
    return {key: v for key, v in out.items() if v}


def varpi(i, j):
    return 1 if i <= j else -1


class SignTable:
    """eps_{i,j,s}, varpi and l_i for a symplectic or orthogonal Jordan type.

    Here ``s`` is the reversed shift used by the zeta/eta labels.
    """

    def __init__(self, lam, case):
        self.lam = lam
        self.case = case
        self.prime = involution(lam, case)

    def eps(self, i, j, s):
        p = self.prime
        return (-1) ** ((self.lam[j] - s) % 2) * varpi(i, p[i]) * varpi(j, p[j])

    def eps_from_gram(self, J, i, j, s):
        """eps_{i,j,s} from its defining relation
        (e^{lambda_j-1-s} w_j, e^s w_j') = -eps (w_i, e^{lambda_i-1} w_i')."""
        lam, p, offs = self.lam, self.prime, block_offsets(self.lam)
        lhs = J[offs[j] + lam[j] - 1 - s, offs[p[j]] + s]
        rhs = J[offs[i], offs[p[i]] + lam[i] - 1]
        return int(-lhs * rhs)  # rhs is +-1

    def l(self, i):
        return 1 if self.prime[i] == i else 2


def build_gram(lam, case):
    """Gram matrix J with (e^a w_i, e^b w_i') = (-1)^a varpi(i, i') when
    a + b = lambda_i - 1, and zero otherwise."""
    prime = involution(lam, case)
    N, offs = lam.N, block_offsets(lam)
    J = np.zeros((N, N), dtype=np.int64)
    for i, part in enumerate(lam.parts, 1):
        ip = prime[i]
        for a in range(part):
            b = part - 1 - a
            J[offs[i] + a, offs[ip] + b] = (-1) ** a * varpi(i, ip)
    return J


def sigma_index(idx, lam, case, signs=None):
    """sigma(xi_i^{j,t}) as (sign, index): with s = lambda_j - 1 - t the image
    is eps_{i,j,s} xi_{j'}^{i', lambda_i - 1 - s}."""
    signs = signs or SignTable(lam, case)
    i, j, t = idx
    s = lam[j] - 1 - t
    p = signs.prime
    return signs.eps(i, j, s), BasisIndex(p[j], p[i], lam[i] - 1 - s)


def sigma_matrix(X, J, case):
    """-J^{-1} X^T J, for a Gram matrix that is a signed permutation."""
    Jinv = J.T  # signed permutation: inverse is the transpose
    return -Jinv @ X.T @ J


class Centraliser:
    """g_e with cached matrices and coordinate extraction."""

    def __init__(self, lam):
        self.lam = lam
        self.basis = enumerate_basis(lam)
        self.position = {b: k for k, b in enumerate(self.basis)}
        self.offsets = block_offsets(lam)

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def e(self):
        return e_matrix(self.lam)

    @cached_property
    def matrices(self):
        return {b: as_matrix(b, self.lam) for b in self.basis}

    def bracket(self, a, b):
        return bracket(a, b, self.lam)

    def bracket_vectors(self, u, v, field=QQ):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in bracket(a, b, self.lam).items():
                    out[c] = field.norm(out.get(c, 0) + x * y * z)
        return {c: x for c, x in out.items() if x}

    def to_matrix(self, vec):
        M = np.zeros((self.lam.N, self.lam.N), dtype=object)
        for b, c in vec.items():
            M = M + c * self.matrices[b]
        return M

    def from_matrix(self, M, field=QQ):
        """Coordinates of a matrix in g_e; raises NotInAlgebra otherwise."""
        offs = self.offsets
        vec = {}
        for b in self.basis:
            c = field(_scalar(M[offs[b.j] + b.s, offs[b.i]]))
            if c:
                vec[b] = c
        R = self.to_matrix(vec) - M
        if any(field(_scalar(x)) for x in R.flat):
            raise NotInAlgebra("matrix does not lie in the centraliser")
        return vec


def _scalar(x):
    return int(x) if isinstance(x, np.integer) else x


class SpanBasis:
    """A basis of a subspace of g_e given by vectors with pairwise disjoint
    supports; ``pivot[label]`` is a support element owned by that vector."""

    def __init__(self, labels, vectors, field):
        self.labels = list(labels)
        self.vectors = {lab: {k: field(v) for k, v in vec.items() if field(v)}
                        for lab, vec in zip(self.labels, vectors)}
        self.field = field
        self.pivot = {}
        owner = {}
        for lab in self.labels:
            vec = self.vectors[lab]
            if not vec:
                raise ValueError(f"zero basis vector {lab}")
            for k in vec:
                if k in owner:
                    raise ValueError("basis vectors must have disjoint supports")
                owner[k] = lab
            self.pivot[lab] = min(vec)
        self.owner = owner

    def __len__(self):
        return len(self.labels)

    def coords(self, u):
        F = self.field
        out = {}
        for lab in self.labels:
            piv = self.pivot[lab]
            a = u.get(piv, 0)
            if a:
                out[lab] = F.div(a, self.vectors[lab][piv])
        if self.to_vector(out) != {k: F(v) for k, v in u.items() if F(v)}:
            raise NotInAlgebra("vector is not in the span")
        return out

    def to_vector(self, coords):
        F = self.field
        out = {}
        for lab, c in coords.items():
            for k, v in self.vectors[lab].items():
                out[k] = F.norm(out.get(k, 0) + c * v)
        return {k: v for k, v in out.items() if v}

    def pair(self, gamma, lab):
        """gamma(vector of lab) for a dual point gamma in xi-coordinates."""
        F = self.field
        acc = 0
        for k, v in self.vectors[lab].items():
            acc += gamma.get(k, 0) * v
        return F.norm(acc)


class ZetaEtaBasis:
    """Deduplicated zeta (k_e) and eta (p_e) bases with their relation maps.

    ``zeta_rel[(i, j, s)]`` is ``(sign, canonical label)`` with
    zeta_i^{j,s} = sign * zeta_canonical, or ``None`` when zeta_i^{j,s} = 0;
    likewise for eta.
    """

    def __init__(self, lam, case, field=QQ):
        field.require_odd()
        self.lam, self.case, self.field = lam, case, field
        self.signs = SignTable(lam, case)
        self.zeta_rel, self.eta_rel = {}, {}
        zeta, eta = {}, {}
        p = self.signs.prime
        for i in range(1, lam.n + 1):
            for j in range(1, lam.n + 1):
                for s in range(min(lam[i], lam[j])):
                    partner = (p[j], p[i], s)
                    canon = min((i, j, s), partner)
                    eps = self.signs.eps(i, j, s)
                    a = BasisIndex(i, j, lam[j] - 1 - s)
                    b = BasisIndex(p[j], p[i], lam[i] - 1 - s)
                    zv, ev = {a: 1}, {a: 1}
                    zv[b] = zv.get(b, 0) + eps
                    ev[b] = ev.get(b, 0) - eps
                    zv = {k: v for k, v in zv.items() if v}
                    ev = {k: v for k, v in ev.items() if v}
                    # zeta_{ijs} = eps zeta_{partner}, eta_{ijs} = -eps eta_{partner}
                    self.zeta_rel[(i, j, s)] = (eps if canon != (i, j, s) else 1, SpanLabel("zeta", *canon)) if zv else None
                    self.eta_rel[(i, j, s)] = (-eps if canon != (i, j, s) else 1, SpanLabel("eta", *canon)) if ev else None
                    if canon == (i, j, s):
                        if zv:
                            zeta[SpanLabel("zeta", i, j, s)] = zv
                        if ev:
                            eta[SpanLabel("eta", i, j, s)] = ev
        self.k = SpanBasis(sorted(zeta), [zeta[x] for x in sorted(zeta)], field)
        self.p = SpanBasis(sorted(eta), [eta[x] for x in sorted(eta)], field)

    def raw_vector(self, family, i, j, s):
        """zeta_i^{j,s} or eta_i^{j,s} straight from the defining formula."""
        lam, p = self.lam, self.signs.prime
        eps = self.signs.eps(i, j, s) * (1 if family == "zeta" else -1)
        a = BasisIndex(i, j, lam[j] - 1 - s)
        b = BasisIndex(p[j], p[i], lam[i] - 1 - s)
        out = {a: 1}
        out[b] = out.get(b, 0) + eps
        return {k: v for k, v in out.items() if v}

    def dual_vector(self, family, i, j, s):
        """(zeta_i^{j,s})* or (eta_i^{j,s})* as a dual point in xi-coordinates;
        deliberately not normalised to be 0/1-valued."""
        return self.raw_vector(family, i, j, s)

    @property
    def dim_k(self):
        return len(self.k)

    @property
    def dim_p(self):
        return len(self.p)


class LieAlgebra:
    """A Lie subalgebra of g_e (g_e itself or k_e) in a chosen basis."""

    def __init__(self, cent, span, name):
        self.cent = cent
        self.span = span
        self.field = span.field
        self.name = name
        self.labels = span.labels
        self.position = {lab: k for k, lab in enumerate(self.labels)}
        self._brackets = {}

    @property
    def dim(self):
        return len(self.labels)

    @property
    def lam(self):
        return self.cent.lam

    def vector(self, x):
        """xi-coordinates of an algebra element given as {label: scalar}."""
        return self.span.to_vector(x)

    def coords(self, u):
        return self.span.coords(u)

    def bracket(self, a, b):
        key = (a, b)
        if key not in self._brackets:
            F = self.field
            u = self.cent.bracket_vectors(self.span.vectors[a], self.span.vectors[b], F)
            self._brackets[key] = self.span.coords(u)
        return self._brackets[key]

    def bracket_elements(self, x, y):
        F = self.field
        out = {}
        for a, u in x.items():
            for b, v in y.items():
                for c, w in self.bracket(a, b).items():
                    out[c] = F.norm(out.get(c, 0) + u * v * w)
        return {c: v for c, v in out.items() if v}

    def matrix(self, x):
        return self.cent.to_matrix(self.vector(x))

    def from_matrix(self, M):
        return self.coords(self.cent.from_matrix(M, self.field))


def gl_algebra(lam, field=QQ):
    cent = Centraliser(lam)
    span = SpanBasis(cent.basis, [{b: 1} for b in cent.basis], field)
    return LieAlgebra(cent, span, "g_e")


def k_algebra(lam, case, field=QQ):
    zb = ZetaEtaBasis(lam, case, field)
    return LieAlgebra(Centraliser(lam), zb.k, "k_e")


def zeta_eta_basis(lam, case, field=QQ):
    return ZetaEtaBasis(lam, case, field)
