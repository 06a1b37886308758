"""Coadjoint action on g_e*, special points alpha, beta, beta-bar, the rho
action, stabilisers, the index and Jacobian rank probes.

A dual point is a dict ``BasisIndex -> scalar`` of coefficients on the dual
basis (xi_i^{j,s})*; equivalently gamma(xi_i^{j,s}) = gamma[xi_i^{j,s}].
Points of k_e* and p_e* are dual points vanishing on p_e and k_e.
"""

from dataclasses import dataclass

from .centralizer import BasisIndex, Centraliser, SignTable, ZetaEtaBasis, in_range
from .combinatorics import Case, degree_sequence, involution, invariant_count
from .fields import QQ
from .invariants import Report, elementary_invariant, module_generators
from .linalg import Echelon, nullspace
from .polyring import jacobian_rank


class FieldTooSmall(ValueError):
    pass


def _clean(d, F):
    out = {}
    for k, v in d.items():
        v = F.norm(F(v))
        if v:
            out[k] = v
    return out


def _add(acc, k, v, F):
    acc[k] = F.norm(acc.get(k, 0) + v)


def coad(x, gamma, lam, field=QQ):
    """ad*(x) gamma via the closed form
    ad*(xi_i^{j,s}) (xi_k^{l,r})* = delta_ik (xi_j^{l,r-s})* - delta_jl (xi_k^{i,r-s})*."""
    F = field
    out = {}
    for (i, j, s), c in x.items():
        for (k, l, r), g in gamma.items():
            if i == k and in_range(lam, j, l, r - s):
                _add(out, BasisIndex(j, l, r - s), c * g, F)
            if j == l and in_range(lam, k, i, r - s):
                _add(out, BasisIndex(k, i, r - s), -c * g, F)
    return _clean(out, F)


def coad_pairing(x, gamma, lam, field=QQ):
    """Oracle: (ad*(x) gamma)(y) = gamma([y, x]) for every basis y."""
    F = field
    cent = Centraliser(lam)
    out = {}
    for y in cent.basis:
        u = cent.bracket_vectors({y: 1}, x, F)
        v = sum(gamma.get(b, 0) * c for b, c in u.items())
        v = F.norm(F(v))
        if v:
            out[y] = v
    return out


@dataclass
class AlphaSpec:
    a: dict  # block index -> scalar
    case: Case

    def point(self, lam, field=QQ):
        return _clean({BasisIndex(i, i, lam[i] - 1): c for i, c in self.a.items()}, field)


def alpha_spec(lam, case, field=QQ):
    """Greedy smallest positive integers, negated on the partner of a paired block."""
    n = lam.n
    prime = None if case is Case.GL else involution(lam, case)
    if prime is not None:
        field.require_odd()
    limit = field.p if field.p else 4 * n + 4
    a = {}

    def ok(trial):
        vals = [field(v) for v in trial.values()]
        if len(set(vals)) != len(vals):
            return False
        if prime is not None:
            lv = [field((1 if prime[i] == i else 2) * v) for i, v in trial.items()]
            if len(set(lv)) != len(lv):
                return False
        return True

    for i in range(1, n + 1):
        if i in a:
            continue
        for c in range(1, limit + 1):
            trial = dict(a)
            trial[i] = c
            if prime is not None and prime[i] != i:
                trial[prime[i]] = -c
            if ok(trial):
                a = trial
                break
        else:
            raise FieldTooSmall(f"no admissible alpha for lambda={lam} over {field}")
    return AlphaSpec({i: field(a[i]) for i in sorted(a)}, case)


def coad_alpha_closed_form(idx, spec, lam, field=QQ):
    """ad*(xi_i^{j,s}) alpha = a_i (xi_j^{i, lambda_i-1-s})* - a_j (xi_j^{i, lambda_j-1-s})*."""
    i, j, s = idx
    out = {}
    if in_range(lam, j, i, lam[i] - 1 - s):
        _add(out, BasisIndex(j, i, lam[i] - 1 - s), spec.a[i], field)
    if in_range(lam, j, i, lam[j] - 1 - s):
        _add(out, BasisIndex(j, i, lam[j] - 1 - s), -spec.a[j], field)
    return _clean(out, field)


def beta_point(lam, field=QQ):
    return {BasisIndex(i - 1, i, lam[i] - 1): field(1) for i in range(2, lam.n + 1)}


def beta_prime(lam, case, field=QQ):
    signs = SignTable(lam, case)
    p = signs.prime
    out = {}
    for i in range(1, lam.n):
        if i + 1 != p[i]:
            _add(out, BasisIndex(p[i + 1], p[i], lam[i] - 1), signs.eps(i, i + 1, 0), field)
    return _clean(out, field)


@dataclass
class SpecialPoint:
    kind: str
    point: dict


def in_subdual(gamma, lam, case, target, field=QQ):
    """gamma lies in k_e* (target "k") or p_e* ("p"): it kills the other family."""
    zb = ZetaEtaBasis(lam, case, field)
    other = zb.p if target == "k" else zb.k
    return all(not other.pair(gamma, lab) for lab in other.labels)


def expansion(lam, case, kind, spec, field=QQ):
    """alpha or beta-bar rebuilt from the (zeta_i^{j,0})* or (eta)* expansions
    (half weight on self-paired terms)."""
    F = field
    zb = ZetaEtaBasis(lam, case, F)
    fam = "zeta" if case is Case.SP else "eta"
    p = zb.signs.prime
    out = {}
    terms = []
    if kind == "alpha":
        for i in range(1, lam.n + 1):
            if i == p[i]:
                terms.append((F.norm(spec.a[i] * F.half), (i, i)))
            elif i < p[i]:
                terms.append((spec.a[i], (i, i)))
    else:
        for i in range(1, lam.n):
            terms.append((F.half if i + 1 == p[i] else F(1), (i, i + 1)))
    for c, (i, j) in terms:
        for k, v in zb.dual_vector(fam, i, j, 0).items():
            _add(out, k, c * v, F)
    return _clean(out, F)


def make_special_point(lam, case, kind, field=QQ):
    F = field
    if kind == "alpha":
        spec = alpha_spec(lam, case, F)
        pt = spec.point(lam, F)
    elif kind == "beta":
        pt = beta_point(lam, F)
    elif kind in ("betabar_sp", "betabar_so"):
        want = Case.SP if kind == "betabar_sp" else Case.SO
        if case is not want:
            raise ValueError(f"{kind} needs case {want.value}")
        sign = 1 if case is Case.SP else -1
        pt = dict(beta_point(lam, F))
        for k, v in beta_prime(lam, case, F).items():
            _add(pt, k, sign * v, F)
        pt = _clean(pt, F)
    else:
        raise ValueError(f"unknown point kind {kind!r}")
    if case is not Case.GL and kind != "beta":
        target = "k" if case is Case.SP else "p"
        if not in_subdual(pt, lam, case, target, F):
            raise AssertionError(f"{kind} is not in {target}_e*")
        spec = alpha_spec(lam, case, F) if kind == "alpha" else None
        if expansion(lam, case, "alpha" if kind == "alpha" else "betabar", spec, F) != pt:
            raise AssertionError(f"{kind} disagrees with its dual-basis expansion")
    return SpecialPoint(kind, pt)


def rho_action(t, gamma, field=QQ):
    """(xi_i^{j,s})* -> t^{i-j+1} (xi_i^{j,s})*."""
    F = field
    if not F(t):
        raise ValueError("t must be nonzero")
    out = {}
    for b, v in gamma.items():
        e = b.i - b.j + 1
        f = F(t) ** e if e >= 0 else F.inv(F(t)) ** (-e)
        out[b] = F.norm(F(v * f))
    return _clean(out, F)


def acting_basis(lam, case, field=QQ):
    """Labels and xi-vectors of the acting algebra: g_e (gl) or k_e."""
    cent = Centraliser(lam)
    if case is Case.GL:
        return list(cent.basis), {b: {b: field(1)} for b in cent.basis}
    zb = ZetaEtaBasis(lam, case, field)
    return list(zb.k.labels), dict(zb.k.vectors)


@dataclass
class StabiliserReport:
    gamma: dict
    kernel: list
    dim: int


def stabiliser(gamma, lam, case, field=QQ):
    """Kernel of x -> ad*(x) gamma over the acting algebra."""
    labels, vecs = acting_basis(lam, case, field)
    images = [coad(vecs[lab], gamma, lam, field) for lab in labels]
    rows = {}
    for a, img in enumerate(images):
        for b, v in img.items():
            rows.setdefault(b, {})[a] = v
    ker = nullspace(list(rows.values()), list(range(len(labels))), field)
    kernel = [{labels[a]: v for a, v in sorted(vec.items())} for vec in ker]
    return StabiliserReport(gamma, kernel, len(kernel))


def index_closed_form(lam, case):
    if case is Case.GL:
        return lam.N
    if case is Case.SP:
        return lam.N // 2
    return (lam.N - lam.odd_parts()) // 2


def index_report(lam, case, field=QQ):
    alpha = make_special_point(lam, case, "alpha", field).point
    dim = stabiliser(alpha, lam, case, field).dim
    expected = index_closed_form(lam, case)
    if dim != expected:
        raise AssertionError(f"stabiliser dim {dim} != closed form {expected} at lambda={lam}")
    return dim


def _off_diagonal_targets(lam, case, field):
    if case is Case.GL:
        return [{b: field(1)} for b in Centraliser(lam).basis if b.i != b.j]
    zb = ZetaEtaBasis(lam, case, field)
    fam = "zeta" if case is Case.SP else "eta"
    span = zb.k if case is Case.SP else zb.p
    return [_clean(zb.dual_vector(fam, lab.i, lab.j, lab.s), field)
            for lab in span.labels if lab.i != lab.j]


def dominance_span_check(lam, case, field=QQ):
    rep = Report("dominance_span")
    alpha = make_special_point(lam, case, "alpha", field).point
    labels, vecs = acting_basis(lam, case, field)
    ech = Echelon(field)
    for lab in labels:
        ech.add(coad(vecs[lab], alpha, lam, field))
    for t in _off_diagonal_targets(lam, case, field):
        rep.checked += 1
        if not ech.contains(t):
            rep.fail(sorted(map(str, t)))
    return rep


def coad_zeta_alpha_closed_form(label, spec, lam, case, field=QQ):
    """l_i a_i (zeta_j^{i, lambda_j-1-s})* - l_j a_j (zeta_j^{i, lambda_i-1-s})*,
    superscripts read as zeta labels, out-of-range terms zero.  For so the
    dual vectors are eta duals."""
    F = field
    zb = ZetaEtaBasis(lam, case, F)
    fam = "zeta" if case is Case.SP else "eta"
    i, j, s = label.i, label.j, label.s
    l = zb.signs.l
    m = min(lam[i], lam[j])
    out = {}
    for coef, sh in ((l(i) * spec.a[i], lam[j] - 1 - s), (-l(j) * spec.a[j], lam[i] - 1 - s)):
        if 0 <= sh < m:
            for k, v in zb.dual_vector(fam, j, i, sh).items():
                _add(out, k, coef * v, F)
    return _clean(out, F)


def _proportional(u, v, F):
    if set(u) != set(v):
        return False
    if not u:
        return True
    k = min(u)
    c = F.div(u[k], v[k])
    return all(F.norm(u[x] - c * v[x]) == 0 for x in u)


def zeta_closed_form_diagonal(lam, case, field=QQ):
    """Compare the displayed ad*(zeta) alpha formula with coad on every k_e
    basis element.  Returns counts of exact matches, matches up to a nonzero
    scalar, matches of support, and the total."""
    spec = alpha_spec(lam, case, field)
    alpha = spec.point(lam, field)
    zb = ZetaEtaBasis(lam, case, field)
    exact = scaled = same_support = 0
    for lab in zb.k.labels:
        lhs = coad(zb.k.vectors[lab], alpha, lam, field)
        rhs = coad_zeta_alpha_closed_form(lab, spec, lam, case, field)
        exact += lhs == rhs
        scaled += _proportional(lhs, rhs, field)
        same_support += set(lhs) == set(rhs)
    return exact, scaled, same_support, len(zb.k.labels)


def beta_differential_check(lam, field=QQ):
    """d_beta x_r restricted to U = span{(xi_i^{1,s})*} is (-1)^{d-1} xi_d^{1, t_r - 1},
    the shift t_r - 1 counted up from the lowest in-range shift lambda_1 - lambda_d."""
    rep = Report("beta_differential")
    beta = beta_point(lam, field)
    d = degree_sequence(lam)
    for r in range(1, lam.N + 1):
        dr = d[r - 1]
        t = r - sum(lam.parts[:dr - 1])
        diff = elementary_invariant(lam, r, field).poly.differential(beta)
        got = {b: v for b, v in diff.items() if b.j == 1}
        want = _clean({BasisIndex(dr, 1, lam[1] - lam[dr] + t - 1): (-1) ** (dr - 1)}, field)
        rep.checked += 1
        if got != want:
            rep.fail((r, {str(k): v for k, v in got.items()}))
    return rep


def _restricted_point(gamma, span):
    return {lab: span.pair(gamma, lab) for lab in span.labels}


def jacobian_probe(lam, case, field=QQ):
    """Rank of the generator differentials at the witness points."""
    rep = Report("jacobian")
    rep.ranks = {}
    ring, gens = module_generators(lam, case, field)
    m = invariant_count(lam, case)
    alpha = make_special_point(lam, case, "alpha", field).point
    if case is Case.GL:
        beta = beta_point(lam, field)
        points = {"beta": beta, "alpha": alpha, "alpha+beta": _sum(alpha, beta, field)}
        evals = points
    else:
        kind = "betabar_sp" if case is Case.SP else "betabar_so"
        bb = make_special_point(lam, case, kind, field).point
        points = {"betabar": bb, "alpha": alpha, "alpha+betabar": _sum(alpha, bb, field)}
        zb = ZetaEtaBasis(lam, case, field)
        span = zb.k if case is Case.SP else zb.p
        evals = {k: _restricted_point(v, span) for k, v in points.items()}
    for name, pt in evals.items():
        rk = jacobian_rank(gens, pt)
        rep.ranks[name] = rk
        rep.checked += 1
        if rk != m:
            rep.fail((name, rk, m))
    return rep


def _sum(a, b, F):
    out = dict(a)
    for k, v in b.items():
        _add(out, k, v, F)
    return _clean(out, F)


def rho_pullback(f, t, field=QQ):
    """The polynomial gamma -> f(rho(t) gamma) on g_e*."""
    from .polyring import substitute
    F = field
    ring = f.ring
    images = {}
    for b in ring.variables:
        e = b.i - b.j + 1
        c = F(t) ** e if e >= 0 else F.inv(F(t)) ** (-e)
        images[b] = ring.var(b) * c
    return substitute(f, images, ring)
