"""Jordan types, the block pairing for symplectic/orthogonal forms, degree
sequences, compositions and invariant counts."""

from dataclasses import dataclass
from enum import Enum
from itertools import product


class NoValidInvolution(ValueError):
    """The partition is not the Jordan type of a nilpotent in the form's Lie algebra."""


class Case(Enum):
    GL = "gl"
    SP = "sp"
    SO = "so"

    @property
    def epsilon(self):
        return {Case.GL: None, Case.SP: -1, Case.SO: 1}[self]

    @classmethod
    def parse(cls, text):
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown case {text!r}; expected gl, sp or so") from None


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be nonincreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def N(self):
        return sum(self.parts)

    @property
    def n(self):
        return len(self.parts)

    def __getitem__(self, i):
        """1-based part access, matching block labels."""
        return self.parts[i - 1]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    def odd_parts(self):
        return sum(1 for x in self.parts if x % 2)


def partitions(N, max_part=None):
    """All partitions of N in reverse lexicographic order."""
    if max_part is None:
        max_part = N
    if N == 0:
        yield ()
        return
    for first in range(min(N, max_part), 0, -1):
        for rest in partitions(N - first, first):
            yield (first,) + rest


def is_valid(lam, case):
    if case is Case.GL:
        return True
    try:
        involution(lam, case)
    except NoValidInvolution:
        return False
    return True


def valid_partitions(N, case):
    for parts in partitions(N):
        lam = Partition(parts)
        if is_valid(lam, case):
            yield lam


def degree_sequence(lam):
    """(d_1, ..., d_N): block i contributes lambda_i copies of i."""
    return tuple(i for i, part in enumerate(lam.parts, 1) for _ in range(part))


def compositions(lam, r, d):
    """All mu with 0 <= mu_i <= lambda_i, |mu| = r and d nonzero entries,
    in lexicographic order."""
    out = []

    def rec(i, prefix, remaining, support):
        if i == lam.n:
            if remaining == 0 and support == d:
                out.append(tuple(prefix))
            return
        for m in range(0, min(lam.parts[i], remaining) + 1):
            prefix.append(m)
            rec(i + 1, prefix, remaining - m, support + (m > 0))
            prefix.pop()

    rec(0, [], r, 0)
    return out


def compositions_brute(lam, r, d):
    """Reference enumeration over the full box of all mu <= lambda."""
    box = product(*(range(x + 1) for x in lam.parts))
    return [mu for mu in box if sum(mu) == r and sum(1 for m in mu if m) == d]


def support(mu):
    """1-based indices i_1 < i_2 < ... with mu_i nonzero."""
    return tuple(i for i, m in enumerate(mu, 1) if m)


def involution(lam, case):
    """The block pairing i -> i' as a dict on 1..n.

    Blocks with eps * (-1)^lambda_i == -1 are fixed; the others are paired
    with their equal neighbours left to right.
    """
    if case is Case.GL:
        raise ValueError("the pairing is only defined for sp and so")
    eps = case.epsilon
    pairing = {}
    pending = None
    for i, part in enumerate(lam.parts, 1):
        if eps * (-1) ** part == -1:
            if pending is not None:
                break
            pairing[i] = i
            continue
        if pending is None:
            pending = i
        elif lam[pending] == part:
            pairing[pending], pairing[i] = i, pending
            pending = None
        else:
            break
    if pending is not None or len(pairing) != lam.n:
        kind = "odd" if case is Case.SP else "even"
        raise NoValidInvolution(
            f"lambda={lam}: every {kind} part must occur with even multiplicity for {case.value}")
    return pairing


def invariant_count(lam, case):
    """Closed-form number of generators: N, N/2 or (N + #odd parts)/2."""
    N = lam.N
    if case is Case.GL:
        return N
    involution(lam, case)
    if case is Case.SP:
        return N // 2
    return (N + lam.odd_parts()) // 2


def invariant_indices(lam, case):
    """The r for which x_r survives restriction: all, r even, or r + d_r even."""
    d = degree_sequence(lam)
    rs = range(1, lam.N + 1)
    if case is Case.GL:
        return list(rs)
    if case is Case.SP:
        return [r for r in rs if r % 2 == 0]
    return [r for r in rs if (r + d[r - 1]) % 2 == 0]


def invariant_count_direct(lam, case):
    if case is not Case.GL:
        involution(lam, case)
    return len(invariant_indices(lam, case))
