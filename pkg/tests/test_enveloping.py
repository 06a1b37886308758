import pytest

from centinv.centralizer import BasisIndex
from centinv.combinatorics import Case, Partition
from centinv.enveloping import (
    CapExceeded, Envelope, NonIntegralExponent, check_confluence, make_algebra, set_partitions,
    verify_equivariance, verify_gr_beta, verify_mu_leading, zassenhaus_bound,
)
from centinv.fields import Field, QQ


def xi(i, j, s):
    return BasisIndex(i, j, s)


def env_for(parts, case=Case.GL, p=3, cap=4):
    alg = make_algebra(Partition(parts), case, Field(p) if p else QQ)
    return Envelope(alg, cap, case)


def test_bell_numbers():
    assert [len(list(set_partitions(m))) for m in range(6)] == [1, 1, 2, 5, 15, 52]
    for part in set_partitions(4):
        assert sorted(x for b in part for x in b) == [0, 1, 2, 3]


def test_pbw_examples():
    env = env_for((1, 1), p=None)
    a, b, c, d = env.algebra.labels
    assert env.word([a, b, c]) == {(0, 1, 2): 1}
    got = env.word([xi(2, 1, 0), xi(1, 2, 0)])
    assert got == {(1, 2): 1, (0,): 1, (3,): -1}
    env = env_for((3,), p=None)
    assert env.word([xi(1, 1, 2), xi(1, 1, 0), xi(1, 1, 1)]) == {(0, 1, 2): 1}
    with pytest.raises(CapExceeded):
        env.normalize([0] * 5)


@pytest.mark.parametrize("parts,case", [((2, 1), Case.GL), ((1, 1), Case.GL), ((1, 1), Case.SP),
                                        ((2, 2), Case.SO)], ids=str)
def test_pbw_confluence(parts, case):
    env = env_for(parts, case, p=5)
    assert check_confluence(env, max_len=4, trials=2, seed=1).passed


def test_p_power():
    env = env_for((2, 1), p=3)
    assert env.p_power_restricted({xi(1, 2, 0): 1}) == {}
    assert env.p_power_restricted({xi(1, 1, 0): 1}) == {xi(1, 1, 0): 1}
    env = env_for((4,), p=3)
    assert env.p_power_restricted({xi(1, 1, 1): 1}) == {xi(1, 1, 3): 1}


def test_p_centre():
    env = env_for((2, 1), p=3)
    for lab in env.labels:
        assert env.verify_central(env.p_centre_generator({lab: 1})).passed
    u = env.p_centre_generator({xi(1, 1, 0): 1}, restricted={})
    assert not env.verify_central(u).passed
    env = env_for((3,), p=3)
    assert env.verify_central(env.p_centre_generator({xi(1, 1, 1): 1})).passed
    small = env_for((2, 1), p=3, cap=3)
    with pytest.raises(CapExceeded):
        small.p_centre_generator({xi(1, 2, 0): 1})


def test_p_centre_sp():
    env = env_for((2,), Case.SP, p=3)
    for lab in env.labels:
        assert env.verify_central(env.p_centre_generator({lab: 1})).passed
    env = env_for((1, 1), Case.SP, p=3)
    for lab in env.labels:
        assert env.verify_central(env.p_centre_generator({lab: 1})).passed


def test_mu_examples():
    env = env_for((2, 1), p=3)
    assert env.milner_mu({(0,): 1}) == {((0,),): 1}
    assert env.milner_mu({(0, 1): 1}) == {((0,), (1,)): 1, ((0, 1),): 1}
    assert len(env.milner_mu({(0, 1, 2): 1})) == 5


def test_pi_examples():
    env = env_for((2, 1), p=None)
    assert env.pi({(): 1}) == {xi(1, 1, 0): 1, xi(2, 2, 0): 1}
    pos = env.algebra.position
    assert env.pi({(pos[xi(1, 2, 0)],): 1}) == {xi(1, 2, 0): 1}
    assert env.pi({(pos[xi(1, 2, 0)], pos[xi(2, 1, 1)]): 1}) == {}
    assert env.pi_monomial((pos[xi(2, 1, 1)], pos[xi(1, 2, 0)])) == {xi(1, 1, 1): 1}
    env = env_for((4,), p=None)
    e = env.algebra.position[xi(1, 1, 1)]
    for a in range(1, 5):
        want = {xi(1, 1, a): 1} if a < 4 else {}
        assert env.pi({(e,) * a: 1}) == want
    env = env_for((1, 1), Case.SP, p=None)
    assert env.pi({(): 1}) == {}


def test_beta_examples():
    env = env_for((2, 1), p=None)
    R = env.sym_ring()
    assert env.beta({(): 1}) == R.one()
    assert env.beta({(0,): 1}) == R.var(env.labels[0])
    pos = env.algebra.position
    prod = R.var(xi(1, 2, 0)) * R.var(xi(2, 1, 1))
    assert env.beta({(pos[xi(1, 2, 0)], pos[xi(2, 1, 1)]): 1}) == prod
    # the reversed word picks up the commutator xi[1,1,1]
    u = env.word([xi(2, 1, 1), xi(1, 2, 0)])
    assert env.beta(u) == prod + R.var(xi(1, 1, 1))


@pytest.mark.parametrize("parts,case", [((2, 1), Case.GL), ((1, 1), Case.GL), ((2,), Case.SP),
                                        ((1, 1), Case.SP), ((3,), Case.SO), ((1, 1, 1), Case.SO)], ids=str)
def test_gr_beta_mu_and_equivariance(parts, case):
    env = env_for(parts, case, p=3)
    assert verify_mu_leading(env, 3).passed
    assert verify_gr_beta(env, 3).passed
    assert verify_equivariance(env, 3).passed


def test_zassenhaus_bound():
    assert zassenhaus_bound(Partition((4,)), Case.GL, 5) == 1
    assert zassenhaus_bound(Partition((1, 1)), Case.GL, 3) == 3
    assert zassenhaus_bound(Partition((2,)), Case.SP, 3) == 1
    assert zassenhaus_bound(Partition((1, 1)), Case.SP, 3) == 3
    with pytest.raises(ValueError):
        zassenhaus_bound(Partition((3,)), Case.SO, 3)
    assert issubclass(NonIntegralExponent, ValueError)
