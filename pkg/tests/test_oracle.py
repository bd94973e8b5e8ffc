"""Cross-checks of the fast bracket paths against the brute-force oracles."""

from conftest import make_rng, rand_multivec, rand_scalar
from poissonkit.exactalg import schouten
from poissonkit.liealg import AlgElement, alg_schouten, sl_chevalley
from poissonkit.oracle import alg_schouten_oracle, schouten_oracle


def test_schouten_oracle_dim3_100_pairs():
    rng = make_rng(42)
    for _ in range(100):
        a = rand_multivec(rng, 3, rng.randint(0, 2))
        b = rand_multivec(rng, 3, rng.randint(0, 2))
        assert (schouten(a, b) - schouten_oracle(a, b)).is_zero()


def test_schouten_oracle_dim4_including_trivectors():
    rng = make_rng(43)
    for _ in range(40):
        a = rand_multivec(rng, 4, rng.randint(0, 3), density=0.4)
        b = rand_multivec(rng, 4, rng.randint(0, 2), density=0.4)
        assert (schouten(a, b) - schouten_oracle(a, b)).is_zero()


def _rand_alg_elem(rng, g, degree, density):
    import itertools

    comps = {}
    for idxs in itertools.combinations(range(g.dim), degree):
        if rng.random() < density:
            comps[idxs] = rand_scalar(rng, with_i=False)
    return AlgElement(g, degree, comps)


def test_alg_schouten_oracle_sl2_sl3():
    rng = make_rng(44)
    for g, density in ((sl_chevalley(2), 0.6), (sl_chevalley(3), 0.15)):
        for _ in range(100):
            a = _rand_alg_elem(rng, g, rng.randint(0, 2), density)
            b = _rand_alg_elem(rng, g, rng.randint(0, 2), density)
            assert (alg_schouten(a, b) - alg_schouten_oracle(a, b)).is_zero()
