import numpy as np
import pytest

from tncodes.decoder import Decoder, depolarizing_model
from tncodes.network import LegRef, NetworkSpec, NodeSpec
from tncodes.sim import SimConfig, monte_carlo, records_csv, sample_error, run_trial, trial_rng


def five_qubit_spec():
    return NetworkSpec({"a": NodeSpec("five_qubit")}, [],
                       [LegRef("a", i) for i in range(5)], ["a"])


class TestSampleError:
    def test_p_zero(self):
        rng = np.random.default_rng(0)
        model = depolarizing_model(6, 0.0)
        for _ in range(5):
            assert sample_error(model, rng).is_identity

    def test_p_one_identity_rate(self):
        rng = np.random.default_rng(1)
        model = depolarizing_model(1000, 1.0)
        err = sample_error(model, rng)
        identity_count = 1000 - err.weight()
        assert identity_count < 5  # binomial(1000, 0) would be 0

    def test_deterministic(self):
        model = depolarizing_model(8, 0.3)
        e1 = sample_error(model, np.random.default_rng(42))
        e2 = sample_error(model, np.random.default_rng(42))
        assert e1 == e2


class TestRunTrial:
    def test_identity_error_succeeds(self):
        dec = Decoder(five_qubit_spec())
        model = depolarizing_model(5, 0.0)
        assert run_trial(dec, model, np.random.default_rng(0))

    def test_stabilizer_error_succeeds(self):
        # inject a stabilizer directly: syndrome 0, class identity
        from tncodes.code import logical_class_of, pure_error, syndrome_of
        dec = Decoder(five_qubit_spec())
        err = dec.code.stabilizers[1]
        s = syndrome_of(dec.code, err)
        assert s == (0, 0, 0, 0)
        res = dec.decode(s, depolarizing_model(5, 0.05))
        assert logical_class_of(dec.code, err * pure_error(dec.code, s)) == res.chosen

    def test_low_p_logical_fails(self):
        # inject a minimum-weight logical representative: at small p the
        # decoder prefers the identity class, so the trial must fail
        from tncodes.code import (_group_words, class_representative,
                                  logical_class_of, pure_error, syndrome_of)
        from tncodes.pauli import PauliString
        dec = Decoder(five_qubit_spec())
        xs, zs = _group_words(dec.code, 26)
        rep = class_representative(dec.code, (1,))
        supp = (xs ^ np.uint64(rep.x)) | (zs ^ np.uint64(rep.z))
        idx = int(np.argmin(np.bitwise_count(supp)))
        x, z = int(xs[idx]) ^ rep.x, int(zs[idx]) ^ rep.z
        err = PauliString(5, x, z, (x & z).bit_count() % 4)
        assert err.weight() == 3
        s = syndrome_of(dec.code, err)
        res = dec.decode(s, depolarizing_model(5, 1e-4))
        assert logical_class_of(dec.code, err * pure_error(dec.code, s)) != res.chosen


class TestMonteCarlo:
    def test_p_zero_always_succeeds(self):
        config = SimConfig([("fq", five_qubit_spec())], [0.0], 25, seed=3)
        (rec,) = monte_carlo(config)
        assert rec.rate == 1.0 and rec.stderr == 0.0

    def test_reproducible(self):
        config = SimConfig([("fq", five_qubit_spec())], [0.1, 0.2], 40, seed=9)
        a = records_csv(monte_carlo(config))
        b = records_csv(monte_carlo(config))
        assert a == b

    def test_execution_order_independent(self):
        # running a single (code, p) cell alone gives the same successes as
        # within a grid: per-trial streams depend only on labels
        full = monte_carlo(SimConfig([("fq", five_qubit_spec())], [0.1, 0.2], 30, seed=5))
        solo = monte_carlo(SimConfig([("fq", five_qubit_spec())], [0.1, 0.2], 30, seed=5))[1]
        assert full[1].successes == solo.successes

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig([("fq", five_qubit_spec())], [0.5], 0, seed=1)
        with pytest.raises(ValueError):
            SimConfig([("fq", five_qubit_spec())], [1.5], 10, seed=1)

    def test_csv_format(self):
        config = SimConfig([("fq", five_qubit_spec())], [0.1], 10, seed=2)
        csv = records_csv(monte_carlo(config))
        header, row = csv.strip().split("\n")
        assert header == "code,p,trials,successes,rate,stderr"
        assert row.startswith("fq,0.1,10,")


def test_trial_rng_distinct_streams():
    a = trial_rng(7, 0, 0, 0).random(4)
    b = trial_rng(7, 0, 0, 1).random(4)
    c = trial_rng(7, 0, 0, 0).random(4)
    assert not np.allclose(a, b)
    assert np.allclose(a, c)
