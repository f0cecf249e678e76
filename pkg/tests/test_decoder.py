import numpy as np
import pytest

from tncodes import code as tc
from tncodes.decoder import (
    Decoder,
    ErrorModel,
    chi,
    depolarizing_model,
    error_factors,
    ml_decode,
)
from tncodes.network import LegRef, NetworkSpec, NodeSpec
from tncodes.pauli import PauliString


def five_qubit_spec():
    return NetworkSpec({"a": NodeSpec("five_qubit")}, [],
                       [LegRef("a", i) for i in range(5)], ["a"])


class TestErrorModel:
    def test_depolarizing_rows(self):
        assert np.allclose(depolarizing_model(3, 0.0).probs[0], [1, 0, 0, 0])
        assert np.allclose(depolarizing_model(3, 0.15).probs[1], [0.85, 0.05, 0.05, 0.05])
        assert np.allclose(depolarizing_model(3, 0.75).probs[2], [0.25] * 4)

    def test_range_check(self):
        with pytest.raises(ValueError):
            depolarizing_model(2, 1.5)
        with pytest.raises(ValueError):
            ErrorModel(np.array([[0.5, 0.5, 0.5, 0.5]]))


class TestErrorFactors:
    def test_identity_pure(self):
        m = depolarizing_model(2, 0.3)
        f = error_factors(m, PauliString.identity(2))
        assert np.allclose(f[0], m.probs[0])

    def test_x_pure_permutes(self):
        m = depolarizing_model(1, 0.3)
        f = error_factors(m, PauliString.from_text("X"))
        assert f[0][1] == pytest.approx(0.7)  # letter X times X is identity

    def test_normalised(self):
        m = depolarizing_model(4, 0.2)
        for f in error_factors(m, PauliString.from_text("XYZI")):
            assert f.sum() == pytest.approx(1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            error_factors(depolarizing_model(2, 0.1), PauliString.identity(3))


class TestChi:
    def test_noiseless(self):
        table = chi(five_qubit_spec(), (0, 0, 0, 0), depolarizing_model(5, 0.0))
        assert table[(0,)] == pytest.approx(1.0)
        assert all(table[cls] == 0 for cls in table if cls != (0,))

    def test_matches_brute_force(self):
        code = tc.compute_destabilizers(tc.five_qubit())
        model = depolarizing_model(5, 0.1)
        dec = Decoder(five_qubit_spec())
        for s in [(0, 0, 0, 1), (1, 0, 1, 0), (1, 1, 1, 1)]:
            tn = dec.chi(s, model)
            bf = tc.brute_force_chi(code, s, model)
            for cls in tn:
                assert tn[cls] == pytest.approx(bf[cls], rel=1e-12)

    def test_degeneracy_invariance(self):
        dec = Decoder(five_qubit_spec())
        model = depolarizing_model(5, 0.17)
        s = (1, 0, 0, 1)
        base = dec.chi(s, model)
        pure = tc.pure_error(dec.code, s)
        for g in dec.code.stabilizers:
            alt = dec.chi(s, model, pure=pure * g)
            for cls in base:
                assert alt[cls] == pytest.approx(base[cls], rel=1e-12)

    def test_syndrome_length(self):
        with pytest.raises(ValueError):
            chi(five_qubit_spec(), (0, 0), depolarizing_model(5, 0.1))

    def test_total_probability(self):
        dec = Decoder(five_qubit_spec())
        model = depolarizing_model(5, 0.23)
        total = 0.0
        for i in range(16):
            s = tuple((i >> t) & 1 for t in range(4))
            total += sum(dec.chi(s, model).values())
        assert total == pytest.approx(1.0, abs=1e-12)


class TestDecode:
    def test_trivial_syndrome(self):
        res = ml_decode(five_qubit_spec(), (0, 0, 0, 0), depolarizing_model(5, 0.05))
        assert res.chosen == (0,)
        assert res.correction.is_identity

    def test_single_x_error(self):
        dec = Decoder(five_qubit_spec())
        err = PauliString.single(5, 0, 1)
        s = tc.syndrome_of(dec.code, err)
        res = dec.decode(s, depolarizing_model(5, 0.01))
        assert res.chosen == (0,)
        assert res.correction == err  # exact return to the state

    def test_argmax_scale_invariant(self):
        dec = Decoder(five_qubit_spec())
        s = (1, 0, 1, 1)
        a = dec.decode(s, depolarizing_model(5, 0.08)).chosen
        table = dec.chi(s, depolarizing_model(5, 0.08))
        scaled = {cls: 7.3 * v for cls, v in table.items()}
        best = max(scaled.values())
        chosen = next(cls for cls in sorted(scaled) if scaled[cls] == best)
        assert chosen == a

    def test_generator_permutation_invariance(self):
        # permuting the generator order (with destabilizers relabeled to
        # match) relabels syndromes but never changes the chosen class
        dec = Decoder(five_qubit_spec())
        model = depolarizing_model(5, 0.11)
        code = dec.code
        order = [2, 0, 3, 1]
        permuted = tc.StabilizerCode(
            5, tuple(code.stabilizers[i] for i in order),
            code.logical_x, code.logical_z,
            tuple(code.destabilizers[i] for i in order))
        assert tc.validate(permuted) == []
        rng = np.random.default_rng(0)
        for _ in range(10):
            e = PauliString.from_letters(rng.integers(0, 4, size=5))
            s1 = tc.syndrome_of(code, e)
            s2 = tc.syndrome_of(permuted, e)
            assert tuple(s1[order[i]] for i in range(4)) == s2
            chi1 = tc.brute_force_chi(code, s1, model)
            chi2 = tc.brute_force_chi(permuted, s2, model)
            for cls in chi1:
                assert chi1[cls] == pytest.approx(chi2[cls], rel=1e-12)
