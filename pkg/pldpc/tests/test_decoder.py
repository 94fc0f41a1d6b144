import numpy as np
from django.test import SimpleTestCase

from pldpc.coding.arithmetic import FixedPointArithmetic, arithmetic_for
from pldpc.coding.channel import ChannelConfig, modulate_and_transmit
from pldpc.coding.construction import BaseMatrix, build_code, default_code
from pldpc.coding.decoder import LayeredDecoder, decode, hard_decision
from pldpc.coding.encoder import Encoder, all_zero_codeword
from pldpc.coding.exceptions import DecoderError
from pldpc.coding.hadamard import HadamardContext, frame_from_llrs
from pldpc.coding.oracles import brute_force_app
from pldpc.coding.quantization import uniform_setting


class DecoderTestCase(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.code = default_code(4, 16, seed=0)
        cls.encoder = Encoder(cls.code)

    def noisy_frames(self, ebn0_db, count, seed=0, all_zero=False):
        rng = np.random.default_rng(seed)
        if all_zero:
            codeword = all_zero_codeword(self.code, (count,))
        else:
            info = rng.integers(0, 2, size=(count, self.encoder.k))
            codeword = self.encoder.encode(info)
        llr_pvn, llr_d1h = modulate_and_transmit(codeword, ChannelConfig(ebn0_db, self.code.rate), rng)
        return codeword, llr_pvn, llr_d1h


class HardDecisionTests(SimpleTestCase):

    def test_zero_llr_decodes_to_zero(self):
        np.testing.assert_array_equal(hard_decision([2.0, -0.5, 0.0, -0.0]), [0, 1, 0, 0])


class InitialisationTests(DecoderTestCase):

    def test_state_shapes(self):
        decoder = LayeredDecoder(self.code)
        state = decoder.init(np.ones(self.code.N), np.ones(self.code.M * 10))
        self.assertEqual(state.app.shape, (1, 704))
        self.assertEqual(state.extrinsic.shape, (1, 448, 6))
        self.assertEqual(state.channel_d1h.shape, (1, 448, 10))
        self.assertFalse(state.extrinsic.any())
        np.testing.assert_array_equal(state.app, state.channel_pvn)

    def test_wrong_lengths(self):
        decoder = LayeredDecoder(self.code)
        with self.assertRaises(DecoderError):
            decoder.init(np.ones(10), np.ones(self.code.M * 10))
        with self.assertRaises(DecoderError):
            decoder.init(np.ones(self.code.N), np.ones(7))
        with self.assertRaises(DecoderError):
            decoder.decode(np.ones(self.code.N), np.ones(self.code.M * 10), 0)
        with self.assertRaises(DecoderError):
            decoder.process_layer(decoder.init(np.ones(self.code.N), np.ones(self.code.M * 10)), 28)


class LayerProcessingTests(DecoderTestCase):

    def test_order_within_a_layer_does_not_matter(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(0.0, 2, seed=5)
        decoder = LayeredDecoder(self.code)
        vectorised = decoder.init(llr_pvn, llr_d1h)
        for k in range(3):
            decoder.process_layer(vectorised, k)
        for order in (range(16), reversed(range(16)), np.random.default_rng(1).permutation(16)):
            sequential = decoder.init(llr_pvn, llr_d1h)
            for k in range(3):
                decoder.process_layer(sequential, k, order=[k * 16 + int(i) for i in order])
            np.testing.assert_allclose(sequential.app, vectorised.app, rtol=0, atol=1e-12)
            np.testing.assert_allclose(sequential.extrinsic, vectorised.extrinsic, rtol=0, atol=1e-12)

    def test_layer_only_touches_its_own_pvns(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(1.0, 1, seed=2)
        decoder = LayeredDecoder(self.code)
        state = decoder.init(llr_pvn, llr_d1h)
        before = state.copy()
        decoder.process_layer(state, 4)
        touched = np.zeros(self.code.N, dtype=bool)
        touched[self.code.layer_view(4).neighbors.ravel()] = True
        np.testing.assert_array_equal(state.app[:, ~touched], before.app[:, ~touched])
        self.assertFalse(np.array_equal(state.app[:, touched], before.app[:, touched]))
        np.testing.assert_array_equal(state.channel_pvn, before.channel_pvn)

    def test_state_copy_is_independent(self):
        decoder = LayeredDecoder(self.code)
        state = decoder.init(np.ones(self.code.N), np.ones(self.code.M * 10))
        clone = state.copy()
        self.assertTrue(clone.equals(state))
        decoder.iterate(clone)
        self.assertFalse(clone.equals(state))


class DecodeTests(DecoderTestCase):

    def test_noiseless_round_trip(self):
        info = np.random.default_rng(9).integers(0, 2, size=self.encoder.k)
        codeword = self.encoder.encode(info)
        result = decode(self.code, 8.0 * (1 - 2.0 * codeword.pvn), 8.0 * (1 - 2.0 * codeword.d1h), 2)
        np.testing.assert_array_equal(result.hard_bits, codeword.pvn)
        np.testing.assert_array_equal(self.encoder.extract_info(result.hard_bits), info)
        self.assertEqual(result.iterations_run, 2)

    def test_batch_matches_single_frames(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(0.0, 3, seed=4)
        decoder = LayeredDecoder(self.code)
        batch = decoder.decode(llr_pvn, llr_d1h, 4)
        for i in range(3):
            single = decoder.decode(llr_pvn[i], llr_d1h[i], 4)
            np.testing.assert_array_equal(single.hard_bits, batch.hard_bits[i])
            np.testing.assert_allclose(single.app, batch.app[i], rtol=0, atol=1e-9)

    def test_moderate_snr_decodes_both_codeword_modes(self):
        for all_zero in (True, False):
            codeword, llr_pvn, llr_d1h = self.noisy_frames(3.0, 8, seed=11, all_zero=all_zero)
            result = decode(self.code, llr_pvn, llr_d1h, 20)
            np.testing.assert_array_equal(result.hard_bits, codeword.pvn)

    def test_early_stop(self):
        codeword, llr_pvn, llr_d1h = self.noisy_frames(3.0, 4, seed=12)
        decoder = LayeredDecoder(self.code, early_stop=True)
        result = decoder.decode(llr_pvn, llr_d1h, 20)
        np.testing.assert_array_equal(result.hard_bits, codeword.pvn)
        self.assertTrue((result.iterations < 20).all())
        self.assertTrue((result.iterations >= 1).all())
        self.assertEqual(decoder.syndrome_weight(result.hard_bits).tolist(), [0, 0, 0, 0])

    def test_diagnostics_report_unsatisfied_checks(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(3.0, 1, seed=13)
        decoder = LayeredDecoder(self.code, diagnostics=True)
        result = decoder.decode(llr_pvn[0], llr_d1h[0], 10)
        self.assertEqual(len(result.unsatisfied), 10)
        self.assertEqual(result.unsatisfied[-1], 0)

    def test_fixed_point_decoder(self):
        codeword, llr_pvn, llr_d1h = self.noisy_frames(3.0, 4, seed=14)
        result = decode(self.code, llr_pvn, llr_d1h, 20, arithmetic=arithmetic_for('S1'))
        self.assertEqual(result.app.dtype, np.float64)
        self.assertLess((result.hard_bits != codeword.pvn).mean(), 0.01)

    def test_wide_fixed_point_agrees_with_float(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(1.0, 16, seed=15)
        floating = decode(self.code, llr_pvn, llr_d1h, 20)
        fixed = decode(self.code, llr_pvn, llr_d1h, 20, arithmetic=FixedPointArithmetic(uniform_setting('1+15+10')))
        self.assertGreaterEqual((fixed.hard_bits == floating.hard_bits).mean(), 0.999)


class SymmetryTests(DecoderTestCase):

    def test_negated_llrs_negate_every_app(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(0.0, 3, seed=16)
        decoder = LayeredDecoder(self.code)
        state = decoder.iterate(decoder.iterate(decoder.init(llr_pvn, llr_d1h)))
        flipped = decoder.iterate(decoder.iterate(decoder.init(-llr_pvn, -llr_d1h)))
        np.testing.assert_allclose(flipped.app, -state.app, rtol=0, atol=1e-9)
        np.testing.assert_allclose(flipped.extrinsic, -state.extrinsic, rtol=0, atol=1e-9)

    def test_fixed_point_decoder_is_exactly_sign_symmetric(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(0.0, 3, seed=17)
        decoder = LayeredDecoder(self.code, arithmetic_for('S1'))
        state = decoder.iterate(decoder.iterate(decoder.init(llr_pvn, llr_d1h)))
        flipped = decoder.iterate(decoder.iterate(decoder.init(-llr_pvn, -llr_d1h)))
        np.testing.assert_array_equal(flipped.app, -state.app)
        np.testing.assert_array_equal(flipped.extrinsic, -state.extrinsic)

    def test_app_is_channel_plus_every_extrinsic(self):
        _, llr_pvn, llr_d1h = self.noisy_frames(0.5, 2, seed=18)
        decoder = LayeredDecoder(self.code)
        state = decoder.init(llr_pvn, llr_d1h)
        for _ in range(3):
            decoder.iterate(state)
        for frame in range(2):
            total = np.zeros(self.code.N)
            np.add.at(total, self.code.pvn_neighbors.ravel(), state.extrinsic[frame].ravel())
            np.testing.assert_allclose(state.app[frame], state.channel_pvn[frame] + total, rtol=0, atol=1e-7)


class SingleCheckTests(SimpleTestCase):

    def test_one_hcn_matches_codebook_decoding(self):
        code = build_code(BaseMatrix.from_rows([[1, 1, 1, 1, 1, 1]]), 1, 1)
        self.assertEqual((code.M, code.N, code.num_d1h_per_hcn), (1, 6, 10))
        ctx = HadamardContext(code.r)
        rng = np.random.default_rng(19)
        channel_pvn = rng.normal(1.0, 2.0, size=6)
        channel_d1h = rng.normal(1.0, 2.0, size=10)
        decoder = LayeredDecoder(code)
        state = decoder.process_hcn(decoder.init(channel_pvn, channel_d1h), 0)

        neighbors = code.pvn_neighbors[0]
        expected = brute_force_app(ctx, frame_from_llrs(ctx, channel_pvn[neighbors], channel_d1h))
        np.testing.assert_allclose(state.app[0, neighbors], expected, rtol=0, atol=1e-9)
        np.testing.assert_allclose(state.extrinsic[0, 0], expected - channel_pvn[neighbors], rtol=0, atol=1e-9)

        # the a-priori input of a second pass is the channel again, so nothing moves
        again = decoder.process_hcn(state.copy(), 0)
        np.testing.assert_allclose(again.app, state.app, rtol=0, atol=1e-9)
