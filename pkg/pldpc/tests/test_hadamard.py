import numpy as np
from django.test import SimpleTestCase

from pldpc.coding.arithmetic import FixedPointArithmetic, FloatArithmetic, arithmetic_for
from pldpc.coding.exceptions import HadamardError
from pldpc.coding.hadamard import (
    HadamardContext, HadamardLLRFrame, codebook, dfht, fht, frame_from_llrs, hadamard_codeword, hadamard_encode,
    hadamard_matrix, pipeline_depth, spc_positions, symbol_map_decode,
)
from pldpc.coding.oracles import brute_force_app, dense_fht, random_frames
from pldpc.coding.quantization import dequantize, quantize, uniform_setting


class SpcStructureTests(SimpleTestCase):

    def test_positions(self):
        self.assertEqual(spc_positions(2), (0, 1, 2, 3))
        self.assertEqual(spc_positions(4), (0, 1, 2, 4, 8, 15))
        self.assertEqual(spc_positions(6), (0, 1, 2, 4, 8, 16, 32, 63))

    def test_odd_or_small_order_rejected(self):
        for r in (0, 1, 3, 5):
            with self.assertRaises(HadamardError):
                spc_positions(r)
        with self.assertRaises(HadamardError):
            HadamardContext(3)

    def test_every_codeword_has_even_spc_parity(self):
        for r in (2, 4, 6):
            ctx = HadamardContext(r)
            bits = codebook(ctx)[:, list(ctx.spc_positions)]
            self.assertEqual(bits.shape, (2 * ctx.q, ctx.d))
            self.assertFalse((bits.sum(axis=1) % 2).any())

    def test_codeword_bit_mapping(self):
        ctx = HadamardContext(4)
        h = hadamard_matrix(4)
        for j in (0, 5, 15):
            np.testing.assert_array_equal(hadamard_codeword(ctx, 0, j), (1 - h[:, j]) // 2)
            np.testing.assert_array_equal(hadamard_codeword(ctx, 1, j), (1 + h[:, j]) // 2)

    def test_pipeline_depth(self):
        self.assertEqual(pipeline_depth(4), 9)


class HadamardEncodeTests(SimpleTestCase):

    def test_parities_complete_every_codeword(self):
        for r in (2, 4):
            ctx = HadamardContext(r)
            words = codebook(ctx)
            parities = hadamard_encode(ctx, words[:, list(ctx.spc_positions)])
            np.testing.assert_array_equal(parities, words[:, list(ctx.parity_positions)])

    def test_all_zero(self):
        ctx = HadamardContext(4)
        np.testing.assert_array_equal(hadamard_encode(ctx, np.zeros(6, dtype=int)), np.zeros(10))

    def test_odd_parity_rejected(self):
        ctx = HadamardContext(4)
        with self.assertRaises(HadamardError):
            hadamard_encode(ctx, [1, 0, 0, 0, 0, 0])
        with self.assertRaises(HadamardError):
            hadamard_encode(ctx, [2, 0, 0, 0, 0, 0])
        with self.assertRaises(HadamardError):
            hadamard_encode(ctx, [0, 0, 0, 0])


class FrameTests(SimpleTestCase):

    def test_frame_layout(self):
        ctx = HadamardContext(4)
        frame = frame_from_llrs(ctx, np.arange(1, 7), np.arange(10, 20))
        np.testing.assert_array_equal(frame.apriori[list(ctx.spc_positions)], np.arange(1, 7))
        np.testing.assert_array_equal(frame.channel[list(ctx.parity_positions)], np.arange(10, 20))
        self.assertFalse(frame.apriori[list(ctx.parity_positions)].any())
        self.assertFalse(frame.channel[list(ctx.spc_positions)].any())

    def test_supports_are_checked(self):
        ctx = HadamardContext(4)
        with self.assertRaises(HadamardError):
            HadamardLLRFrame(ctx, np.ones(16), np.zeros(16))
        with self.assertRaises(HadamardError):
            HadamardLLRFrame(ctx, np.zeros(8), np.zeros(8))
        with self.assertRaises(HadamardError):
            frame_from_llrs(ctx, np.zeros(5), np.zeros(10))


class TransformTests(SimpleTestCase):

    def test_fht_matches_dense_products(self):
        rng = np.random.default_rng(1)
        for r in (2, 4, 6):
            ctx = HadamardContext(r)
            x = rng.integers(-50, 50, size=(8, ctx.q)).astype(np.float64)
            np.testing.assert_array_equal(fht(ctx, x), dense_fht(ctx, x))

    def test_fht_of_codeword_signal_peaks_at_its_index(self):
        ctx = HadamardContext(4)
        signal = 1.0 - 2.0 * hadamard_codeword(ctx, 0, 11)
        out = fht(ctx, signal)
        self.assertEqual(int(np.argmax(out)), 11)
        self.assertEqual(out[11], 16.0)

    def test_fht_rejects_wrong_length(self):
        with self.assertRaises(HadamardError):
            fht(HadamardContext(4), np.zeros(8))

    def test_fht_applied_twice_scales_by_q(self):
        rng = np.random.default_rng(5)
        for r in (2, 4, 6):
            ctx = HadamardContext(r)
            x = rng.normal(0.0, 3.0, size=(4, ctx.q))
            np.testing.assert_allclose(fht(ctx, fht(ctx, x)), ctx.q * x, rtol=0, atol=1e-9)


class DualTransformTests(SimpleTestCase):

    def test_equal_inputs_add_r_ln2(self):
        for r in (2, 4, 6):
            ctx = HadamardContext(r)
            c = np.full((3, ctx.q), 1.7)
            plus, minus = dfht(ctx, c, c)
            np.testing.assert_allclose(plus, 1.7 + r * np.log(2), rtol=0, atol=1e-12)
            np.testing.assert_allclose(minus, 1.7 + r * np.log(2), rtol=0, atol=1e-12)

    def test_swapped_inputs_swap_outputs(self):
        rng = np.random.default_rng(6)
        ctx = HadamardContext(4)
        a, b = rng.normal(0.0, 4.0, size=(2, 5, ctx.q))
        plus, minus = dfht(ctx, a, b)
        swapped_plus, swapped_minus = dfht(ctx, b, a)
        np.testing.assert_array_equal(swapped_plus, minus)
        np.testing.assert_array_equal(swapped_minus, plus)

        arithmetic = arithmetic_for('S1')
        fmt = arithmetic.setting.dfht_stage
        a, b = quantize(a, fmt), quantize(b, fmt)
        plus, minus = dfht(ctx, a, b, arithmetic)
        swapped_plus, swapped_minus = dfht(ctx, b, a, arithmetic)
        np.testing.assert_array_equal(swapped_plus, minus)
        np.testing.assert_array_equal(swapped_minus, plus)


class SymbolMapDecodeTests(SimpleTestCase):

    def test_matches_brute_force(self):
        rng = np.random.default_rng(7)
        for r in (2, 4):
            ctx = HadamardContext(r)
            frame = random_frames(ctx, 1000, rng)
            np.testing.assert_allclose(symbol_map_decode(ctx, frame), brute_force_app(ctx, frame), rtol=0, atol=1e-9)

    def test_single_frame_matches_batch(self):
        ctx = HadamardContext(4)
        frames = random_frames(ctx, 5, np.random.default_rng(2))
        batch = symbol_map_decode(ctx, frames)
        for i in range(5):
            single = HadamardLLRFrame(ctx, frames.channel[i], frames.apriori[i])
            np.testing.assert_allclose(symbol_map_decode(ctx, single), batch[i], rtol=0, atol=1e-12)

    def test_all_zero_observation_has_zero_app(self):
        ctx = HadamardContext(4)
        frame = frame_from_llrs(ctx, np.zeros(6), np.zeros(10))
        np.testing.assert_allclose(symbol_map_decode(ctx, frame), np.zeros(6), atol=1e-12)

    def test_strong_codeword_observation_is_recovered(self):
        ctx = HadamardContext(4)
        word = hadamard_codeword(ctx, 1, 6)
        llr = 6.0 * (1.0 - 2.0 * word)
        frame = frame_from_llrs(ctx, np.zeros(6), llr[list(ctx.parity_positions)])
        app = symbol_map_decode(ctx, frame)
        np.testing.assert_array_equal((app < 0).astype(np.uint8), word[list(ctx.spc_positions)])

    def test_max_log_stays_within_the_correction_bound(self):
        rng = np.random.default_rng(3)
        ctx = HadamardContext(4)
        frame = random_frames(ctx, 200, rng)
        exact = symbol_map_decode(ctx, frame)
        approx = symbol_map_decode(ctx, frame, FloatArithmetic(exact=False))
        self.assertLessEqual(np.abs(exact - approx).max(), 2 * ctx.r * np.log(2) + 1e-9)

    def test_wide_fixed_point_tracks_float(self):
        ctx = HadamardContext(4)
        setting = uniform_setting('1+15+10')
        arithmetic = FixedPointArithmetic(setting)
        llrs = random_frames(ctx, 200, np.random.default_rng(4), scale=2.0)
        raw = HadamardLLRFrame(
            ctx, quantize(llrs.channel, setting.d1h_channel), quantize(llrs.apriori, setting.app)
        )
        fixed = dequantize(symbol_map_decode(ctx, raw, arithmetic), setting.dfht_output)
        np.testing.assert_allclose(fixed, symbol_map_decode(ctx, llrs), rtol=0, atol=0.2)

    def test_fixed_point_kernel_is_sign_symmetric(self):
        rng = np.random.default_rng(8)
        ctx = HadamardContext(4)
        for name in ('S1', 'S2', 'S3'):
            arithmetic = arithmetic_for(name)
            setting = arithmetic.setting
            llrs = random_frames(ctx, 300, rng, scale=4.0)
            raw = HadamardLLRFrame(
                ctx, quantize(llrs.channel, setting.d1h_channel), quantize(llrs.apriori, setting.app)
            )
            flipped = HadamardLLRFrame(ctx, -raw.channel, -raw.apriori)
            np.testing.assert_array_equal(
                symbol_map_decode(ctx, flipped, arithmetic), -symbol_map_decode(ctx, raw, arithmetic)
            )

    def test_s1_kernel_tracks_float_without_bias(self):
        rng = np.random.default_rng(9)
        ctx = HadamardContext(4)
        arithmetic = arithmetic_for('S1')
        setting = arithmetic.setting
        llrs = random_frames(ctx, 2000, rng, scale=2.0)
        raw = HadamardLLRFrame(ctx, quantize(llrs.channel, setting.d1h_channel), quantize(llrs.apriori, setting.app))
        exact = HadamardLLRFrame(ctx, dequantize(raw.channel, setting.d1h_channel), dequantize(raw.apriori, setting.app))
        fixed = dequantize(symbol_map_decode(ctx, raw, arithmetic), setting.dfht_output)
        error = fixed - symbol_map_decode(ctx, exact)
        self.assertLess(abs(error.mean()), setting.dfht_output.lsb / 2)
