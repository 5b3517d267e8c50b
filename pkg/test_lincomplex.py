#!/usr/bin/env python3
"""Tests for Berlekamp-Massey, complexity profiles and the jump test."""

import io
import os
import sys
import unittest

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.calibration import JumpCalibration, reference_bits
from core.lincomplex import (
    ComplexityProfile, EmptySequence, SequenceTooShort, berlekamp_massey,
    complexity_profile, jump_expectation, jump_statistics, jump_test, jump_trace,
    lfsr_regenerate, linear_complexity, read_profile_csv, saturation_point,
    write_profile_csv,
)
from generators import ExtractionPolicy, GeneratorId, bitstream, create


SLOW = bool(os.environ.get("F2PRNG_SLOW_TESTS"))


def shortest_lfsr_by_solving(bits):
    """Smallest L for which s_t = sum c_i s_{t-i} (t >= L) has a solution over GF(2)."""
    n = len(bits)
    for length in range(n + 1):
        coeff_mask = (1 << length) - 1
        pivots = {}
        consistent = True
        for t in range(length, n):
            row = 0
            for i in range(1, length + 1):
                if bits[t - i]:
                    row |= 1 << (i - 1)
            if bits[t]:
                row |= 1 << length
            while row & coeff_mask:
                p = (row & coeff_mask).bit_length() - 1
                if p not in pivots:
                    pivots[p] = row
                    break
                row ^= pivots[p]
            else:
                if row:
                    consistent = False
                    break
        if consistent:
            return length
    return n


def perfect_profile_sequence(n):
    """a_0 = 1, a_{2i} = a_{2i-1} ^ a_{i-1}, odd positions zero."""
    a = [0] * n
    a[0] = 1
    for t in range(2, n, 2):
        a[t] = a[t - 1] ^ a[t // 2 - 1]
    return a


def random_bits(seed, n):
    return np.random.default_rng(seed).integers(0, 2, size=n, dtype=np.uint8)


class TestBerlekampMassey(unittest.TestCase):
    """Shortest LFSR synthesis."""

    def test_single_late_one(self):
        self.assertEqual(linear_complexity([0, 0, 0, 1]), 4)

    def test_all_zero(self):
        for n in (1, 7, 100):
            self.assertEqual(linear_complexity([0] * n), 0)

    def test_alternating(self):
        self.assertEqual(linear_complexity([1, 0, 1, 0, 1, 0]), 2)

    def test_string_input(self):
        self.assertEqual(linear_complexity("101010"), 2)

    def test_empty(self):
        with self.assertRaises(EmptySequence):
            berlekamp_massey([])
        with self.assertRaises(EmptySequence):
            complexity_profile([])

    def test_connection_polynomial_shape(self):
        solution = berlekamp_massey(random_bits(5, 200))
        self.assertEqual(solution.connection_poly & 1, 1)
        self.assertLessEqual(solution.connection_poly.bit_length() - 1, solution.length)

    def test_exhaustive_against_linear_systems(self):
        n = 14 if SLOW else 12
        for value in range(1 << n):
            bits = [(value >> t) & 1 for t in range(n)]
            self.assertEqual(linear_complexity(bits), shortest_lfsr_by_solving(bits), bits)

    def test_regeneration(self):
        for seed in range(200):
            bits = random_bits(seed, 256)
            solution = berlekamp_massey(bits)
            self.assertEqual(lfsr_regenerate(solution, bits, 256), bits.tolist())

    def test_regenerates_generator_stream(self):
        bits = bitstream(create(GeneratorId.TAUS88, 8), 600, ExtractionPolicy.LSB_PER_OUTPUT)
        solution = berlekamp_massey(bits)
        self.assertEqual(solution.length, 88)
        self.assertEqual(lfsr_regenerate(solution, bits, 600), bits.bits.tolist())


class TestComplexityProfile(unittest.TestCase):
    """L(k) for every prefix."""

    def test_late_one_profile(self):
        self.assertEqual(complexity_profile([0, 0, 0, 1]).lengths.tolist(), [0, 0, 0, 4])

    def test_single_bit(self):
        self.assertEqual(complexity_profile([1]).lengths.tolist(), [1])

    def test_matches_prefix_by_prefix(self):
        bits = random_bits(42, 80)
        profile = complexity_profile(bits)
        for k in range(1, 81):
            self.assertEqual(profile.lengths[k - 1], linear_complexity(bits[:k]), k)
        for bits in ([1, 1, 0, 1], [0, 1, 1, 0, 1, 1, 1]):
            expected = [linear_complexity(bits[:k]) for k in range(1, len(bits) + 1)]
            self.assertEqual(complexity_profile(bits).lengths.tolist(), expected)

    def test_monotone_and_jump_law(self):
        for seed in range(1000):
            lengths = complexity_profile(random_bits(seed, 512)).lengths
            previous = 0
            for k, value in enumerate(lengths, 1):
                self.assertTrue(0 <= value <= k)
                self.assertGreaterEqual(value, previous)
                if value > previous:
                    self.assertEqual(value, k - previous, (seed, k))
                previous = value

    def test_perfect_profile(self):
        profile = complexity_profile(perfect_profile_sequence(200))
        self.assertEqual(profile.lengths.tolist(), [(k + 1) // 2 for k in range(1, 201)])

    def test_final_value_is_linear_complexity(self):
        bits = random_bits(3, 300)
        profile = complexity_profile(bits)
        self.assertEqual(profile.linear_complexity, linear_complexity(bits))
        self.assertEqual(profile.n, 300)
        self.assertEqual(profile.connection_poly, berlekamp_massey(bits).connection_poly)


class TestJumpStatistics(unittest.TestCase):
    """Jump positions, heights and the per-prefix trace."""

    def test_single_jump(self):
        stats = jump_statistics(ComplexityProfile(np.array([0, 0, 0, 4]), 1))
        self.assertEqual(stats.count, 1)
        self.assertEqual(stats.positions.tolist(), [4])
        self.assertEqual(stats.heights.tolist(), [4])
        self.assertEqual(stats.max_height, 4)
        self.assertEqual(stats.deviation, 2.0)
        self.assertEqual(stats.perfect_jumps, 0)

    def test_all_zero_profile(self):
        stats = jump_statistics(complexity_profile([0] * 50))
        self.assertEqual(stats.count, 0)
        self.assertEqual(stats.max_height, 0)

    def test_heights_sum_to_final_complexity(self):
        for seed in range(50):
            profile = complexity_profile(random_bits(seed, 400))
            stats = jump_statistics(profile)
            self.assertEqual(int(stats.heights.sum()), profile.linear_complexity)
            self.assertEqual(stats.count, len(stats.heights))
            self.assertTrue(np.all(stats.heights >= 1))

    def test_trace(self):
        trace = jump_trace(ComplexityProfile(np.array([0, 0, 0, 4]), 1))
        self.assertEqual(trace.tolist(), [0, 0, 0, 1])
        profile = complexity_profile(random_bits(9, 256))
        self.assertEqual(int(jump_trace(profile)[-1]), jump_statistics(profile).count)

    def test_random_profile_shape(self):
        profile = complexity_profile(random_bits(17, 4096))
        stats = jump_statistics(profile)
        self.assertLess(stats.max_height, 4096 // 4)
        self.assertLess(abs(stats.count - 1024), 6 * (4096 / 8) ** 0.5)

    def test_dict(self):
        data = jump_statistics(ComplexityProfile(np.array([1, 1, 2]), 1)).to_dict()
        self.assertEqual(data['count'], 2)
        self.assertEqual(data['positions'], [1, 3])


class TestJumpTest(unittest.TestCase):
    """Normal-approximation jump-count test."""

    def test_expectation(self):
        self.assertEqual(jump_expectation(4096, JumpCalibration()), (1024.0, 512.0))
        self.assertEqual(jump_expectation(4096, JumpCalibration(mean_scale=1.01, variance_scale=0.9)),
                         (1.01 * 1024, 0.9 * 512))

    def test_too_short(self):
        with self.assertRaises(SequenceTooShort):
            jump_test([0, 1] * 255)

    def test_alternating_fails(self):
        verdict = jump_test([0, 1] * 512)
        self.assertEqual(verdict.details['jumps'], 1)
        self.assertFalse(verdict.passed)
        self.assertLess(verdict.p_value, 1e-3)

    def test_excess_jumps_fail(self):
        verdict = jump_test(perfect_profile_sequence(2048))
        self.assertEqual(verdict.details['jumps'], 1024)
        self.assertFalse(verdict.passed)
        self.assertGreater(verdict.p_value, 1 - 1e-3)

    def test_saturated_generator_fails(self):
        bits = bitstream(create(GeneratorId.LFSR113, 1), 65536, ExtractionPolicy.LSB_PER_OUTPUT)
        verdict = jump_test(bits)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.details['linear_complexity'], 113)

    def test_reference_stream_passes(self):
        for seed in (1, 2):
            verdict = jump_test(reference_bits(seed, 65536))
            self.assertTrue(verdict.passed, verdict.to_dict())
            self.assertTrue(1e-3 < verdict.p_value < 1 - 1e-3)

    def test_verdict_dict(self):
        data = jump_test(reference_bits(3, 1024)).to_dict()
        self.assertEqual(data['name'], 'jump')
        self.assertIn('pass', data)


class TestSaturation(unittest.TestCase):
    """Plateau detection and terminal complexity of linear streams."""

    EXPECTED = (
        (GeneratorId.LFSR113, 113, 1024),
        (GeneratorId.LFSR258, 258, 2048),
        (GeneratorId.TAUS88, 88, 1024),
        (GeneratorId.XORSHIFT64, 64, 1024),
        (GeneratorId.XORSHIFT128, 128, 1024),
        (GeneratorId.XORSHIFT128PLUS, 128, 1024),
        (GeneratorId.TT800, 800, 4096),
        (GeneratorId.WELL512, 512, 4096),
    )

    def _profile(self, gen_id, n_bits, seed=12345):
        return complexity_profile(bitstream(create(gen_id, seed), n_bits, ExtractionPolicy.LSB_PER_OUTPUT))

    def test_terminal_complexity_is_state_dimension(self):
        for gen_id, expected, n_bits in self.EXPECTED:
            with self.subTest(generator=gen_id.value):
                self.assertEqual(self._profile(gen_id, n_bits).linear_complexity, expected)

    def test_lfsr113_saturates(self):
        profile = self._profile(GeneratorId.LFSR113, 1024)
        k = saturation_point(profile)
        self.assertIsNotNone(k)
        self.assertEqual(int(profile.lengths[k - 1]), 113)
        self.assertTrue(np.all(profile.lengths[k - 1:] == 113))
        self.assertTrue(np.any(profile.lengths[:k - 1] < 113))

    def test_random_stream_does_not_saturate(self):
        self.assertIsNone(saturation_point(complexity_profile(reference_bits(4, 1024))))

    def test_all_zero_saturates_immediately(self):
        self.assertEqual(saturation_point(complexity_profile([0] * 64)), 1)

    def test_margin(self):
        profile = ComplexityProfile(np.array([0, 0, 0, 4] + [4] * 15), 1)
        self.assertIsNone(saturation_point(profile))
        self.assertEqual(saturation_point(profile, margin=3), 4)

    @unittest.skipUnless(SLOW, "set F2PRNG_SLOW_TESTS=1")
    def test_mt19937_terminal_complexity(self):
        self.assertEqual(self._profile(GeneratorId.MT19937, 50000).linear_complexity, 19937)


class TestProfileCsv(unittest.TestCase):
    """k,L export."""

    def test_round_trip(self):
        profile = complexity_profile(random_bits(1, 100))
        buffer = io.StringIO()
        self.assertEqual(write_profile_csv(profile, buffer), 100)
        text = buffer.getvalue()
        self.assertTrue(text.startswith("k,L\n1,"))
        self.assertEqual(read_profile_csv(io.StringIO(text)).tolist(), profile.lengths.tolist())

    def test_bad_header(self):
        with self.assertRaises(ValueError):
            read_profile_csv(io.StringIO("k,jumps\n1,0\n"))


if __name__ == '__main__':
    unittest.main()
