import math
from fractions import Fraction

import numpy as np
import pytest

from nilrand import arithstat as ast
from nilrand import predict


class TestExactCoordDist:
    def test_one_step(self):
        d = ast.exact_coord_dist(2, 1)
        assert d.prob(0) == Fraction(1, 2)
        assert d.prob(1) == Fraction(1, 4)
        assert d.prob(-1) == Fraction(1, 4)

    def test_two_right_steps(self):
        d = ast.exact_coord_dist(3, 2)
        assert d.prob(2) == Fraction(1, 36)

    def test_mass_one_and_symmetry(self):
        for m in (2, 3, 4):
            for length in (0, 1, 5, 40):
                d = ast.exact_coord_dist(m, length)
                assert sum(d.counts.values()) == d.denominator
                for x in d.counts:
                    assert d.counts[x] == d.counts.get(-x, 0)

    def test_rank_one_rejected(self):
        with pytest.raises(ValueError):
            ast.exact_coord_dist(1, 5)


class TestMonotonicity:
    def test_holds_through_512(self):
        for m in (2, 4):
            d = ast.exact_coord_dist(m, 100 if m == 2 else 512)
            assert ast.check_monotonicity(d)

    def test_vacuous_at_zero(self):
        assert ast.check_monotonicity(ast.exact_coord_dist(2, 0))

    def test_detects_violation(self):
        broken = ast.CoordDist(len=2, m=2, counts={0: 1, 1: 5, 2: 1})
        assert not ast.check_monotonicity(broken)


class TestExactVsMonteCarlo:
    def test_histogram_match(self):
        m, length, n = 2, 50, 200_000
        rng = np.random.default_rng(77)
        codes = rng.integers(0, 2 * m, size=(n, length))
        steps = np.where(codes >> 1 == 0, 1 - 2 * (codes & 1), 0)
        finals = steps.sum(axis=1)
        d = ast.exact_coord_dist(m, length)
        for x in range(-6, 7):
            p = float(d.prob(x))
            emp = np.mean(finals == x)
            sigma = math.sqrt(p * (1 - p) / n)
            assert abs(emp - p) < 4 * sigma + 1e-12


class TestResidueDeviation:
    def test_mod_one(self):
        assert ast.residue_deviation(2, 100, 1, 10, 0) == 0.0

    def test_small_deviation_odd_modulus(self):
        dev = ast.residue_deviation(2, 1000, 5, 20_000, 3)
        assert dev < 0.015

    def test_small_deviation_even_modulus(self):
        dev = ast.residue_deviation(2, 1000, 6, 20_000, 4)
        assert dev < 0.015

    def test_paired_mode(self):
        dev = ast.residue_deviation(2, 1000, 3, 20_000, 5, paired=True)
        assert dev < 0.02


class TestPrimitivity:
    def test_matches_zeta_m2(self):
        freq = ast.primitivity_frequency(2, 1000, 20_000, 6)
        assert abs(freq - predict.prob_primitive(2).value) < 0.015

    def test_matches_zeta_m3(self):
        freq = ast.primitivity_frequency(3, 1000, 20_000, 7)
        assert abs(freq - predict.prob_primitive(3).value) < 0.015

    def test_monotone_in_m(self):
        freqs = [ast.primitivity_frequency(m, 300, 4000, 8)
                 for m in (2, 4, 6)]
        assert freqs[0] < freqs[2]


class TestDetGcd:
    def test_matches_prediction(self):
        rep = ast.det_gcd_report(2, 3, 1000, 4000, 9)
        p = rep.predicted.value
        sigma = math.sqrt(p * (1 - p) / rep.trials)
        assert abs(rep.freq_gcd_one - p) < 3 * sigma

    def test_increases_with_k(self):
        f2 = ast.det_gcd_frequency(2, 2, 200, 4000, 10)
        f6 = ast.det_gcd_frequency(2, 6, 200, 4000, 11)
        p2 = predict.prob_gcd_dets_one(2, 2).value
        sigma = math.sqrt(p2 * (1 - p2) / 4000)
        assert f6 > f2 - 2 * sigma

    def test_singular_rare_at_long_length(self):
        rep = ast.det_gcd_report(2, 2, 1000, 4000, 12)
        assert rep.freq_any_singular < 0.01
