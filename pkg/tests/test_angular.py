import cmath
import math
import random

import numpy as np
import pytest

from trapquad.angular import (
    EulerAngles,
    HalfInt,
    wigner_3j,
    wigner_6j,
    wigner_D2,
    wigner_d2,
)
from trapquad.errors import InvalidInputError

from exact_wigner import exact_3j, exact_6j


class TestHalfInt:
    def test_construction(self):
        assert HalfInt(2).twice == 4
        assert HalfInt(2.5).twice == 5
        assert HalfInt.from_twice(7) == HalfInt(3.5)
        assert float(HalfInt(1.5)) == 1.5
        assert int(HalfInt(3)) == 3

    def test_rejects_non_half_integers(self):
        with pytest.raises(InvalidInputError):
            HalfInt(0.3)

    def test_arithmetic_and_ordering(self):
        assert HalfInt(2.5) + HalfInt(0.5) == 3
        assert HalfInt(2.5) - 2 == 0.5
        assert -HalfInt(1.5) == -1.5
        assert HalfInt(0.5) < HalfInt(1)
        assert abs(HalfInt(-2.5)) == 2.5

    def test_hashes_like_value(self):
        assert len({HalfInt(1), HalfInt(1.0), HalfInt.from_twice(2)}) == 1


class TestWigner3j:
    def test_trivial_zero_coupling(self):
        assert wigner_3j(0, 0, 0, 0, 0, 0) == 1.0

    def test_closed_form_110(self):
        # (j j 0; m -m 0) = (-1)^(j-m)/sqrt(2j+1)
        assert wigner_3j(1, 1, 0, 1, -1, 0) == pytest.approx(1 / math.sqrt(3), abs=1e-15)

    def test_frozen_rational_oracle_value(self):
        # stretched rank-2 normalization symbol, frozen from the exact oracle
        assert wigner_3j(2.5, 2, 2.5, -2.5, 0, 2.5) == pytest.approx(
            0.2439750182371333, rel=1e-13
        )

    def test_selection_rules_return_zero(self):
        assert wigner_3j(1, 1, 3, 0, 0, 0) == 0.0          # triangle violated
        assert wigner_3j(1, 1, 1, 1, 0, 0) == 0.0          # m-sum nonzero
        assert wigner_3j(0.5, 0.5, 0.5, 0.5, -0.5, 0.5) == 0.0  # half-integer perimeter

    def test_invalid_input_raises(self):
        with pytest.raises(InvalidInputError):
            wigner_3j(-1, 1, 1, 0, 0, 0)
        with pytest.raises(InvalidInputError):
            wigner_3j(1, 1, 1, 2, -1, -1)
        with pytest.raises(InvalidInputError):
            wigner_3j(1.5, 1, 1, 1, 0, -1)  # m parity mismatch

    def test_symmetries_random(self):
        rng = random.Random(7)
        checked = 0
        while checked < 60:
            tj = [rng.randint(0, 8) for _ in range(2)]
            tj3 = rng.randint(abs(tj[0] - tj[1]), tj[0] + tj[1])
            if (tj[0] + tj[1] + tj3) % 2:
                continue
            tms = []
            for t in (*tj, tj3):
                tms.append(rng.randrange(-t, t + 1, 2) if t else 0)
            if sum(tms) != 0:
                continue
            j1, j2, j3 = (t / 2 for t in (*tj, tj3))
            m1, m2, m3 = (t / 2 for t in tms)
            base = wigner_3j(j1, j2, j3, m1, m2, m3)
            sign = (-1.0) ** round(j1 + j2 + j3)
            # cyclic column permutation
            assert wigner_3j(j2, j3, j1, m2, m3, m1) == pytest.approx(base, abs=1e-14)
            # swap of two columns
            assert wigner_3j(j2, j1, j3, m2, m1, m3) == pytest.approx(
                sign * base, abs=1e-14
            )
            # m negation
            assert wigner_3j(j1, j2, j3, -m1, -m2, -m3) == pytest.approx(
                sign * base, abs=1e-14
            )
            checked += 1

    def test_agrees_with_exact_oracle_j_up_to_10(self):
        rng = random.Random(42)
        checked = 0
        while checked < 400:
            tj1 = rng.randint(0, 20)
            tj2 = rng.randint(0, 20)
            tj3 = rng.randint(abs(tj1 - tj2), min(tj1 + tj2, 20))
            if (tj1 + tj2 + tj3) % 2:
                continue
            tm1 = rng.randrange(-tj1, tj1 + 1, 2) if tj1 else 0
            tm2 = rng.randrange(-tj2, tj2 + 1, 2) if tj2 else 0
            tm3 = -tm1 - tm2
            if abs(tm3) > tj3 or (tj3 - tm3) % 2:
                continue
            got = wigner_3j(tj1 / 2, tj2 / 2, tj3 / 2, tm1 / 2, tm2 / 2, tm3 / 2)
            want = exact_3j(tj1, tj2, tj3, tm1, tm2, tm3)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-13), (
                tj1, tj2, tj3, tm1, tm2, tm3
            )
            checked += 1


class TestWigner6j:
    def test_closed_form_with_zero(self):
        # {a b c; 0 c b} = (-1)^(a+b+c)/sqrt((2b+1)(2c+1))
        assert wigner_6j(1, 1, 1, 0, 1, 1) == pytest.approx(-1 / 3, abs=1e-15)

    def test_frozen_rational_oracle_value(self):
        assert wigner_6j(5, 5, 2, 2, 2, 7) == pytest.approx(
            0.054744890145135894, rel=1e-13
        )

    def test_triad_violation_returns_zero(self):
        assert wigner_6j(5, 5, 2, 1, 1, 7) == 0.0

    def test_invalid_input_raises(self):
        with pytest.raises(InvalidInputError):
            wigner_6j(1, 1, 1, 0, 1, -1)
        with pytest.raises(InvalidInputError):
            wigner_6j(1.2, 1, 1, 0, 1, 1)

    def test_orthogonality(self):
        # sum_x (2x+1) {a b x; c d p}{a b x; c d q} = delta_pq/(2p+1),
        # for p, q satisfying the (a,d,p) and (b,c,p) triangle rules
        a, b, c, d = 1, 2, 2, 2
        for p in (1, 2, 3):
            for q in (1, 2, 3):
                total = 0.0
                for tx in range(0, 13):
                    x = tx / 2
                    total += (2 * x + 1) * wigner_6j(a, b, x, c, d, p) * wigner_6j(
                        a, b, x, c, d, q
                    )
                want = (1.0 / (2 * p + 1)) if p == q else 0.0
                assert total == pytest.approx(want, abs=1e-13)

    def test_agrees_with_exact_oracle_j_up_to_10(self):
        rng = random.Random(99)
        checked = 0
        while checked < 250:
            tj = [rng.randint(0, 20) for _ in range(6)]
            got = wigner_6j(*(t / 2 for t in tj))
            want = exact_6j(*tj)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-13), tj
            checked += 1


class TestRank2Rotation:
    def test_identity_at_beta_zero(self):
        angles = EulerAngles(0.0, 0.0)
        for mp in range(-2, 3):
            for m in range(-2, 3):
                want = 1.0 if mp == m else 0.0
                assert wigner_D2(mp, m, angles) == pytest.approx(want, abs=1e-15)

    def test_pure_z_rotation_phases(self):
        alpha = 0.734
        angles = EulerAngles(alpha, 0.0)
        for m in range(-2, 3):
            want = cmath.exp(1j * m * alpha)
            assert wigner_D2(m, m, angles) == pytest.approx(want, abs=1e-14)

    def test_d00_closed_form(self):
        for beta in np.linspace(0, math.pi, 17):
            want = (3 * math.cos(beta) ** 2 - 1) / 2
            assert wigner_d2(0, 0, beta) == pytest.approx(want, abs=1e-15)

    def test_combination_closed_forms_on_grid(self):
        # the six closed-form combinations that fix the sign convention
        alphas = np.linspace(0.0, 2 * math.pi, 20)
        betas = np.linspace(0.0, math.pi, 20)
        for alpha in alphas:
            for beta in betas:
                ang = EulerAngles(alpha, beta)
                c, s = math.cos(beta), math.sin(beta)
                c2a, s2a = math.cos(2 * alpha), math.sin(2 * alpha)

                q2sum = {mp: wigner_D2(mp, 2, ang) + wigner_D2(mp, -2, ang)
                         for mp in range(-2, 3)}
                assert q2sum[0] == pytest.approx(
                    math.sqrt(1.5) * s * s * c2a, abs=1e-12
                )
                for pm in (1, -1):
                    want = -pm * (c * s * c2a + 1j * pm * s * s2a)
                    assert q2sum[pm] == pytest.approx(want, abs=1e-12)
                for pm in (1, -1):
                    want = 0.5 * (1 + c * c) * c2a + 1j * pm * c * s2a
                    assert q2sum[2 * pm] == pytest.approx(want, abs=1e-12)

                assert wigner_D2(0, 0, ang) == pytest.approx(
                    (3 * c * c - 1) / 2, abs=1e-12
                )
                for pm in (1, -1):
                    assert wigner_D2(pm, 0, ang) == pytest.approx(
                        pm * math.sqrt(1.5) * s * c, abs=1e-12
                    )
                    assert wigner_D2(2 * pm, 0, ang) == pytest.approx(
                        math.sqrt(3 / 8) * s * s, abs=1e-12
                    )

    def test_unitarity_random_angles(self):
        rng = random.Random(5)
        for _ in range(25):
            ang = EulerAngles(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi))
            mat = np.array(
                [[wigner_D2(mp, m, ang) for m in range(-2, 3)] for mp in range(-2, 3)]
            )
            assert np.allclose(mat @ mat.conj().T, np.eye(5), atol=1e-13)

    def test_z_rotation_composition(self):
        # appending a z-rotation multiplies column m by exp(i*m*alpha1)
        alpha1, alpha2, beta = 0.31, 1.17, 0.83
        combined = EulerAngles(alpha1 + alpha2, beta)
        partial = EulerAngles(alpha2, beta)
        for mp in range(-2, 3):
            for m in range(-2, 3):
                want = wigner_D2(mp, m, partial) * cmath.exp(1j * m * alpha1)
                assert wigner_D2(mp, m, combined) == pytest.approx(want, abs=1e-13)

    def test_rejects_out_of_range_projections(self):
        with pytest.raises(InvalidInputError):
            wigner_D2(3, 0, EulerAngles(0, 0))
        with pytest.raises(InvalidInputError):
            wigner_D2(0.5, 0.5, EulerAngles(0, 0))
