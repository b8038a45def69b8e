import math

import pytest

from redei.catalog import pair_shares_structure
from redei.cyclestruct import cycle_structure
from redei.families import (
    frobenius_family,
    gcd_power_pm,
    p_qmp1_family,
    pm2_family,
    quarter_family,
)


class TestGcdPowerPm:
    def test_reference_values(self):
        assert gcd_power_pm(2, 3, 5, 1, 1) == 3  # gcd(9, 33)
        assert gcd_power_pm(3, 2, 4, 1, -1) == 10  # gcd(10, 80)
        assert gcd_power_pm(6, 4, 4, -1, -1) == 6**4 - 1

    def test_matches_expanded_gcd_exhaustively(self):
        for c in range(2, 11):
            for k in range(1, 21):
                for l in range(1, 21):
                    for sk in (-1, 1):
                        for sl in (-1, 1):
                            expected = math.gcd(c**k + sk, c**l + sl)
                            assert gcd_power_pm(c, k, l, sk, sl) == expected

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            gcd_power_pm(1, 2, 3, 1, 1)
        with pytest.raises(ValueError):
            gcd_power_pm(3, 0, 3, 1, 1)
        with pytest.raises(ValueError):
            gcd_power_pm(3, 2, 3, 0, 1)


class TestFrobeniusFamily:
    def test_quadratic_case(self):
        pred = frobenius_family(3, 2, 1, 1, -1)
        assert pred.applicable
        assert pred.structure.as_dict() == {1: 2, 4: 2}
        assert pred.pair == (3, 3)

    def test_mixed_parity_rejected_for_nonsquare(self):
        pred = frobenius_family(3, 3, 1, 2, -1)
        assert not pred.applicable
        assert cycle_structure(3, 27, -1) != cycle_structure(9, 27, -1)

    def test_same_pair_accepted_for_square(self):
        pred = frobenius_family(3, 3, 1, 2, 1)
        assert pred.applicable
        assert pred.structure == cycle_structure(3, 27, 1)
        assert pred.structure == cycle_structure(9, 27, 1)
        assert pred.structure.as_dict() == {1: 4, 3: 8}

    def test_odd_exponent_structure(self):
        pred = frobenius_family(5, 3, 1, 1, -1)
        assert pred.structure.as_dict() == {1: 2, 2: 2, 6: 20}
        assert pred.structure == cycle_structure(5, 125, -1)

    def test_no_structure_for_composite_degree(self):
        pred = frobenius_family(3, 4, 1, 3, -1)
        assert pred.structure is None

    def test_rejects_out_of_range_exponent(self):
        with pytest.raises(ValueError):
            frobenius_family(3, 3, 3, 1, -1)
        with pytest.raises(ValueError):
            frobenius_family(3, 1, 1, 1, -1)
        with pytest.raises(ValueError):
            frobenius_family(4, 3, 1, 1, -1)


class TestPQmp1Family:
    def test_large_even_power_recursion(self):
        pred = p_qmp1_family(3, 3**60, -1)
        assert pred.applicable
        counts = pred.structure.as_dict()
        assert counts[8] == 10
        assert counts[24] == 22140
        assert counts[40] == 87169608
        assert counts[120] == 353259652293468362590059312
        assert counts[1] == 2
        # mass conservation over the emitted lengths
        assert pred.structure.total_points() == 3**60 + 1

    def test_q9_square_case(self):
        pred = p_qmp1_family(3, 9, 1)
        assert pred.applicable
        assert pred.structure.as_dict() == {1: 4, 2: 3}
        assert pred.pair == (3, 7)

    def test_prime_field_degenerates_to_identity(self):
        pred = p_qmp1_family(5, 5, 1)
        assert pred.applicable
        assert pred.pair == (1, 1)
        assert pred.structure.as_dict() == {1: 6}

    def test_inapplicable_cases(self):
        assert not p_qmp1_family(3, 27, -1).applicable  # odd power
        assert not p_qmp1_family(5, 25, 1).applicable
        assert not p_qmp1_family(3, 3, -1).applicable

    def test_even_power_structure_matches_formula(self):
        for p, e in ((3, 2), (3, 4), (5, 2), (7, 2), (11, 2)):
            q = p**e
            pred = p_qmp1_family(p, q, -1)
            assert pred.applicable
            assert pred.structure == cycle_structure(p, q, -1)
            assert pred.structure == cycle_structure(q - p + 1, q, -1)

    def test_rejects_wrong_base(self):
        with pytest.raises(ValueError):
            p_qmp1_family(3, 10, -1)
        with pytest.raises(ValueError):
            p_qmp1_family(15, 15, -1)


class TestQuarterFamily:
    def test_q49_square_side(self):
        pred = quarter_family(49, 1)
        assert pred.pair == (13, 37)
        assert pred.structure.as_dict() == {1: 14, 2: 6, 4: 6}

    def test_q41_involution_case(self):
        pred = quarter_family(41, 1)
        assert pred.pair == (11, 31)
        assert pred.structure == cycle_structure(11, 41, 1)
        assert pred.structure == cycle_structure(31, 41, 1)
        assert pred.structure.as_dict() == {1: 12, 2: 15}

    def test_q17_two_and_four_case(self):
        pred = quarter_family(17, 1)
        assert pred.pair == (5, 13)
        assert pred.structure.as_dict() == {1: 6, 2: 2, 4: 2}
        assert pred.structure == cycle_structure(5, 17, 1)

    def test_rejects_wrong_congruence(self):
        with pytest.raises(ValueError):
            quarter_family(11, 1)
        with pytest.raises(ValueError):
            quarter_family(49, -1)


class TestPm2Family:
    def test_plus_side(self):
        pred = pm2_family(11, 1)
        assert pred.pair == (3, 7)
        assert pred.structure is None
        assert cycle_structure(3, 11, 1) == cycle_structure(7, 11, 1)
        assert cycle_structure(3, 11, 1).as_dict() == {1: 4, 4: 2}

    def test_nonsquare_side(self):
        pred = pm2_family(9, -1)
        assert pred.pair == (3, 7)
        assert pair_shares_structure(3, 7, 9, -1)

    def test_degenerate_identity_pair(self):
        pred = pm2_family(7, 1)
        assert pred.pair == (1, 1)
        assert "degenerates" in pred.reason

    def test_rejects_wrong_congruence(self):
        with pytest.raises(ValueError):
            pm2_family(17, 1)
        with pytest.raises(ValueError):
            pm2_family(15, 1)


def test_prediction_json_uses_decimal_strings():
    pred = p_qmp1_family(3, 3**60, -1)
    obj = pred.to_json_obj()
    assert obj["q"] == str(3**60)
    assert obj["pair"] == ["3", str(3**60 - 2)]
    assert obj["structure"]["120"] == "353259652293468362590059312"
    assert obj["applicable"] is True
    flat = pm2_family(11, 1).to_json_obj()
    assert flat["structure"] is None
