from fractions import Fraction

import numpy as np
import pytest

from badapprox import (
    GOLDEN,
    SQRT2_MINUS_1,
    CFSpec,
    DomainError,
    QuadraticNumber,
    SequenceLengthError,
    SturmianSeq,
    agreement,
    crossing_cell,
    crossing_unique,
    decimal_str,
    diversity_scan,
    fib_lucas,
    fractional_grids,
    generate,
    lower_bound_witness,
    witness_ratio_report,
)
from badapprox.sturmian import THETA_GOLDEN, frac_golden_multiple


def test_frozen_bit_prefixes():
    assert generate(GOLDEN, 10).bits(10).tolist() == [1, 0, 1, 1, 0, 1, 0, 1, 1, 0]
    assert generate(SQRT2_MINUS_1, 8).bits(8).tolist() == [0, 1, 0, 1, 0, 0, 1, 0]


def test_golden_fast_path_equals_surrogate_path():
    fast = generate(GOLDEN, 500).bits(500)
    slow = SturmianSeq(GOLDEN)
    slow._golden = False  # force the generic certified route
    slow.ensure(500)
    assert np.array_equal(fast, slow.bits(500))


def test_bits_match_interval_membership():
    """bit i is 1 exactly when {(i+1)*theta} lands in [1-theta, 1)."""
    bits = generate(GOLDEN, 200).bits(200)
    cut = 1 - THETA_GOLDEN
    for i in range(200):
        frac = frac_golden_multiple(i + 1)
        assert bits[i] == (1 if frac >= cut else 0)


def test_bit_frequency():
    length = 10**5
    ones = int(generate(GOLDEN, length).bits(length).sum())
    # the bit sum telescopes to floor((length+1)*theta)
    assert ones == 61804
    assert abs(QuadraticNumber(Fraction(ones, length)) - THETA_GOLDEN) <= Fraction(
        2, length
    )


def test_sequence_validation():
    with pytest.raises(DomainError):
        SturmianSeq(CFSpec(1, (), (1,)))
    with pytest.raises(DomainError):
        SturmianSeq(CFSpec(0, (2, 3), ()))
    with pytest.raises(DomainError):
        generate(GOLDEN, -1)
    view = generate(GOLDEN, 16).bits(16)
    with pytest.raises(ValueError):
        view[0] = 1  # read-only


def test_agreement_contract():
    seq = generate(GOLDEN, 100)
    with pytest.raises(DomainError):
        agreement(seq, 0, 0, 1, 5)
    with pytest.raises(DomainError):
        agreement(seq, 3, 2, 2, 5)
    with pytest.raises(DomainError):
        agreement(seq, 3, 0, 3, 5)
    with pytest.raises(DomainError):
        agreement(seq, 3, 0, 1, 0)
    with pytest.raises(SequenceLengthError) as info:
        agreement(seq, 7, 1, 6, 60)  # needs more bits than are materialized
    assert info.value.required == 7 * 59 + 6 + 1
    assert info.value.available == len(seq)


def test_agreement_accepts_plain_sequences():
    assert agreement([0, 1, 0, 0, 0, 1], 2, 0, 1, 3) == 0
    assert agreement([0, 0, 1, 1, 0, 0], 2, 0, 1, 3) is None
    with pytest.raises(SequenceLengthError):
        agreement([0, 1], 2, 0, 1, 3)


FROZEN_DIVERSITY = [
    (2, 0),
    (3, 2),
    (4, 5),
    (5, 5),
    (6, 5),
    (7, 28),
    (8, 9),
    (9, 8),
    (10, 10),
]


def test_diversity_scan_golden_frozen():
    rows = diversity_scan(GOLDEN, 1, 10)
    assert [(row.r, row.max_agreement) for row in rows] == FROZEN_DIVERSITY
    for row in rows:
        assert row.bound == 18 * row.r * row.r
        assert row.passed


def test_diversity_scan_surrogate_route():
    rows = diversity_scan(SQRT2_MINUS_1, 2, 4)
    assert [row.r for row in rows] == [2, 3, 4]
    assert all(row.passed for row in rows)
    assert all(row.bound == 32 * row.r * row.r for row in rows)


def test_diversity_scan_validation():
    with pytest.raises(DomainError):
        diversity_scan(GOLDEN, 1, 1)
    with pytest.raises(DomainError):
        diversity_scan(SQRT2_MINUS_1, 1, 5)  # stated bound below the actual one


# ---- exact golden machinery ------------------------------------------------


def test_fib_lucas_values():
    assert (fib_lucas(0).fib, fib_lucas(0).lucas) == (0, 2)
    assert (fib_lucas(1).fib, fib_lucas(1).lucas) == (1, 1)
    assert (fib_lucas(10).fib, fib_lucas(10).lucas) == (55, 123)
    for n in range(51):
        fib_lucas(n)  # every identity re-verified internally
    with pytest.raises(DomainError):
        fib_lucas(-1)


def test_frac_golden_multiple():
    assert frac_golden_multiple(0) == QuadraticNumber(0)
    assert frac_golden_multiple(1) == THETA_GOLDEN
    assert frac_golden_multiple(2) == QuadraticNumber(-2, 1, 5)
    with pytest.raises(DomainError):
        frac_golden_multiple(-1)


def test_fractional_grids_frozen_stage_two():
    g = fractional_grids(2)
    assert (g.rows, g.cols) == (10, 3)
    assert decimal_str(g.diff) == "0.09016994375"
    assert decimal_str(g.step_right) == "0.3262379212"
    assert decimal_str(g.step_up) == "0.02128623625"
    assert decimal_str(g.step_wrap) == "0.134661795"
    assert decimal_str(g.lower[9][0]) == "0.04449185123"
    assert decimal_str(g.upper[0][2]) == "0.9787137637"
    assert g.rows * g.cols == fib_lucas(9).fib - fib_lucas(4).fib - 1
    for row in g.lower:
        for v in row:
            assert 0 < v < 1


def test_fractional_grids_later_stages():
    for n in (3, 4):
        g = fractional_grids(n)
        assert g.rows == fib_lucas(2 * n + 1).lucas - 1
        assert g.cols == fib_lucas(2 * n).fib
    for bad in (1, 7):
        with pytest.raises(DomainError):
            fractional_grids(bad)


def test_crossing_cell_frozen():
    c2 = crossing_cell(2)
    assert (c2.i, c2.j) == (9, 1)
    assert (c2.candidate_low, c2.candidate_high) == (28, 30)
    assert decimal_str(c2.lower) == "0.3707297725"
    assert decimal_str(c2.upper) == "0.4608997162"
    c3 = crossing_cell(3)
    assert (c3.candidate_low, c3.candidate_high) == (219, 224)
    c6 = crossing_cell(6)
    assert (c6.i, c6.j) == (519, 55)
    assert (c6.candidate_low, c6.candidate_high) == (74791, 74880)
    with pytest.raises(DomainError):
        crossing_cell(1)


def test_crossing_is_unique():
    for n in (2, 3, 4):
        assert crossing_unique(n)


def test_lower_bound_witness_frozen():
    w2 = lower_bound_witness(2)
    assert (w2.witness.r, w2.witness.a, w2.witness.b) == (7, 1, 6)
    assert w2.witness.first_mismatch == 28
    assert w2.matches == "low"
    assert w2.mismatch_bits == (0, 1)
    assert w2.crossing_pair == (9, 1)
    assert w2.unique_crossing is True
    assert w2.witness.bound == 18 * 49

    w3 = lower_bound_witness(3)
    assert w3.witness.first_mismatch == 219
    assert w3.matches == "low"
    assert (w3.candidate_low, w3.candidate_high) == (219, 224)


def test_witness_agreement_is_quadratic_in_r():
    for n in (2, 3, 4):
        w = lower_bound_witness(n)
        k = w.witness.first_mismatch
        r = w.witness.r
        assert 2 * k >= r * r  # agreement of genuinely quadratic length
        assert k <= w.witness.bound


def test_ratio_report():
    rep = witness_ratio_report()
    assert rep.rows[0] == (2, Fraction(34, 49))
    assert rep.rows[-1][0] == 8
    assert rep.approached == 0
    assert rep.candidates[0] == QuadraticNumber(Fraction(1, 2), Fraction(1, 10), 5)
    assert decimal_str(rep.candidates[0]) == "0.7236067977"
    with pytest.raises(DomainError):
        witness_ratio_report(3, 2)
