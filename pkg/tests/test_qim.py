import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from edgeconceal.qim import (WATERMARK_POSITIONS, embed_block, extract_block, parity_round,
                             standard_round)

ratios = st.floats(-1000, 1000, allow_nan=False)
bits = st.integers(0, 1)
blocks = arrays(np.float64, (8, 8), elements=st.floats(-200, 200))
columns = arrays(np.uint8, 8, elements=st.integers(0, 1))


@pytest.mark.parametrize("ratio, bit, expected", [
    (3.4, 0, 4), (3.4, 1, 3), (3.0, 0, 2), (-2.6, 1, -3),
    (0.0, 1, 1), (0.0, 0, 0), (-3.0, 0, -2), (1.0, 0, 0), (-1.0, 0, 0),
])
def test_parity_round_examples(ratio, bit, expected):
    assert parity_round(ratio, bit) == expected


@pytest.mark.parametrize("ratio, expected", [(2.5, 3), (-2.5, -3), (0.4, 0), (0.0, 0)])
def test_standard_round_examples(ratio, expected):
    assert standard_round(ratio) == expected


@given(ratios, bits)
def test_parity_matches_bit(r, b):
    assert abs(parity_round(r, b)) % 2 == b


@given(ratios, bits)
def test_parity_round_is_nearest(r, b):
    q = parity_round(r, b)
    assert abs(q - r) <= 1
    # no integer of the right parity is strictly closer
    for cand in (q - 2, q + 2):
        assert abs(cand - r) >= abs(q - r)


@given(ratios, bits)
def test_parity_round_within_one_step_of_standard(r, b):
    assert abs(parity_round(r, b) - standard_round(r)) <= 1


def test_positions_are_eight_distinct_ac():
    assert len(set(WATERMARK_POSITIONS)) == 8
    assert (1, 1) not in WATERMARK_POSITIONS


def test_embed_zero_block_with_fig2_payload():
    payload = [1, 0, 0, 0, 1, 1, 1, 0]
    levels = embed_block(np.zeros((8, 8)), payload)
    expected = np.zeros((8, 8), dtype=np.int64)
    for (r, c), b in zip(WATERMARK_POSITIONS, payload):
        expected[r - 1, c - 1] = b
    assert np.array_equal(levels, expected)


@given(blocks)
def test_zero_payload_gives_even_levels(r):
    levels = embed_block(r, [0] * 8)
    for row, col in WATERMARK_POSITIONS:
        assert levels[row - 1, col - 1] % 2 == 0


@given(blocks, columns)
def test_embed_extract_round_trip(r, payload):
    levels = embed_block(r, payload)
    assert np.array_equal(extract_block(levels), payload)
    # everything off the watermark positions is ordinary rounding
    mask = np.ones((8, 8), bool)
    for row, col in WATERMARK_POSITIONS:
        mask[row - 1, col - 1] = False
    assert np.array_equal(levels[mask], standard_round(r)[mask])


def test_extract_examples():
    levels = np.zeros((8, 8), dtype=np.int64)
    for (r, c), v in zip(WATERMARK_POSITIONS, [0, 2, -4, 6, 1, -3, 5, 0]):
        levels[r - 1, c - 1] = v
    assert extract_block(levels).tolist() == [0, 0, 0, 0, 1, 1, 1, 0]
    assert extract_block(np.zeros((8, 8))).tolist() == [0] * 8
