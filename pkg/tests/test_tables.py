import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from loglin_effects import (
    CELLS,
    ContingencyTable,
    TableError,
    dichotomize,
    joint_probabilities,
    margin,
    parse_table,
    serialize_table,
    validate,
)

CSV_FULL = "x,z,y,count\n" + "".join(
    f"{x},{z},{y},{4*x+2*z+y+1}\n" for x, z, y in CELLS
)


def positive_counts():
    return st.lists(
        st.floats(min_value=0.1, max_value=1e4), min_size=8, max_size=8
    )


class TestParse:
    def test_csv_all_cells(self):
        t = parse_table(CSV_FULL, "csv")
        assert t.total == 36
        assert t.count(1, 1, 1) == 8

    def test_csv_missing_cells_filled_with_zero(self):
        text = "x,z,y,count\n0,0,0,1\n0,0,1,2\n0,1,0,3\n0,1,1,4\n"
        t = parse_table(text, "csv")
        assert t.count(0, 1, 1) == 4
        assert all(t.count(1, z, y) == 0 for z in (0, 1) for y in (0, 1))

    def test_input_order_independence(self):
        shuffled = "x,z,y,count\n1,1,1,8\n0,0,0,1\n0,0,1,2\n"
        t = parse_table(shuffled, "csv")
        assert t.counts[0] == 1 and t.counts[1] == 2 and t.counts[7] == 8

    def test_non_binary_level_rejected(self):
        with pytest.raises(TableError, match="non-binary level"):
            parse_table("x,z,y,count\n2,0,0,1\n", "csv")

    def test_duplicate_cell_rejected(self):
        with pytest.raises(TableError, match="duplicate"):
            parse_table("x,z,y,count\n0,0,0,1\n0,0,0,2\n", "csv")

    def test_negative_count_rejected(self):
        with pytest.raises(TableError, match="negative"):
            parse_table("x,z,y,count\n0,0,0,-1\n", "csv")

    def test_json_object_cells(self):
        doc = (
            '{"labels": ["a","b","c"], "cells": ['
            + ",".join(
                f'{{"x":{x},"z":{z},"y":{y},"count":{4*x+2*z+y+1}}}'
                for x, z, y in CELLS
            )
            + "]}"
        )
        t = parse_table(doc, "json")
        assert t.total == 36
        assert t.labels == ("a", "b", "c")

    def test_json_flat_array(self):
        t = parse_table('{"cells": [1,2,3,4,5,6,7,8]}', "json")
        assert t.counts == tuple(float(i) for i in range(1, 9))

    def test_bytes_and_crlf_accepted(self):
        t = parse_table(CSV_FULL.replace("\n", "\r\n").encode(), "csv")
        assert t.total == 36

    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_roundtrip(self, fmt, rng):
        t = ContingencyTable(tuple(rng.uniform(0.5, 50, 8)))
        assert parse_table(serialize_table(t, fmt), fmt).counts == pytest.approx(
            t.counts, abs=0
        )


class TestValidate:
    def test_all_positive_passthrough(self):
        t = ContingencyTable((1,) * 8)
        assert validate(t, "error") is t

    def test_correct_adds_to_every_cell(self):
        t = ContingencyTable((0, 1, 2, 3, 4, 5, 6, 7))
        fixed = validate(t, "correct", 0.5)
        assert fixed.counts == tuple(c + 0.5 for c in t.counts)
        assert fixed.total == t.total + 8 * 0.5

    def test_zero_cell_error_policy(self):
        t = ContingencyTable((0, 1, 1, 1, 1, 1, 1, 1))
        with pytest.raises(TableError, match=r"\(0, 0, 0\)"):
            validate(t, "error")

    def test_allow_passthrough(self):
        t = ContingencyTable((0, 1, 1, 1, 1, 1, 1, 1))
        assert validate(t, "allow") is t


class TestProbabilities:
    def test_uniform(self):
        j = joint_probabilities(ContingencyTable((10,) * 8))
        assert all(p == 0.125 for p in j.probs)

    def test_half_zero(self):
        j = joint_probabilities(ContingencyTable((1, 1, 1, 1, 0, 0, 0, 0)))
        assert j.probs[:4] == (0.25,) * 4
        assert j.probs[4:] == (0.0,) * 4

    @given(positive_counts())
    def test_sums_to_one(self, counts):
        j = joint_probabilities(ContingencyTable(tuple(counts)))
        assert math.isclose(sum(j.probs), 1.0, abs_tol=1e-12)

    @given(positive_counts())
    def test_margin_matches_brute_force(self, counts):
        j = joint_probabilities(ContingencyTable(tuple(counts)))
        m = margin(j, ("X", "Y"))
        for x in (0, 1):
            for y in (0, 1):
                expected = sum(j.prob(x, z, y) for z in (0, 1))
                assert math.isclose(m.prob(x, y), expected, abs_tol=1e-12)

    @given(positive_counts())
    def test_conditional_margin_per_cell(self, counts):
        j = joint_probabilities(ContingencyTable(tuple(counts)))
        pz1 = sum(j.prob(x, 1, y) for x in (0, 1) for y in (0, 1))
        m = margin(j, ("X", "Y"), condition=("Z", 1))
        for x in (0, 1):
            for y in (0, 1):
                assert math.isclose(
                    m.prob(x, y), j.prob(x, 1, y) / pz1, abs_tol=1e-12
                )

    def test_full_margin_reproduces_joint(self, rng):
        j = joint_probabilities(ContingencyTable(tuple(rng.uniform(1, 9, 8))))
        m = margin(j, ("X", "Z", "Y"))
        for cell, p in zip(CELLS, j.probs):
            assert m.prob(*cell) == p

    def test_uniform_margin_given_z(self):
        j = joint_probabilities(ContingencyTable((5,) * 8))
        m = margin(j, ("X", "Y"), condition=("Z", 1))
        assert all(math.isclose(v, 0.25) for v in m.probs.values())

    def test_keep_conditioning_variable_rejected(self):
        j = joint_probabilities(ContingencyTable((1,) * 8))
        with pytest.raises(TableError):
            margin(j, ("X", "Z"), condition=("Z", 0))

    def test_zero_probability_slice_rejected(self):
        j = joint_probabilities(ContingencyTable((1, 1, 0, 0, 1, 1, 0, 0)))
        with pytest.raises(TableError, match="zero probability"):
            margin(j, ("X", "Y"), condition=("Z", 1))


class TestDichotomize:
    def test_two_point_split(self):
        t = dichotomize([(0, 0, 0), (2, 2, 2)])
        assert t.count(0, 0, 0) == 1
        assert t.count(1, 1, 1) == 1
        assert t.total == 2

    def test_constant_variable_rejected(self):
        with pytest.raises(TableError, match="constant"):
            dichotomize([(1, 0, 0), (1, 1, 1)])

    def test_boundary_maps_to_one(self):
        # means are (1, 1, 1); the exactly-at-mean record goes to cell (1,1,1)
        t = dichotomize([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
        assert t.count(1, 1, 1) == 2

    def test_explicit_thresholds(self):
        t = dichotomize([(5, 5, 5), (1, 1, 1)], thresholds=(3, 3, 3))
        assert t.count(1, 1, 1) == 1
        assert t.count(0, 0, 0) == 1

    def test_linear_relation_concentrates_concordant_cells(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=100)
        z = 1.5 * x + rng.normal(scale=0.4, size=100)
        y = 2.0 * x + z + rng.normal(scale=0.4, size=100)
        t = dichotomize(list(zip(x, z, y)))
        concordant = t.count(0, 0, 0) + t.count(1, 1, 1)
        assert concordant > 0.6 * t.total
