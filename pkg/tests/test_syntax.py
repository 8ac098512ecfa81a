"""Parser and printer tests, including the round-trip property."""

import pytest
from hypothesis import given

from fracterm.errors import ParseError
from fracterm.syntax import (
    parse,
    term_from_json,
    term_from_json_obj,
    term_to_json,
    term_to_json_obj,
    to_text,
)
from fracterm.terms import Add, Div, Mul, Neg, Numeral, Var

from test_terms import terms_strategy


class TestParse:
    def test_grouped_sum_over_literal(self):
        assert parse("(2+3)/7") == Div(Add(Numeral(2), Numeral(3)), Numeral(7))

    def test_mixed_literal(self):
        assert parse("3_1/2") == Add(Numeral(3), Div(Numeral(1), Numeral(2)))

    def test_negated_mixed_literal_covers_whole_sum(self):
        assert parse("-3_1/2") == Neg(Add(Numeral(3), Div(Numeral(1), Numeral(2))))

    def test_division_is_left_associative(self):
        assert parse("1/2/3") == Div(Div(Numeral(1), Numeral(2)), Numeral(3))

    def test_mul_and_div_share_precedence(self):
        assert parse("1/2*3") == Mul(Div(Numeral(1), Numeral(2)), Numeral(3))
        assert parse("1*2/3") == Div(Mul(Numeral(1), Numeral(2)), Numeral(3))

    def test_additive_precedence(self):
        assert parse("1+2*3") == Add(Numeral(1), Mul(Numeral(2), Numeral(3)))

    def test_subtraction_desugars(self):
        assert parse("2-3") == Add(Numeral(2), Neg(Numeral(3)))

    def test_subtraction_left_associative(self):
        assert parse("1-2-3") == Add(Add(Numeral(1), Neg(Numeral(2))), Neg(Numeral(3)))

    def test_unary_minus_binds_tighter_than_mul(self):
        assert parse("-2*3") == Mul(Neg(Numeral(2)), Numeral(3))

    def test_double_unary_minus(self):
        assert parse("--2") == Neg(Neg(Numeral(2)))

    def test_variables(self):
        assert parse("(x+y)/z") == Div(Add(Var("x"), Var("y")), Var("z"))

    def test_whitespace_tolerated(self):
        assert parse(" 1 + 2 ") == Add(Numeral(1), Numeral(2))

    @pytest.mark.parametrize(
        "bad",
        ["", "0.5", "(1", "1)", "1 2", "1+", "*3", "3_1", "3_1/", "3_/2", "1//2", "#"],
    )
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse(bad)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc_info:
            parse("1+$")
        assert exc_info.value.position == 2


class TestPrint:
    def test_fraction(self):
        assert to_text(Div(Numeral(1), Numeral(2))) == "(1/2)"

    def test_negation_in_sum(self):
        assert to_text(Add(Numeral(1), Neg(Numeral(1)))) == "(1+(-1))"

    def test_nested_fraction(self):
        t = Div(Div(Numeral(1), Numeral(4)), Div(Numeral(3), Numeral(2)))
        assert to_text(t) == "((1/4)/(3/2))"

    @given(terms_strategy())
    def test_round_trip(self, t):
        assert parse(to_text(t)) == t


class TestJson:
    def test_encoding_shape(self):
        t = Div(Add(Numeral(2), Var("x")), Numeral(7))
        assert term_to_json_obj(t) == {
            "op": "div",
            "args": [
                {"op": "add", "args": [{"num": "2"}, {"var": "x"}]},
                {"num": "7"},
            ],
        }

    @given(terms_strategy())
    def test_round_trip(self, t):
        assert term_from_json(term_to_json(t)) == t

    @pytest.mark.parametrize(
        "obj",
        [
            {"num": "-1"},
            {"num": 3},
            {"var": ""},
            {"op": "pow", "args": []},
            {"op": "neg", "args": []},
            {"op": "add", "args": [{"num": "1"}]},
            [],
        ],
    )
    def test_rejects_malformed(self, obj):
        with pytest.raises(ParseError):
            term_from_json_obj(obj)

    def test_rejects_bad_json_text(self):
        with pytest.raises(ParseError):
            term_from_json("{not json")
