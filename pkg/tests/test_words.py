import random
from itertools import combinations_with_replacement

import pytest

from thompsonf import (IDENTITY, DomainError, ParseError, ResourceLimitError, Word, apply_generator,
                       apply_generator_oneway, classify, evaluate, parse_word)
from thompsonf.words import (X0X1, anti_normal_form, caret_order_check, evaluate_by_multiplication,
                             evaluate_oneway, extension_words, format_word, is_normal_form,
                             lower_to_x0x1, lowered_length, normal_form, normal_form_by_rewriting,
                             rewrite_moves, word_graph)
from thompsonf.verify import random_element, random_word


def ev(text):
    return evaluate(parse_word(text))


def nf(text):
    return format_word(normal_form(ev(text)))


class TestParsing:
    def test_shorthand_expands(self):
        assert parse_word("x3^2 x0^-2").indices() == (3, 3, 0, 0)
        assert [s for _, s in parse_word("x0^-2")] == [-1, -1]

    def test_empty_markers(self):
        for text in ("", "1", " e "):
            assert len(parse_word(text)) == 0
        assert format_word(Word()) == "1"

    def test_bad_tokens(self):
        for text in ("y1", "x", "x1^", "x-1"):
            with pytest.raises(ParseError):
                parse_word(text)

    def test_round_trip(self, rng):
        for _ in range(100):
            w = random_word(rng, rng.randint(0, 10), max_index=5)
            assert parse_word(str(w)) == w
            v = random_word(rng, rng.randint(0, 10))
            assert parse_word(str(v), X0X1) == v

    def test_alphabet_guard(self):
        with pytest.raises(ValueError):
            parse_word("x2", X0X1)


class TestEvaluation:
    def test_three_paths_agree(self, rng):
        for _ in range(300):
            w = random_word(rng, rng.randint(0, 12), max_index=5)
            f = evaluate(w)
            assert f == evaluate_oneway(w) == evaluate_by_multiplication(w)

    def test_empty(self):
        assert evaluate(Word()) == IDENTITY

    def test_generator_actions(self, rng):
        for _ in range(100):
            f = random_element(rng)
            for i in range(4):
                for s in (1, -1):
                    g = apply_generator(i, s, f)
                    assert g == evaluate(Word([(i, s)])) * f
                    assert g == apply_generator_oneway(i, s, f)
                    assert apply_generator(i, -s, g) == f

    def test_x1_cancels_bottom_caret(self):
        f = ev("x1^-1")
        g = apply_generator(1, 1, f)
        assert g == IDENTITY
        assert classify(g).caret_count == classify(f).caret_count - 1
        assert apply_generator(1, 1, IDENTITY) == ev("x1")


class TestNormalForm:
    def test_worked_examples(self):
        assert nf("x0 x3 x6 x3^-1 x1 x4^-1 x0 x3^-1 x0^-1") == "x0 x1 x6 x4^-1 x2^-1"
        assert nf("x1 x0^-1 x1") == "x1 x2 x0^-1"
        assert nf("") == "1"

    def test_rewriting_oracle(self, rng):
        for _ in range(300):
            w = random_word(rng, rng.randint(0, 14), max_index=5)
            assert normal_form_by_rewriting(w) == normal_form(evaluate(w))

    def test_retraction_and_shape(self, rng):
        for _ in range(200):
            f = random_element(rng, 14)
            w = normal_form(f)
            assert evaluate(w) == f
            assert is_normal_form(w)
            assert normal_form(evaluate(w)) == w


class TestLowering:
    def test_examples(self):
        assert format_word(lower_to_x0x1(parse_word("x1"))) == "x1"
        assert format_word(lower_to_x0x1(parse_word("x6 x8 x4 x7"))) == \
            "x0^-5 x1 x0^-2 x1 x0^4 x1 x0^-3 x1 x0^6"
        assert format_word(lower_to_x0x1(parse_word("x3"))) == "x0^-2 x1 x0^2"

    def test_value_and_length(self, rng):
        for _ in range(100):
            w = random_word(rng, rng.randint(0, 8), max_index=6)
            low = lower_to_x0x1(w)
            assert evaluate(low) == evaluate(w)
            assert len(low) == lowered_length(w)


class TestAntiNormal:
    def test_example(self):
        assert format_word(anti_normal_form(ev("x1 x3 x3 x3 x6 x7 x10"))) == "x4 x2 x3 x4 x2 x2 x1"
        assert format_word(anti_normal_form(ev("x0"))) == "x0"

    def test_idempotent_and_flagged(self, rng):
        for _ in range(100):
            w = Word.positive(rng.randint(0, 5) for _ in range(rng.randint(1, 7)))
            f = evaluate(w)
            a = anti_normal_form(f)
            assert evaluate(a) == f
            assert anti_normal_form(evaluate(a)) == a
            assert caret_order_check(a, f).is_anti_normal

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            anti_normal_form(ev("x0^-1"))


class TestMoves:
    def test_examples(self):
        moves = rewrite_moves(parse_word("x2 x0"))
        forward = [m for m in moves if m.move in ("1", "2", "3", "4")]
        assert len(forward) == 1 and format_word(forward[0].word) == "x0 x3"
        assert rewrite_moves(parse_word("x0 x1")) == []
        assert rewrite_moves(Word()) == []

    def test_soundness(self, rng):
        for _ in range(200):
            w = random_word(rng, rng.randint(2, 10), max_index=5)
            f = evaluate(w)
            for m in rewrite_moves(w):
                assert evaluate(m.word) == f, m


class TestWordGraph:
    def test_small(self):
        g = word_graph(ev("x0"))
        assert len(g.vertices) == 1 and not g.edges
        g = word_graph(ev("x2 x0"))
        assert set(g.vertices) == {(2, 0), (0, 3)}
        assert g.edges == (((2, 0), (0, 3)),)

    def test_thirty_words(self):
        assert len(word_graph(ev("x0 x2 x3 x5 x5")).vertices) == 30

    def test_source_and_sink(self):
        for c in range(1, 6):
            for idx in combinations_with_replacement(range(4), c):
                f = evaluate(Word.positive(idx))
                g = word_graph(f)
                assert g.sources == [g.anti_normal]
                assert g.sinks == [g.normal]
                assert all(evaluate(Word.positive(v)) == f for v in g.vertices)
                assert set(g.vertices) == extension_words(f)

    def test_dot(self):
        dot = word_graph(ev("x2 x0")).to_dot()
        assert dot.startswith("digraph") and '"x2 x0" -> "x0 x3"' in dot

    def test_vertex_cap(self):
        with pytest.raises(ResourceLimitError):
            word_graph(ev("x0 x2 x3 x5 x5"), vertex_cap=5)

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            word_graph(ev("x1^-1"))


class TestCaretOrder:
    def test_flags(self):
        f = ev("x0 x3")
        assert caret_order_check(parse_word("x0 x3"), f).is_normal
        g = ev("x4 x2 x3 x4 x2 x2 x1")
        assert caret_order_check(parse_word("x4 x2 x3 x4 x2 x2 x1"), g).is_anti_normal
        flags = caret_order_check(parse_word("x2 x0"), ev("x2 x0"))
        assert not flags.is_normal


def test_random_positive_words_share_graph():
    rng = random.Random(5)
    for _ in range(30):
        idx = [rng.randint(0, 4) for _ in range(rng.randint(1, 6))]
        f = evaluate(Word.positive(idx))
        assert tuple(idx) in word_graph(f).vertices
