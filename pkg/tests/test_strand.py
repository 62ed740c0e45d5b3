import random

import pytest

from thompsonf import IDENTITY, ParseError, StructureError, evaluate, invert, multiply, parse_word
from thompsonf.core.pl import to_pl_unit
from thompsonf.core.trees import LEAF, caret, parse_tree
from thompsonf.strand import (ForestMorphism, GeneratorLetter, GeneratorWord, GroupoidMorphism,
                              canonicalize,
                              edge_loop, evaluate_forest_word, forest_compose, forest_generator,
                              forest_lcm, forest_normal_form, forest_quotient, from_element,
                              groupoid_compose, groupoid_identity, identity, is_spanning_edge,
                              normal_word, parse_generator_word, random_equivalent_word,
                              random_forest, random_generator_word, reduce_fraction, relation_moves,
                              render_dot, spanning_path, to_element)
from thompsonf.verify import random_element

C = caret(LEAF, LEAF)


def ev(text):
    return evaluate(parse_word(text))


class TestForests:
    def test_identity_and_associativity(self):
        rng = random.Random(3)
        for _ in range(100):
            f = random_forest(rng.randint(1, 4), rng.randint(0, 5), rng)
            g = random_forest(f.codomain, rng.randint(0, 5), rng)
            h = random_forest(g.codomain, rng.randint(0, 5), rng)
            assert forest_compose(identity(f.domain), f) == f == forest_compose(f, identity(f.codomain))
            assert forest_compose(forest_compose(f, g), h) == forest_compose(f, forest_compose(g, h))

    def test_relation(self):
        for w in range(1, 7):
            for n in range(w):
                for k in range(n):
                    lhs = forest_compose(forest_generator(n, w), forest_generator(k, w + 1))
                    rhs = forest_compose(forest_generator(k, w), forest_generator(n + 1, w + 1))
                    assert lhs == rhs

    def test_left_comb(self):
        f = forest_compose(forest_generator(0, 1), forest_generator(0, 2))
        assert f == ForestMorphism((parse_tree("((.,.),.)"),))

    def test_guards(self):
        with pytest.raises(StructureError):
            forest_generator(2, 2)
        with pytest.raises(StructureError):
            forest_compose(identity(2), identity(3))
        with pytest.raises(StructureError):
            ForestMorphism(())

    def test_cancellative(self):
        forests = {random_forest(2, c, random.Random(s)) for s in range(200) for c in range(4)}
        rng = random.Random(4)
        for _ in range(20):
            f = random_forest(2, rng.randint(0, 3), rng)
            right = {}
            for a in forests:
                if a.codomain == f.domain:
                    key = forest_compose(a, f)
                    assert right.setdefault(key, a) == a
            g = random_forest(f.codomain, rng.randint(0, 3), rng)
            assert forest_quotient(forest_compose(f, g), f) == g


class TestNormalForms:
    def test_examples(self):
        assert str(forest_normal_form(forest_generator(0, 2))) == "x0[2]"
        w = parse_generator_word("x0 x2 x3 x5 x5", start=6)
        assert forest_normal_form(evaluate_forest_word(w)) == w

    def test_round_trip(self):
        rng = random.Random(9)
        for _ in range(500):
            f = random_forest(rng.randint(1, 4), rng.randint(0, 8), rng)
            w = forest_normal_form(f)
            assert evaluate_forest_word(w) == f
            assert list(w) == sorted(w, key=lambda l: l.index)


class TestLcm:
    def test_cases(self):
        g = forest_generator(0, 2)
        assert forest_lcm(g, g) == (identity(3), identity(3))
        a, b = forest_lcm(identity(2), g)
        assert a == g and b == identity(3)
        a, b = forest_lcm(forest_generator(0, 2), forest_generator(1, 2))
        both = forest_compose(forest_generator(0, 2), a)
        assert both == forest_compose(forest_generator(1, 2), b) == ForestMorphism((C, C))

    def test_least(self):
        rng = random.Random(5)
        for _ in range(100):
            f, g = random_forest(3, rng.randint(0, 5), rng), random_forest(3, rng.randint(0, 5), rng)
            a, b = forest_lcm(f, g)
            common = forest_compose(f, a)
            assert common == forest_compose(g, b)
            h = random_forest(common.codomain, rng.randint(0, 3), rng)
            bigger = forest_compose(common, h)
            assert forest_quotient(bigger, common) == h


class TestParsing:
    def test_widths(self):
        w = parse_generator_word("x0 x1 x1^-1")
        assert [l.width for l in w] == [1, 2, 2]
        assert (w.start, w.end) == (1, 2)
        assert str(w) == "x0[1] x1[2] x1[2]^-1"

    def test_bad_words(self):
        with pytest.raises(StructureError):
            parse_generator_word("x1")
        with pytest.raises(StructureError):
            parse_generator_word("x0[2]")
        with pytest.raises(ParseError):
            parse_generator_word("y0")
        with pytest.raises(StructureError):
            GeneratorWord([GeneratorLetter(0, 1, 1), GeneratorLetter(0, 1, 1)])

    def test_inverse_word(self):
        w = parse_generator_word("x0 x1 x0^-1")
        assert canonicalize(w + w.inverse()) == groupoid_identity(1)


class TestCanonical:
    def test_reduction_moves(self):
        assert canonicalize(parse_generator_word("x0 x0^-1")) == groupoid_identity(1)
        assert canonicalize(parse_generator_word("x0^-1 x0", start=2)) == groupoid_identity(2)

    def test_reduced_output(self):
        rng = random.Random(6)
        for _ in range(200):
            m = canonicalize(random_generator_word(20, rng))
            assert m.is_reduced

    def test_confluence(self):
        rng = random.Random(7)
        for _ in range(100):
            w = random_generator_word(20, rng)
            base = canonicalize(w)
            assert all(canonicalize(w, random.Random(s)) == base for s in range(5))

    def test_relation_invariance(self):
        rng = random.Random(8)
        for _ in range(100):
            w = random_generator_word(12, rng)
            base = canonicalize(w)
            for v in relation_moves(w):
                assert canonicalize(v) == base
            assert canonicalize(random_equivalent_word(w, rng, 15)) == base

    def test_congruence(self):
        rng = random.Random(10)
        for _ in range(100):
            w1 = random_generator_word(rng.randint(0, 10), rng)
            w2 = random_generator_word(rng.randint(0, 10), rng, start=w1.end)
            assert canonicalize(w1 + w2) == groupoid_compose(canonicalize(w1), canonicalize(w2))

    def test_normal_word(self):
        rng = random.Random(12)
        for _ in range(100):
            m = canonicalize(random_generator_word(15, rng))
            w = normal_word(m)
            signs = [l.sign for l in w]
            assert signs == sorted(signs, reverse=True)
            assert canonicalize(w) == m

    def test_reduce_removes_expansions(self):
        g = forest_generator(1, 3)
        m = from_element(ev("x0"))
        expanded = GroupoidMorphism(forest_compose(m.p, identity(3)), forest_compose(m.q, identity(3)))
        assert reduce_fraction(expanded) == m
        wide = GroupoidMorphism(forest_compose(m.p, g), forest_compose(m.q, g))
        assert reduce_fraction(wide) == m


class TestGroup:
    def test_handedness(self):
        m = GroupoidMorphism(ForestMorphism((parse_tree("((.,.),.)"),)),
                             ForestMorphism((parse_tree("(.,(.,.))"),)))
        x0 = to_element(m)
        assert x0 == ev("x0")
        assert to_pl_unit(x0) == to_pl_unit(ev("x0"))
        assert to_element(m.inverse()) == ev("x0^-1")
        assert to_element(groupoid_identity(1)) == IDENTITY

    def test_compose_matches_multiply(self):
        rng = random.Random(13)
        for _ in range(500):
            f, g = random_element(rng), random_element(rng)
            m = groupoid_compose(from_element(f), from_element(g))
            assert to_element(m) == multiply(f, g)

    def test_round_trip(self):
        rng = random.Random(14)
        for _ in range(500):
            f = random_element(rng)
            assert to_element(from_element(f)) == f
        with pytest.raises(StructureError):
            to_element(groupoid_identity(2))

    def test_inverses(self):
        rng = random.Random(15)
        for _ in range(100):
            m = canonicalize(random_generator_word(10, rng))
            assert groupoid_compose(m, m.inverse()) == groupoid_identity(m.source)
            assert groupoid_compose(groupoid_identity(m.source), m) == m

    def test_presentation_recovery(self):
        for w in range(1, 9):
            for n in range(w):
                l = GeneratorLetter(n, 1, w)
                loop = edge_loop(l)
                if is_spanning_edge(l):
                    assert loop == IDENTITY
                else:
                    assert loop == ev(f"x{n}")
                assert edge_loop(l.inverse()) == invert(loop)

    def test_spanning_path(self):
        assert spanning_path(1) == groupoid_identity(1)
        w = GeneratorWord([GeneratorLetter(i, 1, i + 1) for i in range(4)])
        assert canonicalize(w) == spanning_path(5)


class TestDot:
    def test_shapes(self):
        dot = render_dot(parse_generator_word("x0 x1 x0^-1"))
        assert dot.startswith("digraph strands {") and dot.endswith("}")
        assert dot.count("shape=triangle") == 2 and dot.count("shape=invtriangle") == 1
        assert dot.count("-> out") == 2
