import random
from fractions import Fraction

import pytest

from thompsonf import (IDENTITY, Element, ParseError, StructureError, abelianize,
                       classify, commutator, evaluate, generator, invert, is_commutator_element,
                       is_positive, multiply, parse_element, parse_word)
from thompsonf.core.diagram import TreeDiagram, expand, is_reduced, parse_diagram, reduce
from thompsonf.core.dyadic import Dyadic
from thompsonf.core.forests import (oneway_to_twoway, tree_to_oneway, tree_to_twoway,
                                    twoway_to_oneway, twoway_to_tree)
from thompsonf.core.trees import LEAF, caret, parse_tree, tree_lcm
from thompsonf.verify import random_element


def ev(text):
    return evaluate(parse_word(text))


class TestDyadic:
    def test_canonical(self):
        assert Dyadic(6, 2) == Dyadic(3, 1)
        assert Dyadic(6, 2).exponent == 1
        assert Dyadic(4, 2) == 1

    def test_arithmetic_exact(self):
        a, b = Dyadic(3, 3), Dyadic(-5, 70)
        assert (a + b).to_fraction() == Fraction(3, 8) - Fraction(5, 2 ** 70)
        assert (a - a) == 0
        assert a.scale(3) == 3 and a.scale(-2) == Dyadic(3, 5)

    def test_coerce_and_order(self):
        assert Dyadic.coerce("3/8") == Dyadic(3, 3)
        assert Dyadic.coerce(Fraction(1, 4)) < Dyadic.coerce("3/8")
        with pytest.raises(ValueError):
            Dyadic.coerce(Fraction(1, 3))

    def test_hash_matches_fraction(self):
        assert hash(Dyadic(1, 1)) == hash(Fraction(1, 2))


class TestTrees:
    def test_interning(self):
        assert parse_tree("((.,.),.)") is caret(caret(LEAF, LEAF), LEAF)

    def test_parse_errors(self):
        for bad in ("(.,.", "(.)", "x", "(.,.))"):
            with pytest.raises(ParseError):
                parse_tree(bad)

    def test_lcm(self):
        a, b = parse_tree("(.,(.,.))"), parse_tree("((.,.),.)")
        assert tree_lcm(LEAF, a) is a and tree_lcm(a, a) is a
        assert str(tree_lcm(a, b)) == "((.,.),(.,.))"


class TestDiagrams:
    def test_trivial_reduction(self):
        c = caret(LEAF, LEAF)
        assert reduce(TreeDiagram(c, c)) == TreeDiagram(LEAF, LEAF)

    def test_mismatched_leaves(self):
        with pytest.raises(StructureError):
            reduce(TreeDiagram(caret(LEAF, LEAF), LEAF))

    def test_expansion_reduces_back(self):
        x0 = generator(0).diagram
        for leaf in range(x0.top.leaves):
            assert reduce(expand(x0, leaf)) == x0

    def test_reduction_order_free(self, rng):
        for _ in range(100):
            d = random_element(rng, 10).diagram
            for _ in range(4):
                d = expand(d, rng.randrange(d.top.leaves))
            results = {reduce(d, random.Random(s)) for s in range(10)}
            assert len(results) == 1
            assert is_reduced(results.pop())

    def test_parse_diagram(self):
        d = parse_diagram("((.,.),.) / (.,(.,.))")
        assert Element.from_diagram(d) == ev("x0")


class TestGroup:
    def test_axioms(self, rng):
        for _ in range(1000):
            f, g, h = (random_element(rng, 8) for _ in range(3))
            assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))
        for _ in range(200):
            f = random_element(rng)
            assert multiply(f, invert(f)) == IDENTITY == multiply(invert(f), f)
            assert multiply(IDENTITY, f) == f == multiply(f, IDENTITY)
            assert invert(invert(f)) == f

    def test_presentation_relations(self):
        assert multiply(ev("x2"), ev("x1")) == multiply(ev("x1"), ev("x3"))
        assert ev("x2 x1") == ev("x1 x3")
        assert ev("x0^-1 x1 x0") == ev("x2")
        assert ev("x3 x1") == ev("x1 x4")

    def test_inverse_generator(self):
        assert invert(ev("x0")) == ev("x0^-1")

    def test_torsion_free(self, rng):
        for _ in range(100):
            f = random_element(rng, 10)
            if f.is_identity:
                continue
            p = f
            for _ in range(6):
                assert p != IDENTITY
                p = multiply(p, f)

    def test_hash_is_structural(self):
        assert len({ev("x2 x1"), ev("x1 x3"), ev("x0^-1 x1 x0 x1"), ev("x1 x2")}) == 2


class TestAbelianization:
    def test_generators(self):
        assert abelianize(ev("x0")) == (1, -1)
        assert abelianize(ev("x1")) == (0, -1)
        assert abelianize(IDENTITY) == (0, 0)

    def test_homomorphism(self, rng):
        for _ in range(200):
            f, g = random_element(rng), random_element(rng)
            a, b = abelianize(f), abelianize(g)
            assert abelianize(multiply(f, g)) == (a[0] + b[0], a[1] + b[1])
            assert is_commutator_element(commutator(f, g))


class TestClassify:
    def test_identity(self):
        c = classify(IDENTITY)
        assert c.positive and c.right_sided and c.strongly_positive and c.left_sided
        assert c.width == 0

    def test_examples(self):
        c = classify(ev("x1 x2"))
        assert c.positive and c.strongly_positive
        assert not classify(ev("x0^-1")).positive

    def test_positive_agrees_with_vine_test(self, ball6):
        for f, _ in ball6.elements():
            assert classify(f).positive == is_positive(f)


class TestConversions:
    def test_round_trips(self, rng):
        for _ in range(500):
            f = random_element(rng, rng.randint(0, 16))
            assert Element.from_diagram(twoway_to_tree(tree_to_twoway(f.diagram))) == f
            assert twoway_to_oneway(f.twoway) == f.oneway
            assert oneway_to_twoway(f.oneway) == f.twoway
            assert Element.from_oneway(tree_to_oneway(f.diagram)) == f

    def test_identity_everywhere(self):
        assert str(IDENTITY.twoway) == "*.\n*."
        assert IDENTITY.oneway == ((), ())

    def test_parse_element_kinds(self):
        x0 = ev("x0")
        assert parse_element("x0") == x0
        assert parse_element(". *.\n*. .") == x0
        assert parse_element("((.,.),.)\n(.,(.,.))") == x0
        with pytest.raises(ParseError):
            parse_element("x0", kind="nonsense")

