import pytest

from thompsonf import IDENTITY, DomainError, classify, evaluate, invert, parse_word
from thompsonf.core.forests import twoway_apply
from thompsonf.metric import (GENERATORS, LABELS, RIGHT, diagram_length, generator_effect,
                              geodesic_word, label_spaces, left_sided_bound_check, length,
                              length_parts, length_strongly_positive, predicted_effect)
from thompsonf.verify import random_element
from thompsonf.words import anti_normal_form, lower_to_x0x1

EXAMPLE_17 = "x1 x3 x3 x3 x6 x7 x10"
EXAMPLE_18 = "x4 x5 x5 x4 x2 x3 x1 x1"


def ev(text):
    return evaluate(parse_word(text))


class TestExamples:
    def test_identity(self):
        assert length(IDENTITY) == 0
        lab = label_spaces(IDENTITY)
        assert lab.top_labels == () and lab.weights == ()
        assert geodesic_word(IDENTITY).letters == ()

    def test_generators(self):
        for name in GENERATORS:
            assert length(ev(name)) == 1
        assert str(geodesic_word(ev("x1"))) == "x1"

    def test_seventeen(self):
        f = ev(EXAMPLE_17)
        assert length(f) == 17
        assert length_parts(f) == (10, 7)
        assert length_strongly_positive(f) == 17

    def test_eighteen(self):
        f = ev(EXAMPLE_18)
        assert length(f) == 18
        assert length_parts(f) == (10, 8)
        assert length_strongly_positive(f) == 18
        w = geodesic_word(f)
        assert len(w) == 18 and evaluate(w) == f
        assert sum(1 for i, _ in w if i == 1) == 8
        assert sum(1 for i, _ in w if i == 0) == 10

    def test_x0_labels(self):
        lab = label_spaces(ev("x0"))
        assert sum(lab.weights) + lab.carets == 1
        assert all(a in LABELS for a in lab.top_labels + lab.bottom_labels)

    def test_render(self):
        text = label_spaces(ev(EXAMPLE_17)).render()
        assert "length=17" in text and text.count("\n") >= 4


class TestStronglyPositive:
    def test_labels_on_strongly_positive(self, ball8):
        for f, _ in ball8.elements():
            if not classify(f).strongly_positive:
                continue
            lab = label_spaces(f)
            assert all(b == RIGHT for b in lab.bottom_labels)
            assert length(f) == length_strongly_positive(f)

    def test_anti_normal_lowering(self, ball8):
        seen = 0
        for f, r in ball8.elements():
            if classify(f).strongly_positive and not f.is_identity:
                low = lower_to_x0x1(anti_normal_form(f))
                assert all(s == 1 for i, s in low if i == 1)
                assert len(low) == r
                seen += 1
        assert seen > 50

    def test_rejects_others(self):
        with pytest.raises(DomainError):
            length_strongly_positive(ev("x0^-1"))


class TestMassProperties:
    def test_matches_bfs(self, ball8):
        for d, r in ball8.items():
            assert diagram_length(d) == r

    def test_lipschitz_and_effects(self, ball8):
        for f, _ in ball8.elements():
            effect = generator_effect(f)
            assert set(effect.values()) <= {-1, 1}
            assert effect == predicted_effect(f)

    def test_descent_and_geodesics(self, ball8):
        for f, r in ball8.elements():
            if r:
                assert min(generator_effect(f).values()) == -1
            w = geodesic_word(f)
            assert evaluate(w) == f and len(w) == r
            weights, carets = length_parts(f)
            assert sum(1 for i, _ in w if i == 1) == carets
            assert sum(1 for i, _ in w if i == 0) == weights

    def test_x1_letters_create_carets(self, rng):
        for _ in range(100):
            f = random_element(rng, 20)
            d = IDENTITY.twoway
            for i, s in reversed(geodesic_word(f).letters):
                after = twoway_apply(d, i, s)
                if i == 1:
                    assert after.carets == d.carets + 1
                d = after
            assert d == f.twoway

    def test_symmetry(self, rng):
        for _ in range(300):
            f = random_element(rng, 24)
            assert length(f) == length(invert(f))

    def test_width_bounds(self, ball8):
        assert all(left_sided_bound_check(f) for f, _ in ball8.elements())
