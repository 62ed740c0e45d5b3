"""Exact representations of elements of F and their arithmetic."""

from .diagram import TreeDiagram, expand, is_reduced, parse_diagram, reduce, splice
from .dyadic import Dyadic
from .element import (IDENTITY, Classification, Element, abelianize, apply_generator,
                      apply_generator_oneway, classify, commutator, generator, invert,
                      is_commutator_element, is_positive, multiply, parse_element,
                      positive_twoway)
from .forests import (IDENTITY_ONEWAY, IDENTITY_TWOWAY, OneWayDiagram, TwoWayDiagram,
                      format_forest, oneway_apply, oneway_to_tree, oneway_to_twoway,
                      parse_oneway, parse_twoway, tree_to_oneway, tree_to_twoway,
                      twoway_apply, twoway_to_oneway, twoway_to_tree)
from .pl import PLMap, line_to_unit, half_to_unit, unit_to_line, to_pl_half, to_pl_line, to_pl_unit
from .trees import LEAF, Tree, caret, left_vine, parse_tree, right_vine, tree_lcm
