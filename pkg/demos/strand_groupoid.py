"""Strand words reduced to fractions, and edge loops that recover the generators."""

import random

from thompsonf import multiply
from thompsonf.strand import (GeneratorLetter, canonicalize, edge_loop, from_element,
                              groupoid_compose, normal_word, parse_generator_word, render_dot,
                              to_element)
from thompsonf.verify import random_element
from thompsonf.words import format_word, normal_form

if __name__ == "__main__":
    w = parse_generator_word("x0 x1 x0^-1 x1 x2 x1^-1 x0^-1")
    m = canonicalize(w)
    print("word      ", w)
    print("fraction  ", m)
    print("splits first", normal_word(m))
    print("same under shuffled reductions:",
          all(canonicalize(w, random.Random(s)) == m for s in range(20)))

    print("\nloops through single edges, closed along the right vines:")
    for width in range(1, 5):
        for n in range(width):
            loop = edge_loop(GeneratorLetter(n, 1, width))
            print(f"  x{n}[{width}] -> {format_word(normal_form(loop))}")

    rng = random.Random(1)
    f, g = random_element(rng), random_element(rng)
    h = to_element(groupoid_compose(from_element(f), from_element(g)))
    print("\ngroupoid product equals group product:", h == multiply(f, g))
    print("\n" + render_dot(parse_generator_word("x0 x1 x0^-1")))
