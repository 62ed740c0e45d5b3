"""Normal forms and word lengths for a few hand-picked elements.

Run with ``python3 demos/lengths_and_normal_forms.py``.
"""

from thompsonf import evaluate, parse_word
from thompsonf.metric import geodesic_word, label_spaces
from thompsonf.words import anti_normal_form, format_word, normal_form, word_graph


def show(text: str) -> None:
    f = evaluate(parse_word(text))
    print(f"word            {text}")
    print(f"normal form     {format_word(normal_form(f))}")
    lab = label_spaces(f)
    print(lab.render())
    print(f"geodesic        {format_word(geodesic_word(f))}")
    print()


if __name__ == "__main__":
    show("x0 x3 x6 x3^-1 x1 x4^-1 x0 x3^-1 x0^-1")
    show("x1 x3 x3 x3 x6 x7 x10")
    show("x4 x5 x5 x4 x2 x3 x1 x1")

    f = evaluate(parse_word("x0 x2 x3 x5 x5"))
    g = word_graph(f)
    print(f"positive words for x0 x2 x3 x5 x5: {len(g.vertices)}")
    print(f"  rewrite source {format_word(anti_normal_form(f))}, sink {format_word(normal_form(f))}")
