"""Short dead ends, then pairs of elements that are hard to connect inside a ball.

The radius-12 ball takes a few seconds; the in-ball distance scan at
radius 10 takes a minute or two.  Pass ``--quick`` to skip the scan.
"""

import sys
from collections import Counter

from thompsonf import Element
from thompsonf.cayley import ball, dead_ends, escape, mac_path_word, mac_witness_search, replay_path
from thompsonf.metric import geodesic_word, length
from thompsonf.words import format_word

if __name__ == "__main__":
    b = ball(12)
    print("sphere sizes", b.sphere_sizes)
    found = [Element.from_twoway(d) for d in dead_ends(b, 11)]
    print(f"dead ends up to length 11: {len(found)}")
    for f in found:
        print(f"  length {length(f)}  {format_word(geodesic_word(f))}"
              f"  -> after x1^-2 x0: {length(escape(f))}")

    if "--quick" in sys.argv:
        sys.exit(0)
    b10 = ball(10, with_neighbors=True)
    pairs = mac_witness_search(10, b10)
    print("in-ball distances for (g, x0^2 g):", dict(sorted(Counter(p.in_ball_distance for p in pairs).items())))
    word = mac_path_word(4)
    for p in pairs:
        if p.in_ball_distance != 20:
            continue
        path = replay_path(Element.from_twoway(p.g), word)
        if all(q.twoway in b10 for q in path):
            print("a detour of length 20 staying in the ball:", format_word(word))
            print("  lengths along it:", [length(q) for q in path])
            break
