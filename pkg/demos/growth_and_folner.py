"""Growth of the positive monoid and boundary ratios of forest sets."""

from fractions import Fraction

from thompsonf.growth import (count_positive_by_length, folner_counting, folner_ratio,
                              pointed_counts, series_coefficients, solve_pk)

if __name__ == "__main__":
    series = series_coefficients(10).values
    print("series ", list(series))
    print("census ", count_positive_by_length(10))

    print("\nroots of the height-k tree equations")
    for k in (0, 1, 2, 5, 10, 20):
        print(f"  k={k:>2}  root={solve_pk(k):.12f}")

    print("\nboundary ratios, k = 2")
    for n in (2, 4, 8, 12):
        r = folner_ratio(n, 2)
        print(f"  n={n:>2}  size={r.size:>6}  ratio={float(r.ratio):.5f}  via {r.method}")

    p1 = Fraction(solve_pk(1))
    print("\nshare of pointers on a trivial tree, k = 1")
    for n in (10, 100, 1000):
        c = pointed_counts(n + 1, 1)
        share = Fraction(c.trivial_current, c.pointed)
        print(f"  n={n:>4}  {float(share):.6f}  gap {float(share - p1):+.2e}")
    print(f"  ratio at n=1000: {float(folner_counting(1000, 1).ratio):.6f}")
