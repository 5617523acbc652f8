"""Primitive solutions of x^2 + beta*y^2 = z^2 for several square-free beta.

Each solution is found through a witness (b, c, m, n) with beta = b*c, and
independently confirmed by brute force.  The classic Pythagorean triples
are the beta = 1 column.
"""

from flowerlab.pythag import brute_force_triples, generate_triples


def main() -> None:
    bound = 60
    for beta in (1, 2, 3, 7):
        sols = generate_triples(beta, bound)
        brute = brute_force_triples(beta, bound)
        assert {s.triple() for s in sols} == brute
        print(f"beta={beta}: {len(sols)} primitive solutions with z <= {bound} "
              f"(oracle agrees)")
        for s in sols[:4]:
            w = s.witnesses[0]
            form = "halved" if w.halved else "plain"
            print(f"  {s.x}^2 + {beta}*{s.y}^2 = {s.z}^2   "
                  f"witness b={w.b} c={w.c} m={w.m} n={w.n} ({form})")
        if len(sols) > 4:
            print(f"  ... and {len(sols) - 4} more")


if __name__ == "__main__":
    main()
