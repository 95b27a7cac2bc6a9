#!/usr/bin/env python3
"""Regenerate the bundled b-file prefixes in testdata/oeis/.

The values are produced by routes that share no code with the Rust crates:
sympy's divisor_sigma for A000203, sympy's partition for A000041,
math.factorial for A000142, the closed form sum_{d|n} d^2 sigma(n/d)
for A001001, and a direct product expansion of prod_j (1-u^j)^(-sigma(j))
using generalized binomial series for A061256.
"""
import os
from math import comb

from math import factorial

from sympy import divisor_sigma, divisors, partition

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "oeis")


def write(name, title, origin, values):
    with open(os.path.join(HERE, name + ".txt"), "w") as fh:
        fh.write(f"# {name}: {title}\n")
        fh.write("# prefix generated offline by testdata/gen_bfiles.py\n")
        for i, v in enumerate(values):
            fh.write(f"{origin + i} {v}\n")


def a061256(n_max):
    coeffs = [1] + [0] * n_max
    for j in range(1, n_max + 1):
        a = int(divisor_sigma(j))
        factor = [0] * (n_max + 1)
        for m in range(0, n_max // j + 1):
            factor[m * j] = comb(a + m - 1, m)
        out = [0] * (n_max + 1)
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            for k in range(0, n_max + 1 - i, j):
                out[i + k] += c * factor[k]
        coeffs = out
    return coeffs


if __name__ == "__main__":
    os.makedirs(HERE, exist_ok=True)
    write("A000203", "sigma(n), the sum of the divisors of n", 1,
          [int(divisor_sigma(n)) for n in range(1, 1001)])
    write("A001001", "number of sublattices of index n in a 3-dimensional lattice", 1,
          [sum(d * d * int(divisor_sigma(n // d)) for d in divisors(n)) for n in range(1, 501)])
    write("A061256", "Euler transform of sigma(n)", 0, a061256(200))
    write("A000041", "number of partitions of n", 0, [int(partition(n)) for n in range(0, 501)])
    write("A000142", "factorial numbers n!", 0, [factorial(n) for n in range(0, 101)])
