"""Gauss-Hermite rules for the standard normal: exactness and node growth."""
import math

from gausscub.gauss_hermite import gauss_hermite_rule, gaussian_moment

# An n-point rule integrates every polynomial of degree < 2n exactly.
rule = gauss_hermite_rule(5)
print("n=5 nodes  ", rule.nodes.round(6))
print("n=5 weights", rule.weights.round(6))
for k in (0, 2, 4, 8, 9, 10):
    approx = math.fsum(w * x**k for w, x in zip(rule.weights.tolist(), rule.nodes.tolist()))
    print(f"E[X^{k}]  rule {approx:14.6f}   exact {gaussian_moment(k):8.0f}")

# The outermost node creeps towards sqrt(4n); the tails beyond it are never sampled.
for n in (4, 16, 64, 256):
    print(f"n={n:4d}  largest node {gauss_hermite_rule(n).nodes[-1]:7.3f}  sqrt(4n)={math.sqrt(4 * n):7.3f}")
