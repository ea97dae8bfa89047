"""How badly can any rule on Gauss-Hermite nodes do? A fooling-function bound."""
from gausscub.fooling import fit_loglog_slope, fooling_function, fooling_integral, fooling_norm, suboptimality_ratio

F = fooling_function(8, 1)
print("knots", F.knots.round(3))
print(f"integral {fooling_integral(F):.4e}  norm {fooling_norm(F).total:.4e}")

# The ratio is a lower bound on the worst-case error of every rule using
# the n nodes, and it decays only like n^(-alpha/2).
ns = [2**k for k in range(3, 11)]
for alpha in (1, 2):
    ratios = [suboptimality_ratio(n, alpha) for n in ns]
    print(f"alpha={alpha}: slope {fit_loglog_slope(ns, ratios):.3f}")
