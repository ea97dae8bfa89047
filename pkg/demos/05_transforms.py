"""Carrying unit-cube point sets to the real line: affine versus cotangent map."""
from gausscub.digital_net import higher_order_sobol, load_direction_numbers, net_points
from gausscub.integrands import get_integrand
from gausscub.transforms import affine_radius, affine_rule, mobius_quadrature, mobius_rule

# A piecewise polynomial with a kink: smooth enough to reward good points,
# rough enough that no method gets it for free.
g = get_integrand("spline(2)", 1)

for m in (6, 10, 14):
    pts = net_points(higher_order_sobol(m, 1, 2, max_depth=64))
    b = affine_radius(2**m, 2, "net")
    affine = abs(affine_rule(pts, b).apply(g) - g.exact_value)
    cot = abs(mobius_quadrature(pts, g) - g.exact_value)
    print(f"N=2^{m:2d}  affine (b={b:.2f}) {affine:.2e}   cotangent {cot:.2e}")

# The net contains t=0, which the cotangent map sends to -infinity; it gets
# weight zero rather than producing a NaN.
rule = mobius_rule(net_points(load_direction_numbers(m=3, d=1)))
print("weights", rule.weights.round(4))
