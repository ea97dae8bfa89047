"""Sparse grids against cotangent-mapped higher-order nets on a spline integrand."""
import tempfile

from gausscub import bench
from gausscub.integrands import get_integrand

f = get_integrand("spline(2)", 2)
fits = {}
records = []
for method in ("sg-gh", "mob-net", "mob-lattice"):
    sweep = bench.converge_sweep(method, f, 2, 2)
    records += sweep
    fits[method] = bench.fit_rate(sweep)
    print(f"{method:12s} slope {fits[method].slope:6.3f}  final error {sweep[-1].abs_error:.2e} at N={sweep[-1].N}")

out = tempfile.mkdtemp()
for path in bench.emit_outputs(records, fits, out):
    print("wrote", path)
