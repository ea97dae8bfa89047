"""Regenerate src/gausscub/data/spline_oracle.txt.

Tabulates int_{-1}^{1} (1 - |x|)**alpha rho(x) dx for alpha = 1..ALPHA_MAX with
mpmath at 50 digits. Run from the repository root:

    python scripts/gen_spline_oracle.py
"""

import sys
from pathlib import Path

import mpmath as mp

ALPHA_MAX = 8
DPS = 50
OUT = Path(__file__).resolve().parents[1] / "src" / "gausscub" / "data" / "spline_oracle.txt"


def spline_mass(alpha):
    rho = lambda x: mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)
    return 2 * mp.quad(lambda x: (1 - x) ** alpha * rho(x), [0, 1])


def main():
    mp.mp.dps = DPS
    lines = [
        "# generator: python scripts/gen_spline_oracle.py",
        f"# precision: mpmath {mp.__version__}, mp.dps = {DPS}, tanh-sinh quadrature on [0, 1]",
        "# columns: alpha, int_{-1}^{1} (1 - |x|)^alpha rho(x) dx",
    ]
    for alpha in range(1, ALPHA_MAX + 1):
        lines.append(f"{alpha} {mp.nstr(spline_mass(alpha), 30)}")
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
