#!/usr/bin/env python3
"""Trace how slowly the scaled median radius approaches 2/pi.

The ratio rho*(t) / (t ln t) converges to 2/pi, but the finite-t excess
behaves like (ln ln t + C) / ln t, so the drift is logarithmic.  This
script extends the sweep beyond the default decades to make the trend
(and its slowness) visible.

Usage:  python scripts/asymptotic_trend.py [--decades 6] [--quad-tol 1e-9]
"""

from __future__ import annotations

import argparse
import math

from meanlab.gallery import optimal_asymptotic
from meanlab.quadrature import QuadConfig


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--decades", type=int, default=6,
                        help="largest t is 10**decades (default 6)")
    parser.add_argument("--quad-tol", type=float, default=1e-9)
    args = parser.parse_args()

    ts = [10.0 ** k for k in range(2, args.decades + 1)]
    cfg = QuadConfig(abs_tol=args.quad_tol)
    limit = 2.0 / math.pi
    print(f"{'t':>12s} {'rho*':>16s} {'ratio':>12s} {'excess over 2/pi':>18s}")
    for entry in optimal_asymptotic(ts, cfg):
        if entry.error:
            print(f"{entry.t:12.4g} bracket failure: {entry.error}")
            continue
        excess = (entry.ratio - limit) / limit
        print(f"{entry.t:12.4g} {entry.rho_star:16.4f} "
              f"{entry.ratio:12.7f} {excess:17.2%}")
    print(f"{'limit':>12s} {'':16s} {limit:12.7f}")


if __name__ == "__main__":
    main()
