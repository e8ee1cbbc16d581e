"""Chart conditioning on approach to the lower Dirac string.

Walks (w, z) = (eps * u, -1) for a fixed unit direction u in each algebra
and prints the chart-I normalization prefactor next to the largest
projector entry: the chart blows up like 1/eps, the projector does not.
"""

import argparse

import numpy as np

from hjc import algebra as al
from hjc import berry
from hjc.algebra import AlgebraTag
from hjc.berry import BasePoint, ChartTag


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--decades", type=int, default=6)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'K':>2} {'eps':>10} {'cond(I)':>12} {'max|P|':>10} {'unitary ok':>10}")
    for tag in AlgebraTag:
        u = al.random_element(tag, rng)
        u = u / u.norm()
        for k in range(1, args.decades + 1):
            eps = 10.0**-k
            p = BasePoint(u * eps, -1.0)
            cond = berry.conditioning(p, ChartTag.I)
            proj = berry.projector(p)
            uni = berry.chart_unitary(p, ChartTag.I)
            ok = berry.residual(uni.dagger() @ uni, berry.Matrix2K.identity(tag)) < 1e-9
            print(f"{tag.name:>2} {eps:10.1e} {cond:12.4e} {proj.max_abs():10.6f} {str(ok):>10}")
        print()


if __name__ == "__main__":
    main()
