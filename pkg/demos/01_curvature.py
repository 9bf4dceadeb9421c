#!/usr/bin/env python3
"""Curvature of the mode-carrying metrics.

Builds each six-dimensional metric family, computes its Einstein tensor
symbolically, and shows the two structural facts the rest of the package
leans on: the Ricci scalar vanishes identically, and the entire Einstein
tensor collapses to products of the mode's momentum components.
"""
from kk6 import einstein, ricci_scalar, sym
from kk6.ansatz import (
    onshell_energy, photon_metric, proca_metric, scalar_metric,
    massive_wave_potential, null_wave_potential,
)
from kk6.expr import ZERO, num, to_text


def show_nonzero(name, metric):
    g = einstein(metric)
    print(f"\n{name}: Einstein tensor, nonzero upper-triangle entries")
    count = 0
    for a in range(6):
        for b in range(a, 6):
            if g.comps[a][b] != ZERO:
                print(f"  G[{a}][{b}] = {to_text(g.comps[a][b])}")
                count += 1
    if count == 0:
        print("  (all 21 entries vanish identically)")
    print(f"  Ricci scalar: {to_text(ricci_scalar(metric))}")


def main():
    p1, p2, p3, m0 = sym("p1"), sym("p2"), sym("p3"), sym("m0")
    p0 = onshell_energy(p1, p2, p3, m0)

    print("Scalar mode, fully symbolic momenta (energy on shell):")
    mode = scalar_metric(p=(p0, p1, p2, p3), m0=m0)
    show_nonzero("scalar", mode.metric)
    print("\nEvery entry above is a plain product of two momentum "
          "components\n(with a sign per lowered spatial index) — the metric "
          "geometrizes the\nmode's stress pattern exactly, with zero scalar "
          "curvature.")

    show_nonzero("photon (null wave, omega = 3/4)",
                 photon_metric(null_wave_potential(num("3/4"))).metric)

    show_nonzero("massive vector (k3 = 1/2, m0 = 1)",
                 proca_metric(massive_wave_potential(num("1/2"), num(1)),
                              num(1)).metric)


if __name__ == "__main__":
    main()
