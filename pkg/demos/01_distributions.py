"""
Position and frequency distributions after 20 steps
===================================================

A photon starts horizontally polarized at x = 0 and carrier frequency f0.
Every step rotates its polarization, moves H one path to the right and V
one path to the left, and raises the frequency of the H arm by one EOM
quantum. We look at where the photon ends up, in path and in frequency.
"""

import math

import numpy as np

import hyperwalk as hw

steps = 20
thetas_deg = [15, 30, 45, 60, 75]

# %%
# Run one walk per coin angle and keep only the final state.
finals = {}
for th in thetas_deg:
    cfg = hw.WalkConfig(steps, delta=0.0, coin=hw.CoinSchedule.uniform(math.radians(th)))
    finals[th] = hw.evolve(cfg)[-1]

# %%
# Every other position is empty: after an even number of steps the photon
# can only be on even paths.
for th, psi in finals.items():
    xs, ps = hw.position_distribution(psi, (-steps, steps)).dense()
    odd = ps[(xs + steps) % 2 == 1]
    print(f"theta={th:>2} deg  max P(odd x) = {odd.max():.1e}  spread <x^2> = {np.sum(xs**2 * ps):7.2f}")

# %%
# The frequency distribution is the position distribution relabelled:
# with one coin per step, a photon on path x always carries f = (x + t) / 2.
psi = finals[45]
tag = hw.tagging_map(psi)
print("position -> frequency:", tag.mapping)
px = hw.position_distribution(psi)
pf = hw.frequency_distribution(psi)
print("max |P(f) - P(2f - t)| =", max(abs(pf[f] - px[2 * f - steps]) for f in range(steps + 1)))

# %%
# Plot both marginals if matplotlib is around.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.5))
    for th, psi in finals.items():
        xs, ps = hw.position_distribution(psi, (-steps, steps)).dense()
        ax1.plot(xs, ps, marker=".", label=f"{th} deg")
        fs, qs = hw.frequency_distribution(psi, (0, steps)).dense()
        ax2.plot(fs, qs, marker=".", label=f"{th} deg")
    ax1.set_xlabel("position x")
    ax2.set_xlabel("frequency index f")
    ax1.set_ylabel("probability")
    ax1.legend()
    fig.tight_layout()
    fig.savefig("distributions.png", dpi=120)
    print("saved distributions.png")
