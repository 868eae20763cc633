"""
Entanglement between polarization, path and frequency
=====================================================

Negativity of the partial transpose measures entanglement between two of
the three degrees of freedom once the third has been traced out. We compare
the one-coin step (coin, PBS, EOM) with the two-coin unit cell
(coin, PBS, coin, PBS + EOM).
"""

import math

import numpy as np

import hyperwalk as hw

Pol, Pos, Freq = hw.Subsystem.Pol, hw.Subsystem.Pos, hw.Subsystem.Freq
steps = 20


def run(variant, theta_deg, second_deg=None):
    second = None if second_deg is None else hw.CoinSchedule.uniform(math.radians(second_deg))
    v = hw.StepVariant.two_coin(second) if variant == "two_coin" else hw.StepVariant(variant)
    cfg = hw.WalkConfig(steps, coin=hw.CoinSchedule.uniform(math.radians(theta_deg)), variant=v)
    return hw.evolve(cfg)


# %%
# With one coin per step, path and frequency are locked together, so once
# the path is traced out polarization and frequency are left unentangled.
single = run("single_coin", 30)
pf = [r.raw for r in hw.negativity_curve(single, Pol, Freq)]
print("single coin, Pol-Freq:", np.round(pf, 4))

# %%
# The two-coin cell breaks that lock. Pol-Freq negativity appears and
# oscillates around a plateau.
two = run("two_coin", 30)
pf2 = [r.raw for r in hw.negativity_curve(two, Pol, Freq)]
print("two coin,    Pol-Freq:", np.round(pf2, 4))

# %%
# Frequency-path negativity keeps growing, because both spaces grow with t.
# This is the slow one: the last matrix is 441 x 441.
fpos = hw.negativity_curve(run("two_coin", 45), Freq, Pos)
raw = np.array([r.raw for r in fpos])
print("two coin,    Freq-Pos:", np.round(raw, 3))
print("normalised at t=20:", round(fpos[-1].normalized, 4), "dims", fpos[-1].dims)
print("least-squares slope over t=2..20:", np.polyfit(np.arange(2, steps + 1), raw[2:], 1)[0])

# %%
# Schmidt ranks of the final state, one per subsystem.
print("Schmidt rank vector (pol, pos, freq):", hw.schmidt_rank_vector(single[-1]))
