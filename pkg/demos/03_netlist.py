"""
Optical layout
==============

Each step is a small unit cell of bulk optics: half-wave plates rotate the
polarization, polarizing beam splitters route H and V to different paths,
and an EOM on the H arm shifts the frequency. Detectors sit on every
reachable output path; each one sees a single frequency.
"""

import math

import hyperwalk as hw

cfg = hw.WalkConfig(4, coin=hw.CoinSchedule.uniform(math.radians(45)), variant=hw.StepVariant.two_coin())
net = hw.build_netlist(4, cfg)

# %%
# Element inventory: two HWPs, two PBSs and one EOM per step.
print(dict(net.counts()))

# %%
# Which frequency does each detector see?
for x, f in hw.detector_frequency_table(4).items():
    print(f"detector at x={x:+d}  ->  f0 + {f} x shift")

# %%
# The netlist as Graphviz; pipe into `dot -Tsvg` to draw it.
print(hw.emit(net, "dot"))
