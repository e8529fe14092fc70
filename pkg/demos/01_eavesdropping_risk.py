"""
=========================================
Eavesdropping risk in a random network
=========================================

Deploy ISAC transmitters as a Poisson point process, then estimate how
often an eavesdropper decodes a transmission. The single-link case is
checked against its closed form.
"""

# %%
# A bundled scenario
# ------------------
#
# ``default_fig3`` is a 200 m square with transmitters drawn at 5e-4 per
# square meter. Its values are illustrative, not taken from any published
# figure.

from privisac.channel import FadingModel
from privisac.metrics import EavesdropChannel, estimate_pse
from privisac.scenario import Placement, Point2D, Region, Scenario, load_scenario

scn = load_scenario("default_fig3")
print(f"{len(scn.transmitters)} transmitters, {len(scn.eavesdroppers)} eavesdroppers")

# %%
# PSE is the chance that at least one eavesdropper clears the SINR threshold.

for channel in EavesdropChannel:
    est = estimate_pse(scn, Placement(), channel, trials=20_000, seed=1)
    print(f"{channel.value:12s} PSE = {est.mean:.4f} +- {est.stderr:.4f}")

# %%
# Per-eavesdropper breakdown
# --------------------------

each = estimate_pse(scn, Placement(), EavesdropChannel.INFORMATION, 20_000, 1, aggregate="each")
for eve, est in zip(scn.eavesdroppers, each):
    print(f"eavesdropper at ({eve.x:6.1f}, {eve.y:6.1f}): {est.mean:.4f}")

# %%
# Closed form for one link
# ------------------------
#
# With Rayleigh fading and no interference the success probability is
# ``exp(-tau * noise / mean_snr)``.

import math

d, tau = 80.0, 1.0
link = Scenario(
    region=Region(-10, 90, -10, 10),
    transmitters=[Point2D(0, 0)],
    receivers=[Point2D(0, 1)],
    eavesdroppers=[Point2D(d, 0)],
    sinr_threshold=tau,
    fading=FadingModel.RAYLEIGH,
)
r = link.radio
exact = math.exp(-tau * r.noise_power * d ** r.pathloss_exponent / (r.tx_power * r.reference_gain))
mc = estimate_pse(link, Placement(), EavesdropChannel.INFORMATION, 100_000, seed=2)
print(f"closed form {exact:.4f}, Monte Carlo {mc.mean:.4f} +- {mc.stderr:.4f}")
