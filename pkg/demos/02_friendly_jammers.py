"""
=================================
Placing friendly jammers
=================================

Compare a fixed ring of jammers with ant colony placement, and look at
the cost to legitimate receivers.
"""

# %%
# Fixed ring
# ----------
#
# Jammers sit evenly on a ring around the private user and steer their
# main lobe at the nearest eavesdropper.

from privisac.jammer_opt import (AcoParams, CandidateGrid, aco_optimize, evaluate_placement,
                                 fixed_placement, ring_positions)
from privisac.metrics import EavesdropChannel, estimate_pse, measure_legit_impact
from privisac.scenario import load_scenario

scn = load_scenario("default_fig3")
for k in (0, 2, 4, 8, 12):
    plc = fixed_placement(scn, k)
    pse = estimate_pse(scn, plc, EavesdropChannel.INFORMATION, 20_000, seed=1)
    imp = measure_legit_impact(scn, plc, 20_000, seed=1)
    print(f"k={k:2d}  PSE {pse.mean:.4f}  receiver SINR loss {imp.mean_legit_sinr_loss_db:5.2f} dB")

# %%
# Ant colony search
# -----------------
#
# The search scores candidates with ``J = pse + mu * max(0, impact - budget)``.
# Ring points are added to the grid so the fixed layout stays reachable.

params = AcoParams.from_mapping(scn.section("aco"))
grid = CandidateGrid.from_region(scn.region, 25.0).with_points(ring_positions(scn, 4))
res = aco_optimize(scn, 4, grid, params, trials=1000, seed=1)
fixed = evaluate_placement(scn, fixed_placement(scn, 4), params, 1000, seed=1)
print(f"fixed: J {fixed.j:.4f} impact {fixed.impact_db:.2f} dB")
print(f"ACO:   J {res.objective.j:.4f} impact {res.objective.impact_db:.2f} dB")
print("best J per iteration:", " ".join(f"{j:.3f}" for j in res.trace[::5]))

# %%
# Where the ants put the jammers

for jam in res.placement:
    print(f"  ({jam.position.x:6.1f}, {jam.position.y:6.1f}) steering {jam.steering:+.2f} rad")
