"""
Sensitivity to the skew parameters
==================================

Central differences in lambda and gamma, and an automated check of how the
price surface bends.
"""

from gsn_option.analysis import BENCHMARK, GridSpec, monotonicity_report, numerical_sensitivity, table1_spec

# %%
# Finite differences
# ------------------
#
# With lambda = 0 the price ignores gamma; otherwise it rises with gamma.

for skew in [(0.0, 0.5), (1.0, 0.0), (-1.0, 0.0)]:
    dg = numerical_sensitivity(BENCHMARK, skew, "gamma")
    dl = numerical_sensitivity(BENCHMARK, skew, "lambda")
    print(f"lambda, gamma = {skew}: dC/dgamma = {dg:+.6f}, dC/dlambda = {dl:+.6f}")

# %%
# Shape report
# ------------
#
# ``monotonicity_report`` checks, row by row and column by column, that the
# price peaks at lambda = 0, falls with |lambda|, sits below Black-Scholes
# off lambda = 0 and increases in gamma.

report = monotonicity_report(table1_spec())
print("all checks hold:", report["all_hold"])
for gam, verdict in report["by_gamma"].items():
    print(f"  gamma = {gam:+g}: {verdict}")

# %%
# A finer grid behaves the same way.

fine = GridSpec(BENCHMARK, [x / 4 for x in range(-12, 13)], [-1.5, 0.0, 1.5])
print("fine grid:", monotonicity_report(fine)["all_hold"])
