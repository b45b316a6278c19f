# %% [markdown]
# Logical error rate of [[252,12,14]] under BP-OSD-0, next to its reference curve.
#
# Fewer errors per point than a production run (the default target is 150),
# so expect wide intervals.

# %%
from ubcycle.catalog import find_entry, reference_curves
from ubcycle.decoder import SimConfig, run_simulation

entry = find_entry(252)
ref = {pt.p: pt.ler for pt in reference_curves() if pt.curve == "[[252,12,14]] UB"}
cfg = SimConfig(entry.spec, [0.05, 0.06, 0.07, 0.08], target_logical_errors=40, seed=7)
points = run_simulation(cfg)

print(f"{'p':>5} {'trials':>7} {'ler':>8} {'95% interval':>20} {'reference':>10}")
for pt in points:
    pub = ref.get(round(pt.p, 3))
    print(f"{pt.p:5.2f} {pt.trials:7d} {pt.ler:8.4f}   [{pt.ci_low:.4f}, {pt.ci_high:.4f}] {pub if pub else '':>10}")

# %% [markdown]
# Same seed, same numbers: every trial has its own random stream, so the
# result does not depend on how many processes share the work.

# %%
again = run_simulation(SimConfig(entry.spec, [0.08], target_logical_errors=40, seed=7), threads=2)
assert again[0] == points[-1]
print("reproduced:", again[0])
