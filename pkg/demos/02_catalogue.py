# %% [markdown]
# The catalogued UB codes: rebuild each one, bound its distance and hunt for a
# logical operator of the reported weight.

# %%
import time

from ubcycle.bounds import b_bounds
from ubcycle.catalog import CATALOGUE, atlas
from ubcycle.distance import low_weight_search
from ubcycle.logical import logical_basis

for row in atlas():
    flag = "" if not row.mismatches else "  <- " + "; ".join(row.mismatches)
    print(f"{row.entry.label:>15}  a={row.entry.a:<16} l={row.entry.ell}  w={row.w}  R={row.rate}{flag}")

# %% [markdown]
# Bounds are cheap even for the largest row. The information-set search then
# tries to close the gap from above; a short budget is enough for most rows.

# %%
BUDGET = 10.0
for e in CATALOGUE:
    code = e.build()
    t0 = time.perf_counter()
    rep = b_bounds(code, logical_basis(code, validate=False))
    res = low_weight_search(code, budget_secs=BUDGET, target=e.d_reported)
    print(
        f"{e.label:>15}  U3={rep.X.U[3]:>3}  B3={rep.X.B3:7.2f}  frob={rep.frobenius_bound:>4}"
        f"  d_upper={rep.d_upper:>3}  found={res.d_found:>3}  ({time.perf_counter() - t0:.1f}s)"
    )
