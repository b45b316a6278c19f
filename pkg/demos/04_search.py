# %% [markdown]
# Searching for UB codes with weight-6 checks and a distance bound of at least 8.
#
# Only a(x) with constant term 1 is tried, since x^j a(x) gives the same code
# up to a cyclic relabelling of qubits.

# %%
from ubcycle.distance import SearchConfig, code_search, low_weight_search

cfg = SearchConfig(n_values=range(30, 64), ell_values=[1, 2, 3], w=6, require_divisor=True, min_k=6, min_dupper=8)
hits = []
for hit in code_search(cfg):
    hits.append(hit)
    c = hit.code
    print(f"[[{c.N},{c.k}]]  {hit.spec}  d <= {hit.bounds.d_upper}")
    if len(hits) == 12:
        break

# %% [markdown]
# The bound is only an upper bound; a quick search shows how tight it is.

# %%
for hit in hits[:6]:
    res = low_weight_search(hit.code, budget_secs=3)
    print(f"{hit.spec}  d <= {hit.bounds.d_upper}, lightest found {res.d_found}")
