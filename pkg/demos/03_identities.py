# %% [markdown]
# # q-series identities behind the action
# The relations hold only because a handful of rational identities in brackets hold.
# Each is checked exactly at random admissible points, and a corrupted copy of each
# left side is used to make sure the checker can actually fail.

# %%
from uqainf import identities as ids

plan = [("eq22", 1, 10), ("eq24", 3, 10), ("eq28", 3, 10), ("eq31", 0, 10)]
report = ids.run_campaign(plan, seed=7)
for entry in report.entries:
    print(f"{entry.identity:6} size={entry.size} trials={entry.trials} {entry.status}")

# %% [markdown]
# Shift one bracket argument by one and the identity should break within a few samples.

# %%
outcomes = ids.mutation_control("eq22", 1, samples=20)
live = [m for m in outcomes if not m.vacuous]
print(f"{sum(m.caught for m in live)} of {len(live)} mutants caught,",
      "worst needed", max(m.samples_used for m in live), "samples")

# %% [markdown]
# A campaign with deliberately corrupted right sides reports failures with a
# counterexample instead of raising.

# %%
bad = ids.run_campaign([("eq33", 0, 3)], corrupt=True)
print(bad.status, bad.entries[0].counterexample)
