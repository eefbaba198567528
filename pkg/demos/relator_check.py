"""
Relator insertion
=================

Insert sphere braid relators at random positions and check the invariant
does not move.
"""

import random

from spherical_vassiliev.cli import relator_trial
from spherical_vassiliev.invariants import PipelineConfig
from spherical_vassiliev.ncalg.tables import default_store

rng = random.Random(0)
store = default_store()

for n in (3, 4, 5):
    config = PipelineConfig(n, 2, "bs2")
    ok = sum(relator_trial(rng, config, store) for _ in range(20))
    print(f"n={n}: {ok}/20 unchanged")
