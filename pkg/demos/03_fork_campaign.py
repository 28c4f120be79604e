"""
Random forks and the property campaign.

A fork is a complete, non-acyclic quiver with a vertex r (the point of
return) whose in- and out-neighbourhoods are acyclic and whose arrows
j -> i between them outweigh the two arrows through r. Mutating anywhere
but the current point of return keeps the quiver a fork, with the mutated
vertex becoming the new point of return.
"""

from __future__ import annotations

import random
import sys

from cvectors.fork import (
    certify_point_of_return,
    find_point_of_return,
    last_green_vertex,
    random_fork,
    random_fork_preserving_sequence,
)
from cvectors.quiver import sign_vector, walk
from cvectors.verify import CampaignConfig, random_walk_campaign

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2024

b = random_fork(4, 7, seed)
cert = find_point_of_return(b)
print(f"fork with point of return {cert.point_of_return}")
print(f"  in-neighbours {sorted(cert.inbound)}, out-neighbours {sorted(cert.outbound)}")
for row in b.b:
    print("  " + " ".join(f"{x:3d}" for x in row))

w = random_fork_preserving_sequence(b, 6, random.Random(seed))
print(f"\nfork-preserving walk w = {list(w)}")
for s in walk(b, w)[1:]:
    c = certify_point_of_return(s.b, s.history[-1])
    print(f"  after {list(s.history)}: signs {sign_vector(s)}, last green vertex {last_green_vertex(s, c)}")

config = CampaignConfig(n=(3, 4, 5), max_weight=7, walk_length=10, trials=200, rng_seed=seed)
report = random_walk_campaign(config)
print(f"\ncampaign over {config.trials} forks (seed {seed}):")
for check in report.checks:
    print(f"  {check.name:16} {'pass' if check.passed else 'FAIL'}  {check.detail}")
if report.counterexample:
    print(f"counterexample: {report.counterexample}")
