"""
Reading off the rank from the first moment
==========================================

-(1/X) sum_{p <= X} (log p / p) A1(p) tends to the rank over Q(T).
A family loaded from JSON uses brute-force first moments.
"""

import json
import tempfile

from ecmoments.family_moments import load_family, nagao_rank_estimate

for cid in ("appendix_a", "main_theorem", "rank2_t2"):
    print(f"{cid:13s} X=10^4: {nagao_rank_estimate(cid, 10**4):.3f}")

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump({"name": "rank2 (uncataloged)", "a2": [0], "a4": [0, 0, -1], "a6": [0, 0, 1]}, fh)
fam = load_family(fh.name)
print(f"{fam.name} X=600 brute force: {nagao_rank_estimate(fam, 600):.3f}")
