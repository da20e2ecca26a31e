"""Every holomorphic eta quotient of weight 1/2 on Gamma_0(72).

The search walks the integer points of the simplex {Ahat X >= 0, sum X = 1}.
Each hit is matched against the fourteen known primitive quotients; the rest
are their rescalings f(nu z).
"""

import time
from collections import Counter

from etaforge import ZAGIER_LIST, verify_zagier

t = time.perf_counter()
report = verify_zagier(72)
print(report.summary(), f"({time.perf_counter() - t:.2f} s)")

per_member = Counter(c.zagier_member[0] for c in report.classified)
for i, X in enumerate(ZAGIER_LIST, start=1):
    nus = sorted(c.zagier_member[1] for c in report.classified if c.zagier_member[0] == i)
    print(f"#{i:2d} {str(X):34s} level {X.level:2d}  rescalings nu = {nus}")
assert sum(per_member.values()) == report.total
