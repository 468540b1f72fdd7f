"""Reduce random algebra elements to their optimal-system representatives."""

import numpy as np

from timoshenko_lie.algebra import CASE_KINDS, CaseParams
from timoshenko_lie.optimal_system import classify, verify_conjugacy

rng = np.random.default_rng(0)
np.set_printoptions(precision=3, suppress=True)

for kind in CASE_KINDS:
    p = CaseParams.from_case(kind)
    for _ in range(3):
        a = np.round(rng.uniform(-2, 2, 8), 2)
        a[rng.random(8) < 0.5] = 0.0
        r = classify(a, p)
        rep = verify_conjugacy(a, r, p)
        print(f"{kind:8s} {a} -> leaf {r.leaf}  canonical {r.canonical}  check {rep.max_error:.1e}")
