"""Walk through the eight-dimensional symmetry algebra for each damping case.

Prints the nonzero commutators, the derived series and the Killing form
coefficient, then checks the adjoint product against the matrix exponential.
"""

import numpy as np

from timoshenko_lie.adjoint import adjoint_composed, adjoint_product
from timoshenko_lie.algebra import (CASE_KINDS, CaseParams, basis, bracket, derived_series,
                                    killing_coefficient, structure_constants)

np.set_printoptions(precision=4, suppress=True)

for kind in CASE_KINDS:
    p = CaseParams.from_case(kind)
    sc = structure_constants(p)
    print(f"== {kind} case ==")
    for i in range(1, 9):
        for j in range(i + 1, 9):
            c = bracket(basis(i), basis(j), sc)
            if np.any(c):
                terms = " ".join(f"{v:+.4g} X{n + 1}" for n, v in enumerate(c) if v)
                print(f"  [X{i}, X{j}] = {terms}")
    print("  derived series dimensions:", derived_series(sc))
    print("  Killing coefficient:", killing_coefficient(p))
    eps = np.linspace(-1, 1, 8)
    gap = np.max(np.abs(adjoint_product(eps, p) - adjoint_composed(eps, p)))
    print(f"  product of single adjoints vs expm composition: {gap:.1e}")
