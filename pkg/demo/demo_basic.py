# Licensed under the MIT License.
# divgame by divgame contributors.
# demo

# std
import sys
sys.path.insert(0, "src")

# lib
from divgame import *


eq = solve_equilibrium(ModelParams())

for key, value in eq.summary().items():
    print(f"{key:>10}: {value}")

print()
for x in (0.0, 0.1, 0.2, 0.3, eq.a0):
    print(f"b({x:.3f}) = {eq.boundary_b(x):.6f}")

print()
print(f"v0(0.2) = {eq.duopoly.value(0.2):.6f}")
print(f"v2(0.2, 0.5) = {eq.v2_eval(0.2, 0.5):.6f}")
