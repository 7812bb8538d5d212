"""Nested-commutator gauge potential at the midpoint of the sweep."""
from ccqo import build_mixing_hamiltonian, model_2893
from ccqo.encoding import OperatorPool, action, adiabatic_hamiltonian, build_cd_hamiltonian, gauge_potential
from ccqo.pauli import PauliSum

hp = model_2893().hamiltonian()
hm = build_mixing_hamiltonian(3)
h = adiabatic_hamiltonian(hm, hp, 0.5)
dh = hp - hm

print("S(0) =", action(h, dh, PauliSum.zero(3)))
for order in (1, 2, 3):
    gp = gauge_potential(h, dh, order)
    print(f"order {order}: S = {gp.action:.6f}  coefficients {gp.coefficients}")

# two-local pieces of the first commutator are pool operators
pool = OperatorPool()
gp = gauge_potential(h, dh, 1)
print(sorted({t.axes for t in gp.basis[0].terms if pool.matches(t.axes)}))
print(build_cd_hamiltonian(model_2893()))
