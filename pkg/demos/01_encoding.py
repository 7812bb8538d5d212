"""Factoring 2893 as a three-spin ground-state problem."""
import itertools

import numpy as np

from ccqo import build_objective, model_2893
from ccqo.encoding import INSTANCE_2893

# --- reduced objective over (x6, y1, c5) ---------------------------------------

obj = build_objective(INSTANCE_2893)
for bits in itertools.product((0, 1), repeat=3):
    print(bits, obj.evaluate(bits))

# --- the same table read off the Ising diagonal --------------------------------

model = model_2893()
print("h =", model.h)
print("J =\n", model.J)
print("three-body:", model.higher, "offset:", model.offset)

table = model.energies()
k = model.ground_state()
print("energies:", table, "ground state |%s>" % format(k, "03b"))

# x6 = 0 and y1 = 1 put q = 1011b = 11, p = 100000111b = 263
q, p = 0b1011, 0b100000111
print(q, "*", p, "=", q * p)
assert q * p == 2893 and table[k] == 0
