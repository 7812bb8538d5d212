"""Build an ansatz unitary, compile it to MZIs and read the ports."""
import numpy as np

from ccqo import AnsatzSpec, build_unitary, decompose, model_2893, propagate, reconstruct
from ccqo.mesh import PortEncoding

model = model_2893()
rng = np.random.default_rng(1)

# --- one CCQO-E layer has four angles ------------------------------------------

spec = AnsatzSpec("ccqo-e", 1)
print(spec.parameter_names())
theta = rng.uniform(-np.pi, np.pi, 4)
u = build_unitary(spec, theta, model)

# --- 28 MZIs in 8 columns ------------------------------------------------------

program = decompose(u)
print(len(program.settings), "MZIs, depth", program.depth)
for s in program.settings[:5]:
    print(f"  col {s.column} row {s.row}  theta {s.theta:.4f}  phi {s.phi:.4f}")
print("round trip residual", np.max(np.abs(reconstruct(program) - u)))

# --- a photon in port 1 (|000>) ------------------------------------------------

enc = PortEncoding(3)
dist = propagate(program, 1)
for port, p in enumerate(dist, start=1):
    print(f"port {port} |{enc.decode(port)}>  {p:.4f}")
