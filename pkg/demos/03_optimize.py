"""Gradient descent on a single CCQO-E layer, ideal and shot-sampled."""
import numpy as np

from ccqo import AnsatzSpec, NoiseConfig, OptimizerConfig, model_2893, optimize

model = model_2893()
spec = AnsatzSpec("ccqo-e", 1)

trace = optimize(spec, model, OptimizerConfig(seed=2))
for r in trace.records[::25]:
    print(f"it {r.iteration:3d}  lr {r.learning_rate:.0e}  E {r.energy:.4f}  P {r.success_probability:.3f}")

# with the default schedule the step size shrinks a hundredfold by iteration 60
# and most runs stall; a larger initial rate reaches the ground state
fast = optimize(spec, model, OptimizerConfig(seed=2, learning_rate_init=0.05))
print("lr0 0.005:", trace.final_energy, " lr0 0.05:", fast.final_energy)

# --- 1000 photons per probe -----------------------------------------------------

noisy = optimize(spec, model, OptimizerConfig(seed=2, learning_rate_init=0.05), NoiseConfig(shots=1000))
print("shot-sampled final energy", noisy.final_energy)
print(noisy.to_csv().splitlines()[0])
