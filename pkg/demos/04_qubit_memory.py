"""
A two-dimensional memory of Bloch-sphere qubits
===============================================

Qubit keys are drawn uniformly on the Bloch sphere.  Two random qubits are
almost never orthogonal, so a plain memory of two pairs shows crosstalk,
while the orthonormalized memory recalls both pairs exactly.
"""
# %%
import numpy as np

import eqcmm

theta, phi = np.pi / 3, np.pi / 4
psi = eqcmm.bloch_to_state(theta, phi)
print("qubit:", np.round(psi, 4), " energy", eqcmm.energy(psi))

# %%
keys = eqcmm.generate(eqcmm.EnsembleSpec("bloch", 2, 2), seed=7)
memorized = eqcmm.generate(eqcmm.EnsembleSpec("bloch", 2, 2), seed=7, stream="memorized")
pairs = eqcmm.make_pairs(keys, memorized)
print(f"|<x1|x2>| = {eqcmm.coherence(keys):.4f}")

# %%
plain = eqcmm.train_batch(pairs)
model = eqcmm.fit(pairs)
for j, (x, y) in enumerate(pairs):
    e_plain = np.linalg.norm(eqcmm.recall(plain, x) - y)
    e_orth = np.linalg.norm(eqcmm.recall_x(model, x) - y)
    print(f"pair {j}: plain error {e_plain:.3e}, orthonormalized error {e_orth:.3e}")

# %%
# A third qubit key cannot be independent of the first two in C^2.
keys3 = eqcmm.generate(eqcmm.EnsembleSpec("bloch", 2, 3), seed=7)
f = eqcmm.gram_schmidt(keys3)
print(eqcmm.capacity_check(2, 3, f.rank), "dropped", list(f.dropped))
