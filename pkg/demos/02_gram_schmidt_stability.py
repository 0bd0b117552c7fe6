"""
Classical vs modified Gram-Schmidt on an ill-conditioned key set
================================================================

Columns of the 12 x 12 Hilbert matrix are nearly parallel.  The textbook
(classical) recurrence loses orthogonality almost completely; subtracting
each direction as soon as it is found (modified) loses far less, and a
second projection pass repairs both.
"""
# %%
import numpy as np

import eqcmm

n = 12
H = np.array([[1.0 / (i + j + 1) for j in range(n)] for i in range(n)])
H /= np.linalg.norm(H, axis=0)
print(f"condition number of the key matrix: {np.linalg.cond(H):.2e}")

# %%
for mode in eqcmm.GSMode:
    for twice in (False, True):
        f = eqcmm.gram_schmidt(H, mode=mode, reorthogonalize=twice)
        label = f"{mode.value}{' + reorth' if twice else ''}"
        print(f"{label:>22}: rank {f.rank:2d}, dropped {list(f.dropped)}, "
              f"orthonormality residual {eqcmm.orthonormality_residual(f.Z):.2e}")

# %%
# A looser tolerance treats the nearly dependent tail as dependent.
for tol in (1e-6, 1e-10, 1e-14):
    f = eqcmm.gram_schmidt(H, tol=tol)
    print(f"tol {tol:.0e}: rank {f.rank}, dropped {list(f.dropped)}")
