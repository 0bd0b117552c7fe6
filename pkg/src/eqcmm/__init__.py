"""Correlation matrix memories over complex states, with Gram-Schmidt key orthonormalization."""
from .errors import (DegenerateSetError, DomainError, EnergyError, EqcmmError, ShapeError,
                     SingularSolveError, ZeroVectorError)
from .states import (EPS_ZERO, as_state, basis, bloch_to_state, cosine, energy, inner, key_matrix,
                     norm, normalize, outer)
from .qop import DEFAULT_TOL, GSFactors, GSMode, gram_schmidt, orthonormality_residual, reconstruct
from .qcmm import (Capacity, CapacityVerdict, MemoryMatrix, RecallDiagnostics, TrainingPair,
                   capacity_check, crosstalk_matrix, crosstalk_noise, decompose_recall, make_pairs,
                   recall, train_batch, train_step)
from .eqcmm import EqcmmModel, QueryMode, fit, query, recall_raw, recall_x, recall_z
from .ensembles import EnsembleKind, EnsembleSpec, Seed, coherence, generate
from .experiments import (ExperimentReport, Method, ReportRow, SweepConfig, emit_csv, emit_plot,
                          read_csv, run_sweep)

__version__ = "0.1.0"
