from .hermitian import (
    EigenDecomposition,
    HermitianMatrix,
    OrthogonalProjection,
    SpectralPartition,
)
from .jacobi import eigen_decompose
from .projections import (
    anticommutator_residual,
    eigenvalue_clusters,
    make_partition,
    maximal_angle,
    operator_norm,
    select_interval_indices,
    select_perturbed_indices,
    spectral_projection,
)
from .random import generator, random_hermitian, random_unitary
