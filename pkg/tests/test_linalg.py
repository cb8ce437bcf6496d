import math

import numpy as np
import pytest
from hypothesis import given, seed, settings as hsettings
from hypothesis import strategies as st

from subspace.linalg import (
    HermitianMatrix,
    OrthogonalProjection,
    anticommutator_residual,
    eigen_decompose,
    eigenvalue_clusters,
    generator,
    make_partition,
    maximal_angle,
    operator_norm,
    random_hermitian,
    random_unitary,
    select_interval_indices,
    select_perturbed_indices,
    spectral_projection,
)
from subspace.utils.errors import ConfigurationError, DimensionError, HermitianError

SOLVERS = ["jacobi", "lapack"]


def line(phi: float) -> OrthogonalProjection:
    u = np.array([math.cos(phi), math.sin(phi)])
    return OrthogonalProjection(np.outer(u, u), 1)


class TestHermitianMatrix:
    def test_symmetrized(self):
        m = HermitianMatrix([[1, 2 + 1e-14j], [2, 3]])
        assert np.array_equal(m.entries, m.entries.conj().T)
        assert m.dim == 2

    def test_rejects_asymmetric(self):
        with pytest.raises(HermitianError):
            HermitianMatrix([[0, 1], [2, 0]])

    def test_rejects_complex_diagonal(self):
        with pytest.raises(HermitianError):
            HermitianMatrix([[1j, 0], [0, 1]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            HermitianMatrix(np.zeros((2, 3)))

    def test_rejects_empty(self):
        with pytest.raises(DimensionError):
            HermitianMatrix(np.zeros((0, 0)))

    def test_rejects_nan(self):
        with pytest.raises(HermitianError):
            HermitianMatrix([[np.nan, 0], [0, 1]])

    def test_read_only(self):
        m = HermitianMatrix.identity(2)
        with pytest.raises(ValueError):
            m.entries[0, 0] = 5

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            HermitianMatrix.identity(2) + HermitianMatrix.identity(3)


@pytest.mark.parametrize("solver", SOLVERS)
class TestEigenDecompose:
    def test_identity(self, solver):
        ed = eigen_decompose(HermitianMatrix.identity(3), solver)
        assert np.allclose(ed.eigenvalues, [1, 1, 1])

    def test_diagonal(self, solver):
        ed = eigen_decompose(HermitianMatrix.diagonal([2, -1, 5]), solver)
        assert np.allclose(ed.eigenvalues, [-1, 2, 5])
        perm = np.abs(ed.eigenvectors)
        assert np.allclose(perm, np.eye(3)[:, [1, 0, 2]])

    def test_swap(self, solver):
        ed = eigen_decompose(HermitianMatrix([[0, 1], [1, 0]]), solver)
        assert np.allclose(ed.eigenvalues, [-1, 1], atol=1e-14)

    def test_zero(self, solver):
        ed = eigen_decompose(HermitianMatrix.zeros(4), solver)
        assert np.all(ed.eigenvalues == 0)
        assert ed.norm == 0

    def test_random_invariants(self, solver):
        rng = generator(3)
        for dim in (1, 2, 5, 17):
            m = random_hermitian(rng, dim)
            ed = eigen_decompose(m, solver)
            scale = max(ed.norm, 1.0)
            assert np.all(np.diff(ed.eigenvalues) >= 0)
            assert ed.residual() <= 1e-10 * scale
            assert ed.unitarity_defect() <= 1e-10


def test_unknown_solver():
    with pytest.raises(ValueError):
        eigen_decompose(HermitianMatrix.identity(2), "qr")


def test_jacobi_matches_lapack():
    rng = generator(11)
    for dim in (3, 8, 20):
        m = random_hermitian(rng, dim)
        a = eigen_decompose(m, "jacobi").eigenvalues
        b = eigen_decompose(m, "lapack").eigenvalues
        assert np.allclose(a, b, atol=1e-10 * max(1.0, np.abs(b).max()))


@seed(5)
@hsettings(max_examples=40, deadline=None)
@given(
    dim=st.integers(min_value=1, max_value=8),
    scale=st.floats(min_value=1e-3, max_value=1e3),
    state=st.integers(min_value=0, max_value=2 ** 32 - 1),
)
def test_jacobi_invariants_hypothesis(dim, scale, state):
    m = random_hermitian(generator(state), dim).scaled(scale)
    ed = eigen_decompose(m, "jacobi")
    assert ed.residual() <= 1e-10 * max(ed.norm, 1e-300) + 1e-300
    assert ed.unitarity_defect() <= 1e-10


class TestOperatorNorm:
    def test_zero(self):
        assert operator_norm(HermitianMatrix.zeros(3)) == 0

    def test_rank_one(self):
        phi = np.array([1, 1j, -1]) / math.sqrt(3)
        v = HermitianMatrix(-3 * np.outer(phi, phi.conj()))
        assert operator_norm(v) == pytest.approx(3, abs=1e-12)

    def test_diagonal(self):
        assert operator_norm(HermitianMatrix.diagonal([-4, 1, 3])) == pytest.approx(4)


class TestSpectralProjection:
    def test_single(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([1, 2, 3]))
        p = spectral_projection(ed, [0])
        assert np.allclose(p.matrix, np.diag([1, 0, 0]))
        assert p.rank == 1

    def test_full(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([1, 2, 3]))
        assert np.allclose(spectral_projection(ed, [0, 1, 2]).matrix, np.eye(3))

    def test_empty(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([1, 2]))
        p = spectral_projection(ed, [])
        assert p.rank == 0 and np.all(p.matrix == 0)

    def test_swap_lower(self):
        ed = eigen_decompose(HermitianMatrix([[0, 1], [1, 0]]))
        p = spectral_projection(ed, [0])
        assert np.allclose(p.matrix, 0.5 * np.array([[1, -1], [-1, 1]]))

    def test_out_of_range(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([1, 2]))
        with pytest.raises(DimensionError):
            spectral_projection(ed, [2])

    def test_not_idempotent(self):
        with pytest.raises(HermitianError):
            OrthogonalProjection(np.diag([0.5, 1.0]), 1)


class TestMaximalAngle:
    def test_equal(self):
        p = line(0.4)
        assert maximal_angle(p, p) == 0

    def test_orthogonal(self):
        p = OrthogonalProjection(np.diag([1.0, 0.0]), 1)
        assert maximal_angle(p, p.complement()) == pytest.approx(math.pi / 2)

    def test_rotated_line(self):
        assert maximal_angle(line(0.0), line(0.3)) == pytest.approx(0.3, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            maximal_angle(line(0.0), OrthogonalProjection(np.eye(3), 3))

    def test_symmetry_and_unitary_invariance(self):
        rng = generator(21)
        for _ in range(20):
            dim = int(rng.integers(2, 9))
            ea = eigen_decompose(random_hermitian(rng, dim))
            eb = eigen_decompose(random_hermitian(rng, dim))
            k = int(rng.integers(1, dim))
            p = spectral_projection(ea, range(k))
            q = spectral_projection(eb, range(k))
            theta = maximal_angle(p, q)
            assert theta == maximal_angle(q, p)
            assert 0 <= theta <= math.pi / 2
            u = random_unitary(rng, dim)
            pu = OrthogonalProjection(u @ p.matrix @ u.conj().T, k)
            qu = OrthogonalProjection(u @ q.matrix @ u.conj().T, k)
            assert maximal_angle(pu, qu) == pytest.approx(theta, abs=1e-9)

    def test_norm_bound_and_equal_ranks(self):
        rng = generator(13)
        for _ in range(200):
            dim = int(rng.integers(2, 9))
            a = random_hermitian(rng, dim)
            b = a + random_hermitian(rng, dim).scaled(float(rng.uniform(0, 0.3)))
            p = spectral_projection(eigen_decompose(a, "lapack"), range(int(rng.integers(0, dim + 1))))
            q = spectral_projection(eigen_decompose(b, "lapack"), range(int(rng.integers(0, dim + 1))))
            s = operator_norm(HermitianMatrix(p.matrix - q.matrix), "lapack")
            assert s <= 1 + 1e-12
            if p.rank != q.rank:
                assert s >= 1 - 1e-9


class TestPartition:
    def test_clusters(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([0, 1, 1 + 1e-12, 3]))
        assert eigenvalue_clusters(ed) == [[0], [1, 2], [3]]

    def test_make_partition(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([-2, 0, 1, 2]))
        part = make_partition(ed, [0])
        assert part.sigma == (0,) and part.complement == (1, 2, 3)
        assert part.d == pytest.approx(2)

    def test_rejects_split_cluster(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([0, 1, 1, 3]))
        with pytest.raises(ConfigurationError):
            make_partition(ed, [0, 1])

    def test_rejects_empty(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([0, 1]))
        with pytest.raises(ConfigurationError):
            make_partition(ed, [])
        with pytest.raises(ConfigurationError):
            make_partition(ed, [0, 1])


class TestSelection:
    def test_unperturbed(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([0, 1, 2]))
        assert select_perturbed_indices(ed, [0.0], 0.5) == (0,)

    def test_two_by_two(self):
        h = HermitianMatrix([[0, 0.2], [0.2, 1]])
        ed = eigen_decompose(h)
        idx = select_perturbed_indices(ed, [0.0], 0.2)
        assert idx == (0,)
        assert ed.eigenvalues[0] == pytest.approx((1 - math.sqrt(1.16)) / 2, abs=1e-14)

    def test_radius_must_be_positive(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([0, 1]))
        with pytest.raises(ValueError):
            select_perturbed_indices(ed, [0.0], 0.0)

    def test_interval(self):
        ed = eigen_decompose(HermitianMatrix.diagonal([-1, 0, 0.5, 2]))
        assert select_interval_indices(ed, -0.1, 0.6) == (1, 2)

    def test_weyl_enclosure(self):
        rng = generator(8)
        for _ in range(1000):
            dim = int(rng.integers(2, 41))
            a = random_hermitian(rng, dim)
            v = random_hermitian(rng, dim).scaled(float(rng.uniform(0, 0.5)))
            la = eigen_decompose(a, "lapack").eigenvalues
            lh = eigen_decompose(a + v, "lapack").eigenvalues
            norm_v = operator_norm(v, "lapack")
            dist = np.abs(np.subtract.outer(lh, la)).min(axis=1)
            assert np.all(dist <= norm_v * (1 + 1e-12) + 1e-12)


def test_anticommutator_residual():
    p = OrthogonalProjection(np.diag([1.0, 0.0]), 1)
    off = HermitianMatrix([[0, 0.3 - 0.1j], [0.3 + 0.1j, 0]])
    diag = HermitianMatrix.diagonal([1.0, -2.0])
    assert anticommutator_residual(off, p) <= 1e-15
    assert anticommutator_residual(diag, p) == pytest.approx(4.0)
