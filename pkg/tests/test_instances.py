"""Instance generation: determinism, distribution, spec validation."""

import numpy as np
import pytest

from lsalloc import InstanceSpec, choices_matrix, gen_instance


class TestSpec:
    def test_m_from_density(self):
        spec = InstanceSpec(n=1000, k=3, c=0.9)
        assert spec.m == 900
        assert spec.density == 0.9

    def test_density_from_m(self):
        spec = InstanceSpec(n=200, k=3, m=150)
        assert spec.density == 0.75

    def test_exactly_one_of_m_or_c(self):
        with pytest.raises(ValueError):
            InstanceSpec(n=10, k=3)
        with pytest.raises(ValueError):
            InstanceSpec(n=10, k=3, m=5, c=0.5)

    def test_bounds(self):
        with pytest.raises(ValueError):
            InstanceSpec(n=0, k=3, m=1)
        with pytest.raises(ValueError):
            InstanceSpec(n=10, k=1, m=1)
        with pytest.raises(ValueError):
            InstanceSpec(n=2, k=3, m=1, distinct=True)


class TestGeneration:
    def test_empty_stream(self):
        assert list(gen_instance(InstanceSpec(n=10, k=3, m=0, seed=4))) == []

    def test_determinism(self):
        spec = lambda: InstanceSpec(n=10, k=3, m=50, seed=123)  # noqa: E731
        a = [item.choices for item in gen_instance(spec())]
        b = [item.choices for item in gen_instance(spec())]
        assert a == b

    def test_different_seeds_differ(self):
        a = choices_matrix(InstanceSpec(n=1000, k=3, m=100, seed=0))
        b = choices_matrix(InstanceSpec(n=1000, k=3, m=100, seed=1))
        assert not np.array_equal(a, b)

    def test_stream_matches_matrix(self):
        spec = InstanceSpec(n=50, k=4, m=200_000, seed=9)  # spans multiple chunks
        mat = choices_matrix(spec)
        for i, item in enumerate(gen_instance(spec)):
            if i % 37 != 0:
                continue
            assert item.id == i
            assert item.choices == tuple(mat[i])

    def test_ids_sequential(self):
        ids = [item.id for item in gen_instance(InstanceSpec(n=10, k=2, m=20, seed=0))]
        assert ids == list(range(20))

    def test_choice_frequency_uniform(self):
        # chi-square over all generated choices vs the uniform expectation,
        # asserted within 3 sigma of the statistic's own distribution
        spec = InstanceSpec(n=100_000, k=3, c=0.9, seed=42)
        mat = choices_matrix(spec)
        counts = np.bincount(mat.ravel(), minlength=spec.n)
        expected = mat.size / spec.n
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        dof = spec.n - 1
        assert abs(chi2 - dof) < 3 * np.sqrt(2 * dof)

    def test_distinct_flag(self):
        spec = InstanceSpec(n=10, k=3, m=500, seed=7, distinct=True)
        mat = choices_matrix(spec)
        assert all(len(set(row)) == 3 for row in mat.tolist())
        # and still deterministic
        assert np.array_equal(mat, choices_matrix(InstanceSpec(n=10, k=3, m=500, seed=7, distinct=True)))

    def test_with_replacement_produces_duplicates(self):
        mat = choices_matrix(InstanceSpec(n=4, k=3, m=200, seed=1))
        assert any(len(set(row)) < 3 for row in mat.tolist())
