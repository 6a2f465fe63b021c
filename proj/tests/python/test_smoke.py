# Copyright (c) 2026, The fairdep Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import fairdep


def test_report_fields():
    r = fairdep.report(fairdep.CountTable([[2, 1], [1, 2]]))
    assert r["n"] == 6
    assert r["dof"] == 1
    assert r["mi_plugin"] == pytest.approx(0.0566330, abs=1e-6)
    assert r["si"] == pytest.approx(math.sqrt(12 * r["mi_plugin"]) - 1.0)


def test_table_round_trip_and_errors():
    t = fairdep.CountTable([[1, 2, 3], [4, 5, 6]])
    assert t.total == 21
    assert t.transposed().to_list() == [[1, 4], [2, 5], [3, 6]]
    assert fairdep.CountTable.from_samples([(0, 0), (1, 1), (0, 0)], 2, 2) == fairdep.CountTable([[2, 0], [0, 1]])
    with pytest.raises(fairdep.InvalidInput):
        fairdep.CountTable([[0, 0], [0, 0]])
    with pytest.raises(fairdep.ZeroDofError):
        fairdep.standardized_information(fairdep.CountTable([[5, 0], [0, 5]]))
    with pytest.raises(ValueError):
        fairdep.dof(t, "bogus")


def test_p_value_log_path():
    strong = fairdep.CountTable([[200 if i == j else 17 for j in range(4)] for i in range(4)])
    naive, log_p = fairdep.p_value(strong, "nominal")
    assert naive == 0.0
    assert math.isfinite(log_p) and log_p < -100


def test_ess():
    t = fairdep.CountTable([[200, 100], [100, 200]])
    r = fairdep.solve_ess(t)
    assert abs(fairdep.constraint_lhs(t, r.n_prime_exact) - r.rhs) <= 1e-10
    assert r.n_prime_approx == pytest.approx(8.656, abs=1e-3)
    with pytest.raises(fairdep.NoRootError):
        fairdep.solve_ess(fairdep.CountTable([[50, 50], [50, 50]]))


def test_ranking():
    ranked = fairdep.rank(
        [("flat", fairdep.CountTable([[2, 2], [2, 2]])), ("diag", fairdep.CountTable([[5, 0], [0, 5]]))],
        measure="si",
        mode="nominal",
    )
    assert [c.id for c in ranked] == ["diag", "flat"]
    assert fairdep.si_threshold(0.05) == pytest.approx(1.1631, abs=1e-4)


def test_experiments_are_deterministic():
    a = fairdep.run_feature_selection_experiment(n_values=[32, 64], replicates=3, seed=7)
    b = fairdep.run_feature_selection_experiment(n_values=[32, 64], replicates=3, seed=7)
    assert a.to_text() == b.to_text()
    assert set(a.fractions) == {"mi_bc", "si", "ni", "p_value"}
    curves = fairdep.run_discretization_experiment([0.0, 0.1], n_values=[25], replicates=4, measures=["si"])
    assert all(0.0 <= f <= 1.0 for f in curves[0].fractions["si"])
    assert 0.085 <= fairdep.nb_equal_information_z() <= 0.092


def test_sampling():
    stream = fairdep.RandomStream(11)
    t = fairdep.sample_table(fairdep.fig2_distribution(0.05), 1000, stream)
    assert t.total == 1000
    merged = fairdep.merge_states(t, [[0, 1], [2, 3]], [[0, 1], [2, 3]])
    assert merged.total == 1000 and merged.rows == 2
