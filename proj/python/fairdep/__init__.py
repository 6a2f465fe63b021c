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

"""Dependence measures for discrete variables that stay fair across cardinalities."""

from ._fairdep import (
    CandidateError,
    ConvergenceError,
    CountTable,
    DomainError,
    EssResult,
    ExperimentCurve,
    InvalidInput,
    NoRootError,
    ProbTable,
    RandomStream,
    ScoredCandidate,
    ZeroDofError,
    __version__,
    approx_ess,
    compare_discretizations,
    conditional_entropy,
    constraint_lhs,
    constraint_rhs,
    dof,
    empirical_joint,
    entropy,
    fig2_distribution,
    independence_std,
    is_notable,
    merge_states,
    mi_bias_corrected,
    mi_plugin,
    nb_equal_information_z,
    nb_true_mi,
    normalized_mi,
    p_value,
    r_score,
    rank,
    report,
    run_discretization_experiment,
    run_feature_selection_experiment,
    sample_table,
    select_best_feature,
    si_threshold,
    solve_ess,
    standardized_information,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
