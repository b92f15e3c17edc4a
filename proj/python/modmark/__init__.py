# Copyright 2026 The modmark Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Finite-dimensional modular theory and Markov map checks."""

import json

from ._core import (
    Algebra,
    Channel,
    ModmarkError,
    State,
    ac_adjoint,
    channel_from_kraus,
    check_markov,
    compose,
    delta_matrix,
    gns_axiom_residuals,
    l2_matrix,
    load_instance,
    modular_flow,
    modular_twirl,
    petz_adjoint,
    random_state,
    save_instance,
    sp_ucp,
    trace_dual,
)
from . import _core

MARKOV_KINDS = (
    "identity",
    "schur",
    "pinch",
    "block_expectation",
    "state_to_scalar",
    "automorphism",
    "twirl",
    "convex",
)


def generate(kind, dims, seed=0, params=None):
    """Returns (channel, flagged, note) for a generator spec."""
    return _core._generate(kind, list(dims), seed, json.dumps(params) if params else "")


def verify(channel, t_samples=8, z_samples=16, s_range=(-1.0, 1.0), tol=1e-9):
    """Full verification report as a dict."""
    return json.loads(_core._verify(channel, t_samples, z_samples, tuple(s_range), tol))


def run_suite(trials, dims=((2,), (3,), (4,)), seed=0, kinds=MARKOV_KINDS, tol=1e-9):
    dims = [list(d) for d in dims]
    return json.loads(_core._run_suite(trials, dims, seed, list(kinds), tol))
