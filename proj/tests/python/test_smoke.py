# Copyright 2026 The relcover Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import relcover as rc


def test_identity_channel_q2_equals_dimension():
    d = 3
    rho = np.eye(d, dtype=complex) / d
    assert rc.q2_target(rho, rc.Channel.identity(d)) == pytest.approx(d, abs=1e-9)


def test_hmin_of_maximally_entangled_state():
    d = 2
    assert rc.h_min(rc.maximally_entangled(d), [d, d]) == pytest.approx(-math.log2(d), abs=1e-6)


def test_binary_orthogonal_ensemble_exact_expectation():
    states = [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]
    assert rc.cq_exact([0.5, 0.5], states, 2) == pytest.approx(0.5, abs=1e-12)


def test_relative_entropy_support_violation_is_infinite():
    sigma = np.diag([0.5, 0.5]).astype(complex)
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert math.isinf(rc.relative_entropy(sigma, rho))
    assert rc.relative_entropy(rho, sigma) == pytest.approx(1.0, abs=1e-12)


def test_cover_mc_below_bound():
    rho = rc.random_density(4, 4, 7)
    ch = rc.Channel.random(4, 2, 2, 11)
    est = rc.cover_mc(rho, ch, 2, 200, 3)
    assert est["trials"] == 200
    assert est["mean"] <= rc.cover_bound(rho, ch, 2) + 3 * est["stderr"]


def test_haar_moments_closed_form():
    alpha, beta = rc.haar_moments(4, 2)
    assert alpha == pytest.approx((8 - 4) / (4 * 15))
    assert beta == pytest.approx((16 - 2) / (4 * 15))


def test_lemma_audit_nonnegative_slack():
    for name in rc.lemma_names():
        assert rc.lemma_audit(name, 5)["slack"] >= -1e-8


def test_run_config_json():
    cfg = {
        "mode": "cover-cq",
        "seed": 1,
        "trials": 50,
        "format": "json",
        "instance": {"ensemble": {"preset": "binary_orthogonal"}},
    }
    text, violations = rc.run_config(json.dumps(cfg))
    assert violations == 0
    assert json.loads(text)["format_version"] == 1


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        rc.run_config("{not json")
    with pytest.raises(KeyError):
        rc.lemma_audit("no-such-lemma", 1)
    with pytest.raises(ValueError):
        rc.Channel([np.eye(2, dtype=complex) * 0.5])
