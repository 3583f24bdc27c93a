# Copyright 2026 The rmt-lab Authors.
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

"""Python bindings for the rmt-lab random matrix toolkit."""

import json

from . import _rmtlab
from ._rmtlab import (
    RmtError,
    __version__,
    berry_esseen_bound,
    canonical_config,
    circular_potential,
    classify,
    config_hash,
    curve_svg,
    distance_to_sparse,
    eigenvalues,
    empirical_potential,
    empirical_smallball,
    entry_moments,
    esd2d,
    lcd,
    lcd_bound,
    log_moment_v,
    paley_zygmund_mu,
    ring_integral,
    sample_matrix,
    scatter_svg,
    singular_values,
    smallest_singular_value,
    spectral_norm,
)


def run_experiment(config_text, workers=0):
    """Run an experiment from config text; returns (summary dict, trials CSV text)."""
    summary, trials = _rmtlab.run_experiment_json(config_text, workers)
    return json.loads(summary), trials

