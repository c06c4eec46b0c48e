# Copyright 2026 The Lastround Authors
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

"""Repeated zero-sum matrix games against an informed column player."""

from lastround._lastround import (
    TRAJECTORY_CSV_HEADER,
    ConvergenceError,
    DimensionError,
    derive_seed,
    fit_rate,
    generate_game,
    load_matrix_csv,
    preset_names,
    project_simplex,
    run,
    run_preset,
    solve_minimax,
)

__all__ = [
    "TRAJECTORY_CSV_HEADER",
    "ConvergenceError",
    "DimensionError",
    "derive_seed",
    "fit_rate",
    "generate_game",
    "load_matrix_csv",
    "preset_names",
    "project_simplex",
    "run",
    "run_preset",
    "solve_minimax",
]
