#
# Copyright 2026 The Microslice Authors
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
#
"""Microdata anonymization by slicing."""

from microslice._core import (
    CapExceededError,
    ConfigError,
    Error,
    IoError,
    Table,
    UnsatisfiableError,
    analyze_membership,
    correlation_matrix,
    load_csv,
    mondrian_partition,
    parse_csv,
    run_cli,
    sliced_accuracy,
    special_partition,
    tuple_partition,
    worst_probability,
)

__all__ = [
    "CapExceededError",
    "ConfigError",
    "Error",
    "IoError",
    "Table",
    "UnsatisfiableError",
    "analyze_membership",
    "correlation_matrix",
    "load_csv",
    "mondrian_partition",
    "parse_csv",
    "run_cli",
    "sliced_accuracy",
    "special_partition",
    "tuple_partition",
    "worst_probability",
]
