# Copyright 2026 The ARA Authors
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
"""Privacy-preserving report encoding, central storage and batch analysis."""

from ara._core import (
    CentralStore,
    ClientReport,
    EncodingParams,
    analyze_batch,
    assign_cohort,
    bloom_encode,
    constant_table,
    encode_report,
    estimate_true_proportion,
    generate_corpus,
    quantize_key,
    rank_correlation,
    read_csv,
    run_experiment,
    verify_constant_rule,
    weighted_sum,
    write_csv,
)

__all__ = [
    "CentralStore",
    "ClientReport",
    "EncodingParams",
    "analyze_batch",
    "assign_cohort",
    "bloom_encode",
    "constant_table",
    "encode_report",
    "estimate_true_proportion",
    "generate_corpus",
    "quantize_key",
    "rank_correlation",
    "read_csv",
    "run_experiment",
    "verify_constant_rule",
    "weighted_sum",
    "write_csv",
]
