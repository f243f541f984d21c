# Copyright 2026 The polyalg Authors
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

"""Generalized relations over a ring of multiplicities."""

from ._core import (
    DataError,
    ParseError,
    QueryError,
    Relation,
    RingMismatch,
    SpaceError,
    bench_triangle,
    canonical,
    cli,
    query,
)

__all__ = [
    "DataError",
    "ParseError",
    "QueryError",
    "Relation",
    "RingMismatch",
    "SpaceError",
    "bench_triangle",
    "canonical",
    "cli",
    "query",
]
