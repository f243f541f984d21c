// Copyright 2026 The polyalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyalg/relation.hpp"

namespace polyalg {

/// Malformed input data. Messages carry line and column.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RFC 4180: comma separated, fields optionally in double quotes with ""
/// as an escaped quote, CRLF or LF line ends. A final empty line is ignored.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(const std::string& s);

/// The header must name exactly the schema's attributes (any order),
/// optionally plus a `#weight` column holding ring coefficients. Each row is
/// one tuple; repeated rows add up.
Relation relation_from_csv(std::string_view text, const Schema& schema, RingKind ring);
Relation load_csv(const std::string& path, const Schema& schema, RingKind ring);

enum class OutputFormat { Table, Csv, Json };
OutputFormat parse_format(std::string_view s);

struct RunStats {
    Metrics metrics;
    double wall_ms = 0;
};

/// Rows sorted by key path; wildcards print as `*` (JSON: {"wildcard":true}).
/// CSV output reloads with relation_from_csv when there are no wildcards.
std::string render_relation(const Relation& r, OutputFormat f, const RunStats* stats = nullptr);

/// Relations known to the CLI, persisted as a JSON manifest.
struct Catalog {
    struct Entry {
        std::string path;
        std::string schema;
    };
    RingKind ring = RingKind::Integer;
    std::map<std::string, Entry> relations;

    /// A missing file yields an empty catalog.
    static Catalog load(const std::string& path);
    void save(const std::string& path) const;
    Relation get(const std::string& name) const;
};

} // namespace polyalg
