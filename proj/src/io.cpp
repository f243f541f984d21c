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

#include "polyalg/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace polyalg {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    bool any = false; // current row has content
    auto end_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '"' && field.empty()) {
            const std::size_t qline = line, qcol = col;
            ++i;
            ++col;
            for (;;) {
                if (i >= text.size())
                    throw DataError("line " + std::to_string(qline) + ", column " + std::to_string(qcol) +
                                    ": unterminated quoted field");
                if (text[i] == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        col += 2;
                        continue;
                    }
                    ++i;
                    ++col;
                    break;
                }
                if (text[i] == '\n') {
                    ++line;
                    col = 0;
                }
                field += text[i++];
                ++col;
            }
            any = true;
            if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
                throw DataError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                                ": text after closing quote");
            continue;
        }
        if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            ++i;
            end_row();
            ++line;
            col = 0;
        } else if (c == '\n') {
            end_row();
            ++line;
            col = 0;
        } else {
            field += c;
            any = true;
        }
        ++i;
        ++col;
    }
    if (any || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos && (s.empty() || (s.front() != ' ' && s.back() != ' ')))
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Relation relation_from_csv(std::string_view text, const Schema& schema, RingKind ring) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("line 1: missing header row");
    const auto& header = rows.front();
    std::vector<std::size_t> column_of(schema.size(), SIZE_MAX);
    std::optional<std::size_t> weight_col;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = header[c];
        if (name == "#weight") {
            if (weight_col) throw DataError("line 1: #weight appears twice");
            weight_col = c;
            continue;
        }
        auto idx = schema.find(name);
        if (!idx) throw DataError("line 1, column " + std::to_string(c + 1) + ": header '" + name + "' is not in the schema");
        if (column_of[*idx] != SIZE_MAX) throw DataError("line 1: header '" + name + "' appears twice");
        column_of[*idx] = c;
    }
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (column_of[i] == SIZE_MAX) throw DataError("line 1: header lacks attribute " + schema[i].name);

    std::vector<BasisRow> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        const std::string where = "row " + std::to_string(r + 1);
        if (fields.size() == 1 && fields[0].empty() && header.size() != 1) continue; // blank line
        if (fields.size() != header.size())
            throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        BasisRow row{{}, Scalar::one(ring)};
        for (std::size_t i = 0; i < schema.size(); ++i) {
            try {
                row.cells.push_back(Cell::key_of(parse_scalar_value(*schema[i].type, fields[column_of[i]])));
            } catch (const std::invalid_argument& e) {
                throw DataError(where + ", column " + std::to_string(column_of[i] + 1) + " (" + schema[i].name + "): " + e.what());
            }
        }
        if (weight_col) {
            try {
                row.coef = Scalar::parse(ring, fields[*weight_col]);
            } catch (const std::invalid_argument& e) {
                throw DataError(where + ", column " + std::to_string(*weight_col + 1) + " (#weight): " + e.what());
            }
        }
        out.push_back(std::move(row));
    }
    return Relation::from_rows(schema, ring, out);
}

Relation load_csv(const std::string& path, const Schema& schema, RingKind ring) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return relation_from_csv(ss.str(), schema, ring);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Output

OutputFormat parse_format(std::string_view s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (table, csv, json)");
}

namespace {

json cell_json(const Cell& c) {
    if (c.kind == Cell::Kind::Wild) return json{{"wildcard", true}};
    const Value& v = c.value;
    if (v.is_int()) return v.as_int();
    if (v.is_bool()) return v.as_bool();
    if (v.is_str()) return v.as_str();
    return v.to_string();
}

json scalar_json(const Scalar& s) {
    switch (s.ring()) {
    case RingKind::GF2: return s.as_bool() ? 1 : 0;
    case RingKind::Real: return s.as_real();
    case RingKind::Integer: {
        const BigInt& v = s.as_integer();
        if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(v);
        return s.to_string();
    }
    }
    return s.to_string();
}

// Display width in code points.
std::size_t width_of(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string format_ms(double ms) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(3) << ms;
    return o.str();
}

} // namespace

std::string render_relation(const Relation& r, OutputFormat f, const RunStats* stats) {
    const auto rows = r.rows();
    const bool baseline = std::any_of(rows.begin(), rows.end(), [](const BasisRow& row) {
        return std::any_of(row.cells.begin(), row.cells.end(), [](const Cell& c) { return c.kind == Cell::Kind::Wild; });
    });
    std::ostringstream out;
    switch (f) {
    case OutputFormat::Json: {
        json j;
        json schema = json::array();
        for (auto& a : r.schema.attributes()) schema.push_back({{"name", a.name}, {"type", a.type->to_string()}});
        j["schema"] = schema;
        j["ring"] = std::string(ring_name(r.ring));
        j["has_baseline"] = baseline;
        json jr = json::array();
        for (auto& row : rows) {
            json values = json::array();
            for (auto& c : row.cells) values.push_back(cell_json(c));
            jr.push_back({{"values", values}, {"coef", scalar_json(row.coef)}});
        }
        j["rows"] = jr;
        if (stats) {
            j["metrics"] = {{"trie_edges", stats->metrics.trie_edges},
                            {"ring_muls", stats->metrics.ring_muls},
                            {"lookups", stats->metrics.lookups},
                            {"wall_ms", stats->wall_ms}};
        }
        out << j.dump(2) << "\n";
        return out.str();
    }
    case OutputFormat::Csv: {
        for (auto& a : r.schema.attributes()) out << csv_field(a.name) << ",";
        out << "#weight\n";
        for (auto& row : rows) {
            for (auto& c : row.cells) out << (c.kind == Cell::Kind::Wild ? "*" : csv_field(c.value.to_string())) << ",";
            out << row.coef.to_string() << "\n";
        }
        break;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> grid;
        std::vector<std::string> head;
        for (auto& a : r.schema.attributes()) head.push_back(a.name);
        head.push_back("#");
        grid.push_back(head);
        for (auto& row : rows) {
            std::vector<std::string> line;
            for (auto& c : row.cells) line.push_back(c.to_string());
            line.push_back(row.coef.to_string());
            grid.push_back(std::move(line));
        }
        std::vector<std::size_t> width(head.size());
        for (auto& line : grid)
            for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], width_of(line[i]));
        for (auto& line : grid) {
            std::string s;
            for (std::size_t i = 0; i < line.size(); ++i) {
                s += line[i];
                if (i + 1 < line.size()) s += std::string(width[i] - width_of(line[i]) + 2, ' ');
            }
            out << s << "\n";
        }
        out << "(" << rows.size() << (rows.size() == 1 ? " row" : " rows") << (baseline ? ", with wildcard baseline" : "")
            << ")\n";
        break;
    }
    }
    if (stats) {
        out << "-- metrics\n"
            << "trie_edges  " << stats->metrics.trie_edges << "\n"
            << "ring_muls   " << stats->metrics.ring_muls << "\n"
            << "lookups     " << stats->metrics.lookups << "\n"
            << "wall_ms     " << format_ms(stats->wall_ms) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Catalog

Catalog Catalog::load(const std::string& path) {
    Catalog c;
    std::ifstream in(path);
    if (!in) return c;
    json j;
    try {
        in >> j;
        c.ring = parse_ring(j.value("ring", "z"));
        const json rels = j.value("relations", json::object());
        for (auto& [name, e] : rels.items())
            c.relations[name] = Entry{e.at("path").get<std::string>(), e.at("schema").get<std::string>()};
    } catch (const std::exception& e) {
        throw DataError("catalog " + path + " is malformed: " + e.what());
    }
    return c;
}

void Catalog::save(const std::string& path) const {
    json j;
    j["ring"] = std::string(ring_name(ring));
    json rels = json::object();
    for (auto& [name, e] : relations) rels[name] = {{"path", e.path}, {"schema", e.schema}};
    j["relations"] = rels;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write catalog " + path);
    out << j.dump(2) << "\n";
}

Relation Catalog::get(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw QueryError("unknown relation " + name);
    return load_csv(it->second.path, Schema::parse(it->second.schema), ring);
}

} // namespace polyalg
