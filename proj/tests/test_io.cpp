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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "polyalg/io.hpp"
#include "support/gen.hpp"

using namespace polyalg;
using json = nlohmann::json;

namespace {

const RingKind Z = RingKind::Integer;

std::string error_of(std::string_view csv, const char* schema) {
    try {
        relation_from_csv(csv, Schema::parse(schema), Z);
    } catch (const DataError& e) {
        return e.what();
    }
    return "";
}

TEST(Csv, QuotingAndLineEnds) {
    const auto rows = parse_csv("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",,x\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
    EXPECT_EQ(rows[1], (std::vector<std::string>{"multi\nline", "", "x"}));
    EXPECT_EQ(parse_csv("\"\"").at(0), std::vector<std::string>{""});
    EXPECT_TRUE(parse_csv("").empty());
    EXPECT_THROW(parse_csv("\"open"), DataError);
    EXPECT_THROW(parse_csv("\"a\"b"), DataError);
}

TEST(Csv, FieldQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("q\""), "\"q\"\"\"");
    EXPECT_EQ(csv_field(" pad"), "\" pad\"");
}

TEST(Csv, HeaderOrderWeightsAndDuplicates) {
    const Relation r = relation_from_csv("B,#weight,A\n1,2,a\n1,3,a\n2,-1,b\n", Schema::parse("A:str,B:int"), Z);
    const auto rows = r.rows();
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].cells[0], Cell::key_of(Value::string("a")));
    EXPECT_EQ(rows[0].coef.to_string(), "5");
    EXPECT_EQ(rows[1].coef.to_string(), "-1");
    const Relation gone = relation_from_csv("A,#weight\nx,1\nx,-1\n", Schema::parse("A:str"), Z);
    EXPECT_TRUE(gone.rows().empty());
}

TEST(Csv, GF2WeightsCancel) {
    const Relation r = relation_from_csv("A\nx\nx\ny\n", Schema::parse("A:str"), RingKind::GF2);
    ASSERT_EQ(r.rows().size(), 1u);
    EXPECT_EQ(r.rows()[0].cells[0], Cell::key_of(Value::string("y")));
}

TEST(Csv, ErrorsPointAtTheCell) {
    EXPECT_EQ(error_of("A,C\n", "A:str,B:int"), "line 1, column 2: header 'C' is not in the schema");
    EXPECT_EQ(error_of("A\n", "A:str,B:int"), "line 1: header lacks attribute B");
    EXPECT_EQ(error_of("A,B\na,1\nb\n", "A:str,B:int"), "row 3: expected 2 fields, got 1");
    const std::string bad = error_of("A,B\na,1\nb,two\n", "A:str,B:int");
    EXPECT_EQ(bad.rfind("row 3, column 2 (B): ", 0), 0u) << bad;
    const std::string w = error_of("A,#weight\na,x\n", "A:str");
    EXPECT_EQ(w.rfind("row 2, column 2 (#weight): ", 0), 0u) << w;
    EXPECT_NE(error_of("", "A:str"), "");
    EXPECT_NE(error_of("A,A\n", "A:str"), "");
}

TEST(Csv, LoadPrefixesThePath) {
    EXPECT_THROW(load_csv("/nonexistent/file.csv", Schema::parse("A:str"), Z), DataError);
    const auto path = (std::filesystem::temp_directory_path() / "polyalg_io_bad.csv").string();
    std::ofstream(path) << "A,B\nx,y\n";
    try {
        load_csv(path, Schema::parse("A:str,B:int"), Z);
        FAIL() << "expected a data error";
    } catch (const DataError& e) {
        EXPECT_EQ(std::string(e.what()).rfind(path + ": row 2, column 2 (B)", 0), 0u) << e.what();
    }
    std::remove(path.c_str());
}

TEST(Render, CsvRoundTrips) {
    polyalg::testing::Gen g(31);
    for (RingKind ring : {RingKind::Integer, RingKind::GF2, RingKind::Real}) {
        for (int i = 0; i < 100; ++i) {
            const Schema s = Schema::parse(g.coin() ? "A:str,B:int,C:bool" : "K:int");
            const Relation r = polyalg::testing::relation(g, s, ring);
            const Relation back = relation_from_csv(render_relation(r, OutputFormat::Csv), s, ring);
            EXPECT_TRUE(same_contents(r, back)) << render_relation(r, OutputFormat::Csv);
        }
    }
    const Schema s = Schema::parse("S:str");
    const Relation odd = Relation::from_tuples(
        s, Z, {{Value::string("a,b")}, {Value::string("q\"uote")}, {Value::string(" lead")}, {Value::string("two\nlines")}});
    EXPECT_TRUE(same_contents(odd, relation_from_csv(render_relation(odd, OutputFormat::Csv), s, Z)));
}

TEST(Render, CsvHeader) {
    const Relation r = relation_from_csv("A\nx\n", Schema::parse("A:str"), Z);
    EXPECT_EQ(render_relation(r, OutputFormat::Csv), "A,#weight\nx,1\n");
}

TEST(Render, JsonShape) {
    const Relation r = relation_from_csv("A,B,#weight\nx,1,2\ny,-3,99999999999999999999\n",
                                         Schema::parse("A:str,B:int"), Z);
    const json j = json::parse(render_relation(r, OutputFormat::Json));
    EXPECT_EQ(j["schema"], json::parse(R"([{"name":"A","type":"str"},{"name":"B","type":"int"}])"));
    EXPECT_EQ(j["ring"], "z");
    EXPECT_EQ(j["has_baseline"], false);
    ASSERT_EQ(j["rows"].size(), 2u);
    EXPECT_EQ(j["rows"][0]["values"], json::parse(R"(["x",1])"));
    EXPECT_EQ(j["rows"][0]["coef"], 2);
    EXPECT_EQ(j["rows"][1]["values"][1], -3);
    EXPECT_EQ(j["rows"][1]["coef"], "99999999999999999999");
    EXPECT_FALSE(j.contains("metrics"));

    RunStats st;
    st.metrics.trie_edges = 4;
    const json m = json::parse(render_relation(r, OutputFormat::Json, &st));
    EXPECT_EQ(m["metrics"]["trie_edges"], 4);

    const Relation b = relation_from_csv("P\ntrue\n", Schema::parse("P:bool"), RingKind::GF2);
    const json jb = json::parse(render_relation(b, OutputFormat::Json));
    EXPECT_EQ(jb["rows"][0]["values"][0], true);
    EXPECT_EQ(jb["rows"][0]["coef"], 1);
}

TEST(Render, WildcardRows) {
    const Relation a = relation_from_csv("A,B\na,1\n", Schema::parse("A:str,B:int"), Z);
    const Relation b = relation_from_csv("B,C\n4,r\n", Schema::parse("B:int,C:str"), Z);
    const Relation o = outer_join(OuterKind::Full, a, b);
    ASSERT_TRUE(o.has_baseline());
    const std::string table = render_relation(o, OutputFormat::Table);
    EXPECT_NE(table.find("with wildcard baseline"), std::string::npos) << table;
    EXPECT_NE(table.find('*'), std::string::npos);
    const json j = json::parse(render_relation(o, OutputFormat::Json));
    EXPECT_EQ(j["has_baseline"], true);
    bool saw_wild = false;
    for (auto& row : j["rows"])
        for (auto& v : row["values"]) saw_wild |= v.is_object() && v.value("wildcard", false);
    EXPECT_TRUE(saw_wild);
    // Wildcard rows sort after keyed rows.
    const auto rows = o.rows();
    EXPECT_EQ(rows.back().cells, (std::vector<Cell>{Cell::wild(), Cell::wild(), Cell::wild()}));
}

TEST(Render, TableLayout) {
    const Relation r = relation_from_csv("A,B\nx,1\nlonger,22\n", Schema::parse("A:str,B:int"), Z);
    EXPECT_EQ(render_relation(r, OutputFormat::Table), "A       B   #\n"
                                                       "longer  22  1\n"
                                                       "x       1   1\n"
                                                       "(2 rows)\n");
    const Relation e = Relation::empty(Schema::parse("A:str"), Z);
    const std::string t = render_relation(e, OutputFormat::Table);
    EXPECT_NE(t.find("(0 rows)"), std::string::npos) << t;
    EXPECT_EQ(render_relation(r, OutputFormat::Table), render_relation(r, OutputFormat::Table));
}

TEST(Render, FormatNames) {
    EXPECT_EQ(parse_format("table"), OutputFormat::Table);
    EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
    EXPECT_EQ(parse_format("json"), OutputFormat::Json);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(CatalogFile, SaveLoad) {
    const auto dir = std::filesystem::temp_directory_path() / "polyalg_catalog_test";
    std::filesystem::create_directories(dir);
    const auto cat = (dir / "cat.json").string();
    const auto csv = (dir / "r.csv").string();
    std::ofstream(csv) << "A\nx\nx\n";
    std::filesystem::remove(cat);
    EXPECT_TRUE(Catalog::load(cat).relations.empty());
    Catalog c;
    c.ring = RingKind::GF2;
    c.relations["r"] = {csv, "A:str"};
    c.save(cat);
    const Catalog back = Catalog::load(cat);
    EXPECT_EQ(back.ring, RingKind::GF2);
    ASSERT_EQ(back.relations.count("r"), 1u);
    EXPECT_EQ(back.relations.at("r").schema, "A:str");
    EXPECT_TRUE(back.get("r").rows().empty()); // x + x over GF(2)
    EXPECT_THROW(back.get("missing"), QueryError);
    std::ofstream(cat) << "{not json";
    EXPECT_THROW(Catalog::load(cat), DataError);
    std::filesystem::remove_all(dir);
}

} // namespace
