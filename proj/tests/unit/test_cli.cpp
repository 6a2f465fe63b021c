/*
 * Copyright (c) 2026, The fairdep Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fairdep/commands.hpp"
#include "fairdep/error.hpp"
#include "fairdep/io.hpp"
#include "fairdep/measures.hpp"

using namespace fairdep;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("fairdep_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename F, typename O>
Run run(F f, const O& options) {
  std::ostringstream out, err;
  const int code = f(options, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("count tables accept mixed delimiters and comments") {
    std::istringstream in("# header\n2, 1\t0\n\n1;2 3\n");
    CHECK(read_count_table(in) == CountTable::from_counts({{2, 1, 0}, {1, 2, 3}}));
  }

  TEST_CASE("count table errors name the line") {
    std::istringstream ragged("1 2\n3\n");
    CHECK_THROWS_WITH_AS(read_count_table(ragged), doctest::Contains("line 2"), InvalidInput);
    std::istringstream negative("1 -2\n3 4\n");
    CHECK_THROWS_AS(read_count_table(negative), InvalidInput);
    std::istringstream text("1 x\n3 4\n");
    CHECK_THROWS_AS(read_count_table(text), InvalidInput);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_count_table(empty), InvalidInput);
  }

  TEST_CASE("datasets map labels in order of first appearance") {
    std::istringstream in("A,B,C\nx,p,1\ny,q,1\nx,p,2\n");
    const auto d = read_dataset(in);
    CHECK(d.rows() == 3);
    CHECK(d.labels[0] == std::vector<std::string>{"x", "y"});
    CHECK(d.pair_table(0, 1) == CountTable::from_counts({{2, 0}, {0, 1}}));
    CHECK(d.column("C") == 2);
    CHECK_THROWS_AS((void)d.column("D"), InvalidInput);
  }

  TEST_CASE("dataset validation") {
    std::istringstream ragged("A,B\nx,p\ny\n");
    CHECK_THROWS_WITH_AS(read_dataset(ragged), doctest::Contains("line 3"), InvalidInput);
    std::istringstream dup("A,A\nx,y\n");
    CHECK_THROWS_AS(read_dataset(dup), InvalidInput);
    std::istringstream header_only("A,B\n");
    CHECK_THROWS_AS(read_dataset(header_only), InvalidInput);
    std::istringstream constant("A,B\nx,p\nx,q\n");
    CHECK_THROWS_AS((void)read_dataset(constant).pair_table(0, 1), DomainError);
  }

  TEST_CASE("format detection, number lists and number formatting") {
    CHECK(detect_format("# c\n1 2\n3 4\n") == InputFormat::counts);
    CHECK(detect_format("A,B\n1,2\n") == InputFormat::dataset);
    CHECK(parse_input_format("auto") == InputFormat::automatic);
    CHECK_THROWS_AS(parse_input_format("xml"), InvalidInput);
    CHECK(parse_real_list("0:0.1:0.05") == std::vector<double>{0.0, 0.05, 0.1});
    CHECK(parse_real_list("0.5, 2") == std::vector<double>{0.5, 2.0});
    CHECK(parse_real_list("0:0.125:0.005").size() == 26);
    CHECK_THROWS_AS(parse_real_list("1:0:0.1"), InvalidInput);
    CHECK_THROWS_AS(parse_real_list(""), InvalidInput);
    CHECK(parse_int_list("32,64") == std::vector<std::int64_t>{32, 64});
    CHECK_THROWS_AS(parse_int_list("3.5"), InvalidInput);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(std::stod(format_number(0.0566330122651324))) == format_number(0.0566330122651324));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("measure on a count file reports every field") {
    TempDir dir;
    MeasureOptions o;
    o.source.input = dir.write("t.txt", "2 1\n1 2\n");
    const auto r = run(cmd_measure, o);
    REQUIRE(r.code == kExitOk);
    const auto kv = key_values(r.out);
    for (const char* k : {"n", "dof", "dof_mode", "mi_plugin", "mi_bc", "indep_std", "r_score", "si", "si_fisher", "ni",
                          "p_naive", "log_p"})
      CHECK(kv.count(k) == 1);
    CHECK(std::stod(kv.at("mi_plugin")) == doctest::Approx(0.0566330).epsilon(1e-6));
    CHECK(kv.at("dof_mode") == "effective");
  }

  TEST_CASE("measure on a dataset matches the tallied table") {
    TempDir dir;
    MeasureOptions from_data;
    from_data.source.input = dir.write("d.csv", "A,B\nx,p\ny,q\nx,p\n");
    from_data.dof = "nominal";
    const auto a = run(cmd_measure, from_data);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out.find("# labels A: x=0 y=1") != std::string::npos);
    MeasureOptions from_counts;
    from_counts.source.input = dir.write("c.txt", "2 0\n0 1\n");
    from_counts.dof = "nominal";
    CHECK(key_values(a.out) == key_values(run(cmd_measure, from_counts).out));
  }

  TEST_CASE("measure reports zero dof partially") {
    TempDir dir;
    MeasureOptions o;
    o.source.input = dir.write("d.txt", "2 0\n0 1\n");
    const auto r = run(cmd_measure, o);
    CHECK(r.code == kExitOk);
    const auto kv = key_values(r.out);
    CHECK(kv.at("dof") == "0");
    CHECK(kv.at("si") == "undefined");
    CHECK(kv.at("ni") == "1");
  }

  TEST_CASE("measure errors produce no output") {
    TempDir dir;
    MeasureOptions o;
    o.source.input = dir.write("bad.csv", "A,B\nx,p\ny\n");
    auto r = run(cmd_measure, o);
    CHECK(r.code == kExitBadInput);
    CHECK(r.out.empty());
    CHECK(r.err.find("line 3") != std::string::npos);

    o.source.input = dir.write("three.csv", "A,B,C\nx,p,1\ny,q,2\n");
    o.source.pair = "A,Z";
    CHECK(run(cmd_measure, o).code == kExitBadInput);
    o.source.pair = "";
    CHECK(run(cmd_measure, o).code == kExitBadInput);
    o.source.pair = "A,C";
    CHECK(run(cmd_measure, o).code == kExitOk);

    o.source.input = dir.write("const.csv", "A,B\nx,p\nx,q\n");
    o.source.pair = "";
    r = run(cmd_measure, o);
    CHECK(r.code == kExitDegenerate);
    CHECK(r.out.empty());

    o.source.input = dir.file("missing.txt");
    CHECK(run(cmd_measure, o).code == kExitBadInput);
    o.source.input = dir.write("t.txt", "1 2\n3 4\n");
    o.dof = "approximate";
    CHECK(run(cmd_measure, o).code == kExitBadInput);
  }

  TEST_CASE("dataset to counts round trip gives identical reports") {
    TempDir dir;
    std::string csv = "Y,X\n";
    const char* ys[] = {"a", "b", "c"};
    const char* xs[] = {"u", "v"};
    for (int i = 0; i < 60; ++i) csv += std::string(ys[i % 3]) + "," + xs[(i * 7 / 5) % 2] + "\n";
    std::istringstream in(csv);
    const auto table = read_dataset(in).pair_table(0, 1);
    std::ostringstream written;
    write_count_table(written, table);

    MeasureOptions a, b;
    a.source.input = dir.write("d.csv", csv);
    b.source.input = dir.write("c.txt", written.str());
    CHECK(key_values(run(cmd_measure, a).out) == key_values(run(cmd_measure, b).out));
  }

  TEST_CASE("rank lists features with scores and notability") {
    TempDir dir;
    std::string csv = "Y,strong,weak\n";
    for (int i = 0; i < 80; ++i)
      csv += std::to_string(i % 2) + "," + std::to_string((i % 2) ^ (i % 10 == 0 || i % 10 == 5)) + "," + std::to_string(i / 2 % 2) + "\n";
    RankOptions o;
    o.input = dir.write("r.csv", csv);
    o.class_column = "Y";
    const auto r = run(cmd_rank, o);
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("rank,id,score,dof,notable\n1,strong,") != std::string::npos);
    CHECK(r.out.find(",true\n2,weak,") != std::string::npos);
    CHECK(r.out.find("2,weak,-1,1,false") != std::string::npos);

    o.measure = "p_value";
    const auto p = run(cmd_rank, o);
    REQUIRE(p.code == kExitOk);
    CHECK(p.out.find("rank,id,score,dof\n1,strong,") != std::string::npos);

    o.measure = "bic";
    CHECK(run(cmd_rank, o).code == kExitBadInput);
    o.measure = "si";
    o.class_column = "Z";
    CHECK(run(cmd_rank, o).code == kExitBadInput);
  }

  TEST_CASE("rank on a two-column file gives one line") {
    TempDir dir;
    RankOptions o;
    o.input = dir.write("r.csv", "Y,X\n0,0\n1,1\n0,1\n1,0\n0,0\n");
    o.class_column = "Y";
    const auto r = run(cmd_rank, o);
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("1,X,") != std::string::npos);
    CHECK(r.out.find("2,") == std::string::npos);
  }

  TEST_CASE("ess reports the solver result and optional curve") {
    TempDir dir;
    EssOptions o;
    o.source.input = dir.write("t.txt", "200 100\n100 200\n");
    auto r = run(cmd_ess, o);
    REQUIRE(r.code == kExitOk);
    auto kv = key_values(r.out);
    CHECK(std::stod(kv.at("n_prime_approx")) == doctest::Approx(8.656).epsilon(1e-3));
    CHECK(std::stod(kv.at("n_prime_exact")) > 0.0);
    CHECK(kv.at("used_safe_joint") == "false");
    CHECK(kv.count("iterations") == 1);

    o.curve = true;
    o.curve_grid = "0:20:5";
    r = run(cmd_ess, o);
    CHECK(r.out.find("n_prime,lhs,rhs\n0,") != std::string::npos);

    o.curve = false;
    o.prior = dir.write("q.txt", "1 1\n1 1\n");
    CHECK(key_values(run(cmd_ess, o).out) == kv);
    o.prior = dir.write("q3.txt", "1 1 1\n1 1 1\n");
    CHECK(run(cmd_ess, o).code == kExitBadInput);
  }

  TEST_CASE("ess on an independent table reports no root") {
    TempDir dir;
    EssOptions o;
    o.source.input = dir.write("t.txt", "50 50\n50 50\n");
    const auto r = run(cmd_ess, o);
    CHECK(r.code == kExitNoRoot);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("no-root:", 0) == 0);
  }

  TEST_CASE("experiment writes deterministic curves") {
    TempDir dir;
    ExperimentOptions o;
    o.name = "fig3";
    o.seed = 7;
    o.replicates = 3;
    o.n_values = "32,64";
    o.out = dir.file("a.csv");
    const auto first = run(cmd_experiment, o);
    REQUIRE(first.code == kExitOk);
    CHECK(first.out.find("wrote") != std::string::npos);
    o.out = dir.file("b.csv");
    REQUIRE(run(cmd_experiment, o).code == kExitOk);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
    CHECK(slurp(dir.file("a.csv")).find("n,mi_bc,si,ni,p_value,p_value_underflow\n32,") != std::string::npos);
  }

  TEST_CASE("experiment fig2 and ess-curve run; bad configurations fail cleanly") {
    TempDir dir;
    ExperimentOptions o;
    o.name = "fig2";
    o.replicates = 2;
    o.z_grid = "0,0.1";
    o.n_values = "25";
    o.measures = "si,ni";
    const auto r = run(cmd_experiment, o);
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("n,z,si,ni\n25,0,") != std::string::npos);

    ExperimentOptions e;
    e.name = "ess-curve";
    e.source.input = dir.write("t.txt", "200 100\n100 200\n");
    e.curve_grid = "0,10";
    const auto c = run(cmd_experiment, e);
    REQUIRE(c.code == kExitOk);
    CHECK(c.out.find("n_prime,lhs,rhs\n0,") != std::string::npos);

    ExperimentOptions bad;
    bad.name = "fig9";
    CHECK(run(cmd_experiment, bad).code == kExitBadInput);
    bad.name = "fig3";
    bad.replicates = 0;
    CHECK(run(cmd_experiment, bad).code == kExitBadInput);
    bad.replicates = 1;
    bad.z = 0.5;
    CHECK(run(cmd_experiment, bad).code == kExitBadInput);
    bad.z.reset();
    bad.measures = "si,aic";
    CHECK(run(cmd_experiment, bad).code == kExitBadInput);
    o.z = 0.1;
    CHECK(run(cmd_experiment, o).code == kExitBadInput);
  }
}
