/*
 * Copyright 2026 The tadj Authors
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

// Runs the tadj executable end to end.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include <doctest.h>

#include "tadj/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TADJ_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "tadj_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string p(const char* name) { return (workdir() / name).string(); }

double value_of(const std::string& summary, const std::string& key) {
  std::istringstream in(summary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
  }
  FAIL("missing key " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("gen writes the matrix format") {
  const auto r = run("gen --kind dct2 --size 4");
  CHECK(r.code == 0);
  CHECK(r.output.rfind("4 4\n", 0) == 0);
}

TEST_CASE("gen rejects a zero size and names the flag") {
  const auto r = run("gen --kind dct2 --size 0");
  CHECK(r.code == 2);
  CHECK(r.output.find("--size") != std::string::npos);
  CHECK(run("gen --kind dct5 --size 4").code == 2);
  CHECK(run("gen --kind dct2 --size 4 --bogus").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("generated dct8 passes verify, a corrupted copy fails") {
  REQUIRE(run("gen --kind dct8 --size 32 -o " + p("c8.txt")).code == 0);
  const auto ok = run("verify --matrix " + p("c8.txt") + " --kind dct8");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("result = PASS") != std::string::npos);

  auto m = tadj::read_matrix_file(p("c8.txt"));
  m(4, 9) += 1e-3;
  tadj::write_matrix_file(p("c8_bad.txt"), m);
  const auto bad = run("verify --matrix " + p("c8_bad.txt") + " --kind dct8");
  CHECK(bad.code == 1);
  CHECK(bad.output.find("FAIL orthonormal dct8") != std::string::npos);
}

TEST_CASE("verify of an empty file is a parse error") {
  tadj::write_text_file(p("empty.txt"), "");
  const auto r = run("verify --matrix " + p("empty.txt") + " --kind dct2");
  CHECK(r.code == 4);
  CHECK(r.output.find("parse") != std::string::npos);
  CHECK(run("verify --matrix " + p("missing.txt") + " --kind dct2").code == 3);
}

TEST_CASE("verify runs the identity suite by default") {
  const auto r = run("verify");
  CHECK(r.code == 0);
  CHECK(r.output.find("result = PASS") != std::string::npos);
}

TEST_CASE("design reports both objectives") {
  const auto r = run("design --base dst3 --target dst7 --pattern band:6 --side pre --size 16 "
                     "--restarts 1 --max-iterations 300 -o " + p("band6.txt") + " --summary " +
                     p("band6_summary.txt"));
  REQUIRE(r.code == 0);
  const auto s = tadj::read_text_file(p("band6_summary.txt"));
  CHECK(value_of(s, "objective") < value_of(s, "identity_objective"));
  CHECK(s.find("nonzeros_per_row = ") != std::string::npos);
  CHECK(s.find("warning = optimizer did not converge") != std::string::npos);
  CHECK(run("verify --adjustment " + p("band6.txt")).code == 0);
}

TEST_CASE("design with target equal to base is the identity") {
  const auto r = run("design --base dct2 --target dct2 --pattern band:4 --size 8 -o " +
                     p("same.txt") + " --summary " + p("same_summary.txt"));
  REQUIRE(r.code == 0);
  CHECK(value_of(tadj::read_text_file(p("same_summary.txt")), "objective") == 0.0);
}

TEST_CASE("dct8 design from a dst7 file") {
  REQUIRE(run("design --base dct2 --target dst7 --pattern subblock:8 --side post --size 32 "
              "--restarts 1 -o " + p("sb7.txt") + " --summary " + p("sb7_summary.txt"))
              .code == 0);
  REQUIRE(run("design --from-dst7 " + p("sb7.txt") + " -o " + p("sb8.txt") + " --summary " +
              p("sb8_summary.txt"))
              .code == 0);
  const auto s7 = tadj::read_text_file(p("sb7_summary.txt"));
  const auto s8 = tadj::read_text_file(p("sb8_summary.txt"));
  CHECK(s8.find("dct8~dct2+subblock:8/post") != std::string::npos);
  CHECK(std::abs(value_of(s7, "objective") - value_of(s8, "objective")) < 1e-12);
  CHECK(run("design --from-dst7 " + p("band6.txt") + " -o " + p("x.txt")).code == 5);
}

TEST_CASE("apply and apply --inverse round trip") {
  Eigen::MatrixXd x(3, 32);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 32; ++j) x(i, j) = std::sin(0.37 * (i * 32 + j)) * 10.0;
  }
  tadj::write_matrix_file(p("x.txt"), x);
  for (const std::string& how : {"--adjustment " + p("sb7.txt"), std::string("--kind dst7"),
                                std::string("--kind dct2")}) {
    CAPTURE(how);
    REQUIRE(run("apply " + how + " -i " + p("x.txt") + " -o " + p("y.txt")).code == 0);
    REQUIRE(run("apply " + how + " --inverse -i " + p("y.txt") + " -o " + p("z.txt")).code == 0);
    const auto z = tadj::read_matrix_file(p("z.txt"));
    CHECK((z - x).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK(run("apply --adjustment " + p("band6.txt") + " -i " + p("x.txt")).code == 2);
  CHECK(run("apply -i " + p("x.txt")).code == 2);
}

TEST_CASE("export figures") {
  REQUIRE(run("export fig2 --pattern subblock:8 --size 32 -o " + p("fig2")).code == 0);
  const auto mask = tadj::read_matrix_file(p("fig2.txt"));
  CHECK(mask.sum() == 64.0);
  CHECK(mask.topLeftCorner(8, 8).sum() == 64.0);
  CHECK(tadj::read_text_file(p("fig2.pgm")).rfind("P5\n128 128\n255\n", 0) == 0);

  REQUIRE(run("export fig3 --size 16 --restarts 1 --max-iterations 200 -o " + p("fig3")).code ==
          0);
  const auto csv = tadj::read_text_file(p("fig3.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 16 * 16);

  REQUIRE(run("export fig1 --size 8 --restarts 1 -o " + p("fig1")).code == 0);
  CHECK(tadj::read_text_file(p("fig1.pgm")).rfind("P5\n", 0) == 0);
  CHECK(run("export fig9 -o " + p("f")).code == 2);
}

TEST_CASE("eval and opcount") {
  const auto e = run("eval --size 16 --restarts 1 --max-iterations 50 --gains-csv " +
                     p("gains.csv"));
  CHECK(e.code == 0);
  CHECK(e.output.find("one-sided") != std::string::npos);
  CHECK(tadj::read_text_file(p("gains.csv")).rfind("transform,model,N,dB\n", 0) == 0);
  const auto o = run("opcount --sizes 32");
  CHECK(o.code == 0);
  CHECK(o.output.find("dense-2d/32x32 = mults 65536") != std::string::npos);
}

TEST_CASE("commands are deterministic for a seed") {
  const std::string args =
      "design --size 8 --pattern band:3 --restarts 3 --max-iterations 40 --seed 99";
  CHECK(run(args).output == run(args).output);
}
