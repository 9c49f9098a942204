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

#include <filesystem>
#include <limits>
#include <sstream>

#include <doctest.h>

#include "support.hpp"
#include "tadj/error.hpp"
#include "tadj/matrix_io.hpp"

using namespace tadj;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tadj::Error");
  return ErrorCode::Model;
}

}  // namespace

TEST_CASE("format starts with the dimensions") {
  const Matrix m = Matrix::Identity(2, 3);
  const auto text = format_matrix(m);
  CHECK(text.rfind("2 3\n", 0) == 0);
  CHECK(text == "2 3\n1 0 0\n0 1 0\n");
}

TEST_CASE("doubles round trip bit for bit") {
  auto g = testing::rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = testing::random_matrix(g, 1 + trial % 5, 1 + trial % 7);
    m(0, 0) = std::numeric_limits<double>::denorm_min();
    if (m.size() > 1) m(m.rows() - 1, m.cols() - 1) = -1e300;
    const Matrix back = parse_matrix(format_matrix(m));
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK((back.array() == m.array()).all());
  }
}

TEST_CASE("stream and file round trips") {
  auto g = testing::rng(4);
  const Matrix m = testing::random_matrix(g, 4, 4);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK((read_matrix(ss).array() == m.array()).all());

  const auto path = std::filesystem::temp_directory_path() / "tadj_matrix_io_test.txt";
  write_matrix_file(path, m);
  CHECK((read_matrix_file(path).array() == m.array()).all());
  std::filesystem::remove(path);
}

TEST_CASE("malformed text is a parse error") {
  const char* bad[] = {
      "",                     // empty
      "   \n\n",              // blank
      "2\n1 2\n",             // header needs two numbers
      "2 2\n1 2\n",           // missing row
      "2 2\n1 2\n3\n",        // short row
      "2 2\n1 2\n3 4 5\n",    // long row
      "1 1\n1\n2\n",          // trailing data
      "1 1\nabc\n",           // not a number
      "1 1\nnan\n",           // not finite
      "1 1\ninf\n",           // not finite
      "0 3\n",                // no rows
      "-1 3\n",               // negative
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK(code_of([&] { parse_matrix(text); }) == ErrorCode::Parse);
  }
}

TEST_CASE("missing files are io errors") {
  CHECK(code_of([] { read_matrix_file("/nonexistent/dir/m.txt"); }) == ErrorCode::Io);
  CHECK(code_of([] { write_text_file("/nonexistent/dir/m.txt", "x"); }) == ErrorCode::Io);
}

TEST_CASE("token helpers") {
  const auto t = split_tokens("  a \t bb\n c  ");
  REQUIRE(t.size() == 3);
  CHECK(t[0] == "a");
  CHECK(t[1] == "bb");
  CHECK(t[2] == "c");
  CHECK(split_tokens("   ").empty());
  CHECK(parse_double("-2.5e-3") == -2.5e-3);
  CHECK(parse_integer("42") == 42);
  CHECK(code_of([] { parse_integer("4.2"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_double("1.0x"); }) == ErrorCode::Parse);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
