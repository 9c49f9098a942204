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

#include "tadj/matrix_io.hpp"

#include "tadj/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace tadj {

std::string format_double(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !is_space(line[end])) ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

double parse_double(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::Parse,
                "not a finite number: '" + std::string(token) + "'");
  }
  return value;
}

long long parse_integer(std::string_view token) {
  long long value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::Parse,
                "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t at = 0;
  auto next_nonempty = [&]() -> std::vector<std::string_view> {
    while (at < lines.size()) {
      auto tokens = split_tokens(lines[at++]);
      if (!tokens.empty()) return tokens;
    }
    return {};
  };

  auto header = next_nonempty();
  if (header.empty()) throw Error(ErrorCode::Parse, "empty matrix file");
  if (header.size() != 2) {
    throw Error(ErrorCode::Parse, "matrix header must be '<rows> <cols>'");
  }
  const long long rows = parse_integer(header[0]);
  const long long cols = parse_integer(header[1]);
  if (rows < 1 || cols < 1 || rows > 1 << 16 || cols > 1 << 16) {
    throw Error(ErrorCode::Parse, "matrix dimensions out of range");
  }

  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    auto tokens = next_nonempty();
    if (tokens.empty()) {
      throw Error(ErrorCode::Parse, "matrix has fewer than " +
                                        std::to_string(rows) + " rows");
    }
    if (static_cast<long long>(tokens.size()) != cols) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has " +
                                        std::to_string(tokens.size()) +
                                        " values, expected " +
                                        std::to_string(cols));
    }
    for (long long j = 0; j < cols; ++j) m(i, j) = parse_double(tokens[j]);
  }
  if (!next_nonempty().empty()) {
    throw Error(ErrorCode::Parse, "trailing data after matrix");
  }
  return m;
}

Matrix read_matrix(std::istream& is) {
  std::string text{std::istreambuf_iterator<char>(is),
                   std::istreambuf_iterator<char>()};
  return parse_matrix(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix(read_text_file(path));
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  write_text_file(path, format_matrix(m));
}

}  // namespace tadj
