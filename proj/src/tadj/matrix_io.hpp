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

#pragma once

#include "tadj/transform_matrices.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tadj {

// Matrix text format:
//   line 1: "<rows> <cols>"
//   then <rows> lines of <cols> values separated by single spaces, each
//   written with 17 significant digits so doubles round-trip exactly.

std::string format_double(double value);
std::string format_matrix(const Matrix& m);
void write_matrix(std::ostream& os, const Matrix& m);
Matrix parse_matrix(std::string_view text);
Matrix read_matrix(std::istream& is);

Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_tokens(std::string_view line);
double parse_double(std::string_view token);
long long parse_integer(std::string_view token);

}  // namespace tadj
