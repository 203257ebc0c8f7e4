/*
 * Copyright 2026 The balsplit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BALSPLIT_CSV_HPP_
#define BALSPLIT_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace balsplit {

struct CsvOptions {
  char delimiter = ',';
};

// Raw text table: a header row plus data rows, each with header.size() cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, if present.
  std::optional<std::size_t> column_index(std::string_view name) const;
};

// RFC 4180 style reader: quoted fields may contain delimiters, doubled quotes
// and newlines. Blank lines are skipped. Throws InvalidArgument on ragged rows
// and IoError when the file cannot be opened.
CsvTable parse_csv(std::istream& in, const CsvOptions& options = {});
CsvTable read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Writes the header and the selected rows, in the given order.
void write_csv(std::ostream& out, const CsvTable& table, std::span<const std::size_t> rows,
               const CsvOptions& options = {});
void write_csv(const std::filesystem::path& path, const CsvTable& table,
               std::span<const std::size_t> rows, const CsvOptions& options = {});

// Quotes a cell when it contains the delimiter, a quote or a line break.
std::string escape_csv_cell(std::string_view cell, char delimiter);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace balsplit

#endif  // BALSPLIT_CSV_HPP_
