// Copyright 2026 The phonsim Authors
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

#include "csvio.hpp"

#include <charconv>

#include "errors.hpp"

namespace phonsim {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
  if (!out_) fail(ErrorCode::io_error, "cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvWriter::~CsvWriter() {
  if (out_.is_open()) out_.close();
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) {
    fail(ErrorCode::io_error, "csv row width mismatch in " + path_);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
  if (!out_) fail(ErrorCode::io_error, "write failed for " + path_);
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) fail(ErrorCode::io_error, "close failed for " + path_);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(ErrorCode::io_error, "write failed for " + path);
}

}  // namespace phonsim
