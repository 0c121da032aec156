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

#ifndef PHONSIM_CSVIO_HPP
#define PHONSIM_CSVIO_HPP

#include <fstream>
#include <string>
#include <vector>

namespace phonsim {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Comma-separated, LF line endings, UTF-8, header row. Rows are emitted in
/// call order, so identical inputs produce byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();

  void row(const std::vector<double>& values);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace phonsim

#endif
