/*
 * Copyright 2026 The csmoute Authors.
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

#ifndef CSMOUTE_IO_HPP
#define CSMOUTE_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "csmoute/csv.hpp"
#include "csmoute/dataset.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"
#include "csmoute/keel.hpp"

namespace csmoute {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadOptions {
  std::string class_column = "Class";  // CSV only
  std::string minority_label;          // CSV only; empty picks the rarer class
};

/// Reads a KEEL `.dat` file, or a CSV for any other extension. The dataset
/// is named after the file stem.
inline LabeledDataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {},
                                   const WarningSink& warn = stderr_warnings()) {
  const std::string text = read_file(path);
  const std::string name = path.stem().string();
  if (detail::iequals(path.extension().string(), ".dat")) return parse_keel(text, name, warn);
  return parse_csv(text, options.class_column, options.minority_label, name, warn);
}

}  // namespace csmoute

#endif  // CSMOUTE_IO_HPP
