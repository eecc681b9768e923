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

#ifndef CSMOUTE_CSV_HPP
#define CSMOUTE_CSV_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"

namespace csmoute {

namespace detail {

/// One CSV record; double quotes protect separators, `""` escapes a quote.
inline std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

inline std::string quote_csv(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline bool is_missing_csv(std::string_view token) {
  return token.empty() || token == "?" || token == "NA" || token == "<null>";
}

}  // namespace detail

/// Reads a CSV with a header row. Columns whose every cell parses as a number
/// are numeric; the rest are categorical with levels in first-appearance
/// order. `minority_label` names the positive class; when empty the rarer
/// label is used. Rows with an empty, `?`, `NA` or `<null>` cell are dropped.
inline LabeledDataset parse_csv(std::string_view text, std::string_view class_column,
                                std::string_view minority_label = {}, std::string name = {},
                                const WarningSink& warn = stderr_warnings()) {
  const auto lines = detail::split_lines(text);
  std::size_t header_idx = 0;
  while (header_idx < lines.size() && detail::trim(lines[header_idx]).empty()) ++header_idx;
  if (header_idx == lines.size()) throw ValidationError("CSV input is empty");

  const auto header = detail::split_csv_record(lines[header_idx], header_idx + 1);
  const auto class_it = std::find(header.begin(), header.end(), class_column);
  if (class_it == header.end()) {
    throw ValidationError("CSV has no class column named '" + std::string(class_column) + "'");
  }
  const auto class_idx = static_cast<std::size_t>(class_it - header.begin());

  std::vector<std::vector<std::string>> records;
  std::size_t dropped = 0;
  for (std::size_t i = header_idx + 1; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    auto fields = detail::split_csv_record(lines[i], i + 1);
    if (fields.size() != header.size()) {
      throw ParseError(i + 1, "expected " + std::to_string(header.size()) + " fields, found " +
                                  std::to_string(fields.size()));
    }
    if (std::any_of(fields.begin(), fields.end(), [](const std::string& f) { return detail::is_missing_csv(f); })) {
      ++dropped;
      continue;
    }
    records.push_back(std::move(fields));
  }

  LabeledDataset ds;
  ds.name = std::move(name);
  if (dropped > 0) {
    warn("dataset '" + ds.name + "': dropped " + std::to_string(dropped) + " row(s) with missing values");
  }
  if (records.empty()) throw ValidationError("CSV input has no complete data rows");

  // Class roles.
  std::vector<std::string> class_levels;
  std::vector<std::size_t> class_counts;
  std::vector<std::size_t> class_codes;
  for (const auto& rec : records) {
    const auto& v = rec[class_idx];
    auto it = std::find(class_levels.begin(), class_levels.end(), v);
    if (it == class_levels.end()) {
      class_levels.push_back(v);
      class_counts.push_back(0);
      it = class_levels.end() - 1;
    }
    const auto code = static_cast<std::size_t>(it - class_levels.begin());
    ++class_counts[code];
    class_codes.push_back(code);
  }
  std::size_t minority = 0;
  std::size_t majority = 0;
  if (!minority_label.empty()) {
    const auto it = std::find(class_levels.begin(), class_levels.end(), minority_label);
    if (it == class_levels.end()) {
      throw ValidationError("minority label '" + std::string(minority_label) + "' does not occur in the data");
    }
    if (class_levels.size() < 2) throw ValidationError("dataset '" + ds.name + "' contains a single class");
    if (class_levels.size() > 2) throw ValidationError("dataset '" + ds.name + "' has more than two classes");
    minority = static_cast<std::size_t>(it - class_levels.begin());
    majority = 1 - minority;
    if (class_counts[minority] > class_counts[majority]) {
      warn("label '" + std::string(minority_label) + "' is the more frequent class; treating it as majority");
      std::swap(minority, majority);
    }
  } else {
    std::tie(minority, majority) = detail::assign_roles(class_counts, ds.name);
  }

  // Feature columns.
  std::vector<std::size_t> feature_idx;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != class_idx) feature_idx.push_back(c);
  }
  ds.features = Matrix(records.size(), feature_idx.size());
  for (std::size_t j = 0; j < feature_idx.size(); ++j) {
    const std::size_t c = feature_idx[j];
    Column col;
    col.name = header[c];
    const bool numeric = std::all_of(records.begin(), records.end(),
                                     [c](const auto& rec) { return detail::parse_double(rec[c]).has_value(); });
    for (std::size_t r = 0; r < records.size(); ++r) {
      if (numeric) {
        ds.features(r, j) = *detail::parse_double(records[r][c]);
        continue;
      }
      const auto& v = records[r][c];
      auto it = std::find(col.levels.begin(), col.levels.end(), v);
      if (it == col.levels.end()) {
        col.levels.push_back(v);
        it = col.levels.end() - 1;
      }
      ds.features(r, j) = static_cast<double>(it - col.levels.begin());
    }
    if (!numeric) col.kind = FeatureKind::categorical;
    ds.columns.push_back(std::move(col));
  }

  ds.class_column = header[class_idx];
  ds.minority_name = class_levels[minority];
  ds.majority_name = class_levels[majority];
  ds.labels.reserve(class_codes.size());
  for (auto code : class_codes) ds.labels.push_back(code == minority ? ClassLabel::minority : ClassLabel::majority);
  ds.validate();
  return ds;
}

/// Writes the header and every row; numbers use the shortest round-trip
/// representation, unencoded categorical cells their level text.
inline void write_csv(const LabeledDataset& ds, std::ostream& out) {
  for (const auto& col : ds.columns) out << detail::quote_csv(col.name) << ',';
  out << detail::quote_csv(ds.class_column) << '\n';
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t c = 0; c < ds.columns.size(); ++c) {
      const double v = ds.features(r, c);
      if (ds.columns[c].kind == FeatureKind::categorical) {
        out << detail::quote_csv(ds.columns[c].levels.at(static_cast<std::size_t>(v)));
      } else {
        out << detail::format_double(v);
      }
      out << ',';
    }
    out << detail::quote_csv(ds.labels[r] == ClassLabel::minority ? ds.minority_name : ds.majority_name) << '\n';
  }
}

inline std::string to_csv(const LabeledDataset& ds) {
  std::ostringstream out;
  write_csv(ds, out);
  return out.str();
}

}  // namespace csmoute

#endif  // CSMOUTE_CSV_HPP
