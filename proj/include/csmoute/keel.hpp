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

#ifndef CSMOUTE_KEEL_HPP
#define CSMOUTE_KEEL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"

/*
 KEEL .dat reader.

 Layout:
   @relation NAME
   @attribute NAME real [lo, hi]        (also: integer, numeric)
   @attribute NAME {v1, v2, ...}        (nominal)
   @inputs A, B, ...                    (optional, also @input)
   @outputs CLASS                       (optional, also @output)
   @data
   comma-separated rows

 The class is the @outputs attribute, or the last attribute when absent.
 Rows containing a missing token (`<null>` or `?`) are dropped with a
 warning; everything else that deviates from the header is a ParseError.
*/

namespace csmoute {

namespace detail {

inline bool is_missing_token(std::string_view token) {
  return token.empty() || token == "?" || token == "<null>";
}

struct KeelAttribute {
  std::string name;
  bool nominal = false;
  std::vector<std::string> levels;
};

inline KeelAttribute parse_keel_attribute(std::string_view rest, std::size_t line_no) {
  rest = trim(rest);
  if (rest.empty()) throw ParseError(line_no, "@attribute without a name");
  KeelAttribute attr;
  std::size_t pos = 0;
  if (rest.front() == '\'' || rest.front() == '"') {
    const char quote = rest.front();
    const auto close = rest.find(quote, 1);
    if (close == std::string_view::npos) throw ParseError(line_no, "unterminated attribute name");
    attr.name = std::string(rest.substr(1, close - 1));
    pos = close + 1;
  } else {
    pos = rest.find_first_of(" \t{");
    if (pos == std::string_view::npos) throw ParseError(line_no, "@attribute '" + std::string(rest) + "' has no type");
    attr.name = std::string(rest.substr(0, pos));
  }
  const auto type = trim(rest.substr(pos));
  if (type.empty()) throw ParseError(line_no, "@attribute '" + attr.name + "' has no type");
  if (type.front() == '{') {
    if (type.back() != '}') throw ParseError(line_no, "unterminated value list for '" + attr.name + "'");
    attr.nominal = true;
    for (auto level : split_trimmed(type.substr(1, type.size() - 2), ',')) {
      if (level.empty()) throw ParseError(line_no, "empty nominal value for '" + attr.name + "'");
      attr.levels.emplace_back(level);
    }
    return attr;
  }
  const auto word = type.substr(0, type.find_first_of(" \t["));
  if (!iequals(word, "real") && !iequals(word, "integer") && !iequals(word, "numeric")) {
    throw ParseError(line_no, "unknown attribute type '" + std::string(word) + "'");
  }
  return attr;
}

inline std::size_t find_attribute(const std::vector<KeelAttribute>& attrs, std::string_view name,
                                  std::size_t line_no) {
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i].name == name) return i;
  }
  throw ParseError(line_no, "reference to undeclared attribute '" + std::string(name) + "'");
}

}  // namespace detail

inline LabeledDataset parse_keel(std::string_view text, std::string name = {},
                                 const WarningSink& warn = stderr_warnings()) {
  using detail::istarts_with;
  using detail::trim;

  std::vector<detail::KeelAttribute> attrs;
  std::vector<std::string> inputs;
  std::string output;
  std::string relation;
  bool in_data = false;

  std::vector<std::size_t> feature_attrs;
  std::size_t class_attr = 0;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> class_codes;
  std::size_t dropped = 0;

  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (line.front() != '@') throw ParseError(line_no, "expected a header directive, found '" + std::string(line) + "'");
      const auto word_end = line.find_first_of(" \t");
      const auto directive = line.substr(0, word_end);
      const auto rest = word_end == std::string_view::npos ? std::string_view{} : line.substr(word_end);
      if (detail::iequals(directive, "@relation")) {
        relation = std::string(trim(rest));
      } else if (detail::iequals(directive, "@attribute")) {
        attrs.push_back(detail::parse_keel_attribute(rest, line_no));
      } else if (detail::iequals(directive, "@inputs") || detail::iequals(directive, "@input")) {
        for (auto n : detail::split_trimmed(rest, ',')) {
          if (!n.empty()) inputs.emplace_back(n);
        }
      } else if (detail::iequals(directive, "@outputs") || detail::iequals(directive, "@output")) {
        const auto outs = detail::split_trimmed(rest, ',');
        if (outs.size() != 1 || outs[0].empty()) throw ParseError(line_no, "exactly one output attribute is supported");
        output = std::string(outs[0]);
      } else if (detail::iequals(directive, "@data")) {
        if (attrs.size() < 2) throw ParseError(line_no, "@data before at least two @attribute lines");
        class_attr = output.empty() ? attrs.size() - 1 : detail::find_attribute(attrs, output, line_no);
        if (!attrs[class_attr].nominal) {
          throw ParseError(line_no, "class attribute '" + attrs[class_attr].name + "' must be nominal");
        }
        for (const auto& in : inputs) feature_attrs.push_back(detail::find_attribute(attrs, in, line_no));
        if (feature_attrs.empty()) {
          for (std::size_t a = 0; a < attrs.size(); ++a) {
            if (a != class_attr) feature_attrs.push_back(a);
          }
        }
        std::sort(feature_attrs.begin(), feature_attrs.end());
        in_data = true;
      } else {
        throw ParseError(line_no, "unknown directive '" + std::string(directive) + "'");
      }
      continue;
    }

    const auto fields = detail::split_trimmed(line, ',');
    if (fields.size() != attrs.size()) {
      throw ParseError(line_no, "expected " + std::to_string(attrs.size()) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    if (std::any_of(fields.begin(), fields.end(), detail::is_missing_token)) {
      ++dropped;
      continue;
    }
    std::vector<double> row;
    row.reserve(feature_attrs.size());
    for (std::size_t a : feature_attrs) {
      const auto& attr = attrs[a];
      const auto field = fields[a];
      if (attr.nominal) {
        const auto it = std::find(attr.levels.begin(), attr.levels.end(), field);
        if (it == attr.levels.end()) {
          throw ParseError(line_no, "value '" + std::string(field) + "' not declared for '" + attr.name + "'");
        }
        row.push_back(static_cast<double>(it - attr.levels.begin()));
      } else {
        const auto v = detail::parse_double(field);
        if (!v) throw ParseError(line_no, "'" + std::string(field) + "' is not a number (attribute '" + attr.name + "')");
        row.push_back(*v);
      }
    }
    const auto& levels = attrs[class_attr].levels;
    const auto cls = std::find(levels.begin(), levels.end(), fields[class_attr]);
    if (cls == levels.end()) throw ParseError(line_no, "unknown class label '" + std::string(fields[class_attr]) + "'");
    class_codes.push_back(static_cast<std::size_t>(cls - levels.begin()));
    rows.push_back(std::move(row));
  }

  if (!in_data) throw ParseError(lines.size() + 1, "missing @data section");

  LabeledDataset ds;
  ds.name = name.empty() ? relation : std::move(name);
  if (dropped > 0) {
    warn("dataset '" + ds.name + "': dropped " + std::to_string(dropped) + " row(s) with missing values");
  }
  if (rows.empty()) throw ValidationError("dataset '" + ds.name + "' has no complete data rows");

  const auto& class_levels = attrs[class_attr].levels;
  std::vector<std::size_t> counts(class_levels.size(), 0);
  for (auto c : class_codes) ++counts[c];
  const auto [minority, majority] = detail::assign_roles(counts, ds.name);

  ds.class_column = attrs[class_attr].name;
  ds.minority_name = class_levels[minority];
  ds.majority_name = class_levels[majority];
  for (std::size_t a : feature_attrs) {
    Column col;
    col.name = attrs[a].name;
    if (attrs[a].nominal) {
      col.kind = FeatureKind::categorical;
      col.levels = attrs[a].levels;
    }
    ds.columns.push_back(std::move(col));
  }
  ds.features = Matrix(0, feature_attrs.size());
  ds.features.reserve_rows(rows.size());
  for (const auto& r : rows) ds.features.append_row(r);
  ds.labels.reserve(class_codes.size());
  for (auto c : class_codes) ds.labels.push_back(c == minority ? ClassLabel::minority : ClassLabel::majority);
  ds.validate();
  return ds;
}

}  // namespace csmoute

#endif  // CSMOUTE_KEEL_HPP
