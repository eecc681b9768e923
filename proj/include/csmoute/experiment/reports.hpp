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

#ifndef CSMOUTE_EXPERIMENT_REPORTS_HPP
#define CSMOUTE_EXPERIMENT_REPORTS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csmoute/csv.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/error.hpp"
#include "csmoute/stats.hpp"
#include "csmoute/taxonomy.hpp"

/**
 * @file reports.hpp
 *
 * @brief Comparison reports over a table of averaged results: pairwise
 * Wilcoxon with win/loss/tie counts, Friedman ranks with Holm post-hoc
 * against a control method, and Pearson correlation between minority-type
 * proportions and the control's per-dataset rank.
 */

namespace csmoute::experiment {

/// One averaged score: (dataset, method, classifier, metric) -> value.
struct ResultEntry {
  std::string dataset;
  std::string method;
  std::string classifier;
  std::string metric;
  std::optional<double> value;
};

/// Minority-type percentages of one dataset (safe, borderline, rare, outlier).
using TypeShares = std::array<double, 4>;

struct ReportOptions {
  std::string control = "csmoute";
  std::vector<std::pair<std::string, std::string>> wilcoxon_pairs{{"smute", "rus"}};
  double alpha = 0.05;
};

struct WilcoxonRow {
  std::string classifier;
  std::string metric;
  std::string method_a;
  std::string method_b;
  WinLossTie counts;
  std::size_t n_datasets = 0;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::string note;
};

struct FriedmanRow {
  std::string classifier;
  std::string metric;
  std::size_t n_methods = 0;
  std::size_t n_datasets = 0;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::string note;
};

struct RankRow {
  std::string classifier;
  std::string metric;
  std::string method;
  double average_rank = 0.0;
  bool control = false;
  std::optional<double> p_value;
  std::optional<double> adjusted_p;
  bool significant = false;
};

struct CorrelationRow {
  std::string classifier;
  std::string metric;
  std::string type;
  std::size_t n_datasets = 0;
  std::optional<double> r;
  std::optional<double> p_value;
  bool significant = false;
  std::string note;
};

struct Reports {
  std::vector<WilcoxonRow> wilcoxon;
  std::vector<FriedmanRow> friedman;
  std::vector<RankRow> ranks;
  std::vector<CorrelationRow> correlation;
};

namespace detail {

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

inline std::string opt(const std::optional<double>& v) {
  return v ? csmoute::detail::format_double(*v) : std::string();
}

}  // namespace detail

/// Computes every report. Classifiers, metrics, methods and datasets keep
/// the order of their first appearance in `entries`. Friedman ranks use the
/// datasets on which every method has a value.
inline Reports compute_reports(const std::vector<ResultEntry>& entries, const ReportOptions& options,
                               const std::map<std::string, TypeShares>* taxonomy = nullptr) {
  std::vector<std::string> classifiers, metrics, methods, datasets;
  std::map<std::array<std::string, 4>, double> value;  // (classifier, metric, method, dataset)
  for (const auto& e : entries) {
    detail::push_unique(classifiers, e.classifier);
    detail::push_unique(metrics, e.metric);
    detail::push_unique(methods, e.method);
    detail::push_unique(datasets, e.dataset);
    if (e.value) value[{e.classifier, e.metric, e.method, e.dataset}] = *e.value;
  }
  auto lookup = [&](const std::string& c, const std::string& m, const std::string& method,
                    const std::string& d) -> std::optional<double> {
    const auto it = value.find({c, m, method, d});
    if (it == value.end()) return std::nullopt;
    return it->second;
  };

  Reports out;
  for (const auto& c : classifiers) {
    for (const auto& m : metrics) {
      for (const auto& [a, b] : options.wilcoxon_pairs) {
        WilcoxonRow row{c, m, a, b, {}, 0, std::nullopt, std::nullopt, ""};
        std::vector<double> va, vb;
        for (const auto& d : datasets) {
          const auto x = lookup(c, m, a, d);
          const auto y = lookup(c, m, b, d);
          if (x && y) {
            va.push_back(*x);
            vb.push_back(*y);
          }
        }
        row.n_datasets = va.size();
        row.counts = win_loss_tie(va, vb);
        try {
          const auto t = wilcoxon_signed_rank(va, vb);
          row.statistic = t.statistic;
          row.p_value = t.p_value;
        } catch (const SampleTooSmallError& e) {
          row.note = e.what();
        }
        out.wilcoxon.push_back(std::move(row));
      }

      std::vector<std::string> present_methods;
      for (const auto& method : methods) {
        for (const auto& d : datasets) {
          if (lookup(c, m, method, d)) {
            present_methods.push_back(method);
            break;
          }
        }
      }
      std::vector<std::string> complete;
      for (const auto& d : datasets) {
        bool all = true;
        for (const auto& method : present_methods) all = all && lookup(c, m, method, d).has_value();
        if (all) complete.push_back(d);
      }
      FriedmanRow frow{c, m, present_methods.size(), complete.size(), std::nullopt, std::nullopt, ""};
      if (present_methods.size() < 2 || complete.size() < 2) {
        frow.note = "needs at least 2 methods and 2 complete datasets";
        out.friedman.push_back(std::move(frow));
        continue;
      }
      std::vector<std::vector<double>> matrix(present_methods.size());
      for (std::size_t i = 0; i < present_methods.size(); ++i) {
        for (const auto& d : complete) matrix[i].push_back(*lookup(c, m, present_methods[i], d));
      }
      const auto fr = friedman(std::move(matrix), present_methods, complete);
      frow.statistic = fr.test.statistic;
      frow.p_value = fr.test.p_value;
      out.friedman.push_back(std::move(frow));

      const auto control_it = std::find(present_methods.begin(), present_methods.end(), options.control);
      std::vector<PosthocComparison> posthoc;
      std::size_t control = present_methods.size();
      if (control_it != present_methods.end()) {
        control = static_cast<std::size_t>(control_it - present_methods.begin());
        posthoc = holm_posthoc(fr.table.average_ranks, complete.size(), control, options.alpha);
      }
      for (std::size_t i = 0; i < present_methods.size(); ++i) {
        RankRow r{c, m, present_methods[i], fr.table.average_ranks[i], i == control, std::nullopt, std::nullopt, false};
        for (const auto& ph : posthoc) {
          if (ph.method == i) {
            r.p_value = ph.p_value;
            r.adjusted_p = ph.adjusted_p;
            r.significant = ph.significant;
          }
        }
        out.ranks.push_back(std::move(r));
      }

      if (!taxonomy || control == present_methods.size()) continue;
      for (auto type : all_minority_types) {
        CorrelationRow row{c, m, std::string(to_string(type)), 0, std::nullopt, std::nullopt, false, ""};
        std::vector<double> x, y;
        for (std::size_t d = 0; d < complete.size(); ++d) {
          const auto it = taxonomy->find(complete[d]);
          if (it == taxonomy->end()) continue;
          x.push_back(it->second[static_cast<std::size_t>(type)]);
          y.push_back(fr.table.ranks[control][d]);
        }
        row.n_datasets = x.size();
        try {
          const auto t = pearson(x, y);
          row.r = t.statistic;
          row.p_value = t.p_value;
          row.significant = t.p_value <= options.alpha;
        } catch (const ConfigurationError& e) {
          row.note = e.what();
        }
        out.correlation.push_back(std::move(row));
      }
    }
  }
  return out;
}

inline void write_wilcoxon_csv(const Reports& r, std::ostream& out) {
  out << "classifier,metric,method_a,method_b,wins,losses,ties,n_datasets,statistic,p_value,note\n";
  for (const auto& w : r.wilcoxon) {
    out << w.classifier << ',' << w.metric << ',' << w.method_a << ',' << w.method_b << ',' << w.counts.wins << ','
        << w.counts.losses << ',' << w.counts.ties << ',' << w.n_datasets << ',' << detail::opt(w.statistic) << ','
        << detail::opt(w.p_value) << ',' << csmoute::detail::quote_csv(w.note) << '\n';
  }
}

inline void write_friedman_csv(const Reports& r, std::ostream& out) {
  out << "classifier,metric,n_methods,n_datasets,statistic,p_value,note\n";
  for (const auto& f : r.friedman) {
    out << f.classifier << ',' << f.metric << ',' << f.n_methods << ',' << f.n_datasets << ',' << detail::opt(f.statistic)
        << ',' << detail::opt(f.p_value) << ',' << csmoute::detail::quote_csv(f.note) << '\n';
  }
}

inline void write_ranks_csv(const Reports& r, std::ostream& out) {
  out << "classifier,metric,method,average_rank,control,p_value,holm_p_value,significant\n";
  for (const auto& k : r.ranks) {
    out << k.classifier << ',' << k.metric << ',' << k.method << ',' << csmoute::detail::format_double(k.average_rank)
        << ',' << (k.control ? "true" : "false") << ',' << detail::opt(k.p_value) << ',' << detail::opt(k.adjusted_p)
        << ',' << (k.significant ? "true" : "false") << '\n';
  }
}

inline void write_correlation_csv(const Reports& r, std::ostream& out) {
  out << "classifier,metric,type,n_datasets,r,p_value,significant,note\n";
  for (const auto& c : r.correlation) {
    out << c.classifier << ',' << c.metric << ',' << c.type << ',' << c.n_datasets << ',' << detail::opt(c.r) << ','
        << detail::opt(c.p_value) << ',' << (c.significant ? "true" : "false") << ','
        << csmoute::detail::quote_csv(c.note) << '\n';
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

template <class Writer>
void write_report_file(const std::filesystem::path& path, const Reports& r, Writer&& writer) {
  std::ostringstream s;
  writer(r, s);
  write_text_file(path, s.str());
}

/// Writes wilcoxon.csv, friedman.csv, ranks.csv and, when computed,
/// correlation.csv into `dir`.
inline void write_reports(const Reports& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_report_file(dir / "wilcoxon.csv", r, write_wilcoxon_csv);
  write_report_file(dir / "friedman.csv", r, write_friedman_csv);
  write_report_file(dir / "ranks.csv", r, write_ranks_csv);
  if (!r.correlation.empty()) write_report_file(dir / "correlation.csv", r, write_correlation_csv);
}

/// Reads the columns dataset, method, classifier, metric, value of an
/// averages CSV; other columns are ignored and an empty value is missing.
inline std::vector<ResultEntry> parse_averages_csv(std::string_view text) {
  const auto lines = csmoute::detail::split_lines(text);
  if (lines.empty()) throw ValidationError("averages CSV is empty");
  const auto header = csmoute::detail::split_csv_record(lines[0], 1);
  auto col = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("averages CSV has no '" + std::string(name) + "' column");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cd = col("dataset"), cm = col("method"), cc = col("classifier"), cx = col("metric"),
                    cv = col("value");
  std::vector<ResultEntry> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csmoute::detail::trim(lines[i]).empty()) continue;
    const auto f = csmoute::detail::split_csv_record(lines[i], i + 1);
    if (f.size() != header.size()) throw ParseError(i + 1, "expected " + std::to_string(header.size()) + " fields");
    ResultEntry e{f[cd], f[cm], f[cc], f[cx], std::nullopt};
    if (!f[cv].empty()) {
      e.value = csmoute::detail::parse_double(f[cv]);
      if (!e.value) throw ParseError(i + 1, "value '" + f[cv] + "' is not a number");
    }
    out.push_back(std::move(e));
  }
  return out;
}

/// Reads a categorize CSV (name, ..., safe_pct, borderline_pct, rare_pct,
/// outlier_pct) into per-dataset type shares.
inline std::map<std::string, TypeShares> parse_taxonomy_csv(std::string_view text) {
  const auto lines = csmoute::detail::split_lines(text);
  if (lines.empty()) throw ValidationError("taxonomy CSV is empty");
  const auto header = csmoute::detail::split_csv_record(lines[0], 1);
  auto col = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("taxonomy CSV has no '" + std::string(name) + "' column");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cn = col("name");
  const std::array<std::size_t, 4> cols{col("safe_pct"), col("borderline_pct"), col("rare_pct"), col("outlier_pct")};
  std::map<std::string, TypeShares> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csmoute::detail::trim(lines[i]).empty()) continue;
    const auto f = csmoute::detail::split_csv_record(lines[i], i + 1);
    if (f.size() != header.size()) throw ParseError(i + 1, "expected " + std::to_string(header.size()) + " fields");
    TypeShares s{};
    for (std::size_t t = 0; t < 4; ++t) {
      const auto v = csmoute::detail::parse_double(f[cols[t]]);
      if (!v) throw ParseError(i + 1, "percentage '" + f[cols[t]] + "' is not a number");
      s[t] = *v;
    }
    out[f[cn]] = s;
  }
  return out;
}

}  // namespace csmoute::experiment

#endif  // CSMOUTE_EXPERIMENT_REPORTS_HPP
