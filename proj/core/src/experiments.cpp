#include "stylo/experiments.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stylo/annotator.hpp"
#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/plot.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Safe file-name component.
std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                      c == '-' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "_" : out;
}

bool has_both_classes(std::span<const int> labels) {
  return std::find(labels.begin(), labels.end(), 0) != labels.end() &&
         std::find(labels.begin(), labels.end(), 1) != labels.end();
}

void require_trainable(const FeatureMatrix& m, const std::string& what) {
  if (!has_both_classes(m.labels)) throw DegenerateDataError(what + " contains a single class; cannot train");
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& sorted_a, const std::vector<std::size_t>& sorted_b) {
  std::vector<std::size_t> out;
  std::set_intersection(sorted_a.begin(), sorted_a.end(), sorted_b.begin(), sorted_b.end(), std::back_inserter(out));
  return out;
}

// Every "_"-separated part of `query` occurs as a part of `candidate`.
bool parts_contained(std::string_view query, std::string_view candidate) {
  auto parts = [](std::string_view s) {
    std::set<std::string, std::less<>> out;
    std::size_t start = 0;
    while (start <= s.size()) {
      const std::size_t end = std::min(s.find('_', start), s.size());
      if (end > start) out.emplace(s.substr(start, end - start));
      start = end + 1;
    }
    return out;
  };
  const auto q = parts(query);
  const auto c = parts(candidate);
  return !q.empty() && std::includes(c.begin(), c.end(), q.begin(), q.end());
}

std::string fmt(double v) { return format_double(v); }

// All features when selection accepts nothing.
std::optional<std::vector<std::string>> selected_or_all(const SelectionResult& r) {
  if (r.ordered_features.empty()) return std::nullopt;
  return r.ordered_features;
}

struct SelectionData {
  FeatureMatrix fit;
  FeatureMatrix holdout;
};

SelectionData carve_holdout(const Dataset& train, std::uint64_t seed, double holdout_fraction, bool minmax) {
  SplitSpec spec;
  spec.train_fraction = 1.0 - holdout_fraction;
  spec.seed = seed;
  spec.stratified = true;
  const Split s = split(train.corpus, spec);
  SelectionData out{train.matrix.take_rows(s.train), train.matrix.take_rows(s.test)};
  if (minmax) {
    const auto params = minmax_fit(out.fit);
    out.fit = minmax_apply(params, out.fit);
    out.holdout = minmax_apply(params, out.holdout);
  }
  return out;
}

}  // namespace

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  return {take_records(corpus, indices), matrix.take_rows(indices)};
}

Dataset extract_dataset(Corpus corpus, const FeatureRegistry& registry, const Annotator& annotator,
                        unsigned threads) {
  std::vector<std::string> ids, texts;
  std::vector<int> labels;
  for (const auto& r : corpus) {
    ids.push_back(r.id);
    texts.push_back(r.response);
    labels.push_back(r.label);
  }
  Dataset d;
  d.matrix = extract_matrix(ids, texts, labels, registry, annotator, threads);
  d.corpus = std::move(corpus);
  return d;
}

std::vector<std::string> resolve_features(const FeatureMatrix& matrix, const std::vector<std::string>& requested) {
  if (requested.empty()) return matrix.column_names;
  const std::set<std::string> known(matrix.column_names.begin(), matrix.column_names.end());
  for (const auto& name : requested) {
    if (known.contains(name)) continue;
    std::vector<std::pair<std::size_t, std::string>> near;
    for (const auto& candidate : matrix.column_names) {
      const std::size_t d = edit_distance(name, candidate);
      const bool contains =
          (!name.empty() && candidate.find(name) != std::string::npos) || parts_contained(name, candidate);
      if (contains || d <= std::max<std::size_t>(3, name.size() / 4)) near.emplace_back(contains ? 0 : d, candidate);
    }
    std::sort(near.begin(), near.end());
    std::string message = "unknown feature '" + name + "'";
    if (!near.empty()) {
      message += "; close matches:";
      for (std::size_t k = 0; k < std::min<std::size_t>(5, near.size()); ++k) message += " " + near[k].second;
    }
    throw ValidationError(message);
  }
  return requested;
}

PointAResult run_point_a(const Dataset& data, const std::vector<std::string>& features, const KdeOptions& kde_options,
                         unsigned threads) {
  PointAResult out;
  out.groups = distinct_models(data.corpus);
  if (out.groups.size() < 2) throw DegenerateDataError("Point A requires >= 2 model groups");
  out.features = resolve_features(data.matrix, features);
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& g : out.groups) rows.push_back(records_where_model(data.corpus, g));
  out.curves.resize(out.features.size());
  parallel_for(out.features.size(), threads, [&](std::size_t f) {
    const std::size_t j = data.matrix.column_index(out.features[f]);
    for (std::size_t g = 0; g < out.groups.size(); ++g) {
      std::vector<double> samples;
      samples.reserve(rows[g].size());
      for (std::size_t i : rows[g]) samples.push_back(data.matrix.at(i, j));
      KdeCurve curve = kde(samples, kde_options);
      curve.feature_name = out.features[f];
      curve.group_key = out.groups[g];
      out.curves[f].push_back(std::move(curve));
    }
  });
  return out;
}

ReportBundle point_a_report(const PointAResult& result) {
  ReportBundle b;
  b.experiment_id = "point_a";
  Table summary{"profiles", {"feature", "group", "bandwidth", "grid_points", "mode"}, {}};
  for (std::size_t f = 0; f < result.features.size(); ++f) {
    for (const auto& curve : result.curves[f]) {
      const auto peak = std::max_element(curve.density.begin(), curve.density.end()) - curve.density.begin();
      summary.rows.push_back({curve.feature_name, curve.group_key, fmt(curve.bandwidth),
                              std::to_string(curve.grid.size()), fmt(curve.grid[static_cast<std::size_t>(peak)])});
      b.add_file("tables/kde/" + slug(curve.feature_name) + "/" + slug(curve.group_key) + ".csv", kde_csv(curve));
    }
    b.add_file("plots/" + slug(result.features[f]) + ".svg", kde_overlay_svg(result.features[f], result.curves[f]));
  }
  b.tables.push_back(std::move(summary));
  return b;
}

Split group_split(const Corpus& group, const SplitSpec& spec) { return split(group, spec); }

PointBResult run_point_b(const Dataset& data, const HarnessConfig& config) {
  const auto groups = distinct_models(data.corpus);
  if (groups.empty()) throw DegenerateDataError("corpus is empty");
  std::vector<Dataset> parts;
  for (const auto& g : groups) {
    parts.push_back(data.subset(records_where_model(data.corpus, g)));
    if (!has_both_classes(parts.back().matrix.labels)) {
      throw DegenerateDataError("group '" + g + "' contains a single class");
    }
  }
  PointBResult out;
  out.groups.resize(groups.size());
  parallel_for(groups.size(), config.threads, [&](std::size_t k) {
    const Split s = group_split(parts[k].corpus, config.split);
    const FeatureMatrix train = parts[k].matrix.take_rows(s.train);
    const FeatureMatrix test = parts[k].matrix.take_rows(s.test);
    require_trainable(train, "train split of group '" + groups[k] + "'");
    GroupRun& run = out.groups[k];
    run.group = groups[k];
    run.n_train = train.rows();
    run.n_test = test.rows();
    run.model = train_pipeline(train, config.train, config.preprocessing);
    run.evaluation = evaluate(run.model, test, test.labels);
  });
  return out;
}

Table evaluation_table(const std::string& name, const std::vector<std::pair<std::string, Evaluation>>& rows) {
  Table t{name,
          {"group", "n", "accuracy", "precision_0", "recall_0", "precision_1", "recall_1", "tn", "fp", "fn", "tp"},
          {}};
  for (const auto& [key, e] : rows) {
    t.rows.push_back({key, std::to_string(e.n), fmt(e.accuracy), fmt(e.precision[0]), fmt(e.recall[0]),
                      fmt(e.precision[1]), fmt(e.recall[1]), std::to_string(e.confusion[0][0]),
                      std::to_string(e.confusion[0][1]), std::to_string(e.confusion[1][0]),
                      std::to_string(e.confusion[1][1])});
  }
  return t;
}

ReportBundle point_b_report(const PointBResult& result) {
  ReportBundle b;
  b.experiment_id = "point_b";
  Table accuracy_row{"point_b", {"features"}, {{"All"}}};
  Table sizes{"splits", {"group", "n_train", "n_test"}, {}};
  std::vector<std::pair<std::string, Evaluation>> evals;
  for (const auto& run : result.groups) {
    accuracy_row.columns.push_back(run.group);
    accuracy_row.rows[0].push_back(fmt(run.evaluation.accuracy));
    sizes.rows.push_back({run.group, std::to_string(run.n_train), std::to_string(run.n_test)});
    evals.emplace_back(run.group, run.evaluation);
    b.add_file("models/" + slug(run.group) + ".json", model_to_json(run.model));
  }
  b.tables.push_back(std::move(accuracy_row));
  b.tables.push_back(evaluation_table("per_class", evals));
  b.tables.push_back(std::move(sizes));
  return b;
}

CrossMatrix run_point_c(const Dataset& data, const HarnessConfig& config) {
  const auto groups = distinct_models(data.corpus);
  if (groups.size() < 2) throw DegenerateDataError("Point C requires >= 2 model groups");
  SplitSpec spec = config.split;
  spec.aligned = true;
  const Split s = split(data.corpus, spec);
  std::vector<std::vector<std::size_t>> train_rows, test_rows;
  for (const auto& g : groups) {
    const auto members = records_where_model(data.corpus, g);
    train_rows.push_back(intersect(members, s.train));
    test_rows.push_back(intersect(members, s.test));
  }
  struct RowSpec {
    std::string label;
    std::vector<std::size_t> groups;
  };
  std::vector<RowSpec> specs;
  if (groups.size() >= 3) {
    for (std::size_t held = 0; held < groups.size(); ++held) {
      RowSpec r;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g == held) continue;
        r.label += (r.label.empty() ? "" : "+") + groups[g];
        r.groups.push_back(g);
      }
      specs.push_back(std::move(r));
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) specs.push_back({groups[g], {g}});

  std::vector<FeatureMatrix> tests;
  for (std::size_t g = 0; g < groups.size(); ++g) tests.push_back(data.matrix.take_rows(test_rows[g]));

  CrossMatrix out;
  out.column_labels = groups;
  out.row_labels.resize(specs.size());
  out.cells.assign(specs.size(), std::vector<MatrixCell>(groups.size()));
  parallel_for(specs.size(), config.threads, [&](std::size_t r) {
    std::vector<std::size_t> rows;
    for (std::size_t g : specs[r].groups) rows.insert(rows.end(), train_rows[g].begin(), train_rows[g].end());
    std::sort(rows.begin(), rows.end());
    const FeatureMatrix train = data.matrix.take_rows(rows);
    require_trainable(train, "training data for row '" + specs[r].label + "'");
    const SvmModel model = train_pipeline(train, config.train, config.preprocessing);
    out.row_labels[r] = specs[r].label;
    for (std::size_t c = 0; c < groups.size(); ++c) {
      const bool in_domain = std::find(specs[r].groups.begin(), specs[r].groups.end(), c) != specs[r].groups.end();
      out.cells[r][c] = {accuracy(model, tests[c], tests[c].labels), in_domain};
    }
  });
  return out;
}

CrossMatrix run_point_d(const Dataset& a, const std::string& name_a, const Dataset& b, const std::string& name_b,
                        const HarnessConfig& config, const PointDOptions& options) {
  if (a.matrix.registry_version != b.matrix.registry_version || a.matrix.column_names != b.matrix.column_names) {
    throw ValidationError("feature registry mismatch between the two corpora ('" + a.matrix.registry_version +
                          "' vs '" + b.matrix.registry_version + "')");
  }
  const std::array<const Dataset*, 2> data = {&a, &b};
  std::array<FeatureMatrix, 2> train, test;
  for (std::size_t k = 0; k < 2; ++k) {
    const Split s = group_split(data[k]->corpus, config.split);
    train[k] = data[k]->matrix.take_rows(s.train);
    test[k] = data[k]->matrix.take_rows(s.test);
    require_trainable(train[k], "train split of '" + (k == 0 ? name_a : name_b) + "'");
  }
  CrossMatrix out;
  out.row_labels = {name_a, name_b};
  out.column_labels = {name_a, name_b};
  out.cells.assign(2, std::vector<MatrixCell>(2));
  parallel_for(2, config.threads, [&](std::size_t r) {
    const SvmModel model = train_pipeline(train[r], config.train, config.preprocessing);
    for (std::size_t c = 0; c < 2; ++c) {
      const bool in_domain = r == c;
      const FeatureMatrix& eval = in_domain || options.cross_on_test_split ? test[c] : data[c]->matrix;
      out.cells[r][c] = {accuracy(model, eval, eval.labels), in_domain};
    }
  });
  return out;
}

ReportBundle cross_matrix_report(const std::string& experiment_id, const CrossMatrix& matrix) {
  ReportBundle b;
  b.experiment_id = experiment_id;
  Table grid{experiment_id, {"train"}, {}};
  grid.columns.insert(grid.columns.end(), matrix.column_labels.begin(), matrix.column_labels.end());
  Table cells{experiment_id + "_cells", {"train", "test", "accuracy", "in_domain"}, {}};
  for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
    std::vector<std::string> row{matrix.row_labels[r]};
    for (std::size_t c = 0; c < matrix.column_labels.size(); ++c) {
      row.push_back(fmt(matrix.cells[r][c].accuracy));
      cells.rows.push_back({matrix.row_labels[r], matrix.column_labels[c], fmt(matrix.cells[r][c].accuracy),
                            matrix.cells[r][c].in_domain ? "true" : "false"});
    }
    grid.rows.push_back(std::move(row));
  }
  b.tables.push_back(std::move(grid));
  b.tables.push_back(std::move(cells));
  return b;
}

std::vector<OptimizeColumn> run_optimize(const std::vector<std::pair<std::string, Dataset>>& columns,
                                         const HarnessConfig& config, const OptimizeOptions& options) {
  if (!(options.holdout_fraction > 0.0 && options.holdout_fraction < 1.0)) {
    throw ValidationError("holdout fraction must be strictly between 0 and 1");
  }
  std::vector<OptimizeColumn> out;
  for (const auto& [name, data] : columns) {
    OptimizeColumn col;
    col.name = name;
    if (!has_both_classes(data.matrix.labels)) throw DegenerateDataError("'" + name + "' contains a single class");
    const Split s = group_split(data.corpus, config.split);
    const Dataset train = data.subset(s.train);
    const FeatureMatrix test = data.matrix.take_rows(s.test);
    require_trainable(train.matrix, "train split of '" + name + "'");
    const std::size_t all = data.matrix.cols();

    const SvmModel original = train_pipeline(train.matrix, config.train, {});
    col.accuracy[0] = accuracy(original, test, test.labels);
    col.feature_count[0] = all;

    Preprocessing prep;
    prep.minmax = true;
    const SvmModel normalized = train_pipeline(train.matrix, config.train, prep);
    col.accuracy[1] = accuracy(normalized, test, test.labels);
    col.feature_count[1] = all;

    const SelectionData sel = carve_holdout(train, config.split.seed, options.holdout_fraction, true);
    col.selection = select_features(sel.fit, sel.holdout, config.train, options.selection);
    prep.selected_features = selected_or_all(col.selection);
    const SvmModel selected = train_pipeline(train.matrix, config.train, prep);
    col.accuracy[2] = accuracy(selected, test, test.labels);
    col.feature_count[2] = prep.selected_features ? prep.selected_features->size() : all;

    TrainConfig lowered = config.train;
    lowered.c = options.lowered_c;
    const SvmModel low_c = train_pipeline(train.matrix, lowered, prep);
    col.accuracy[3] = accuracy(low_c, test, test.labels);
    col.feature_count[3] = col.feature_count[2];
    out.push_back(std::move(col));
  }
  return out;
}

ReportBundle optimize_report(const std::vector<OptimizeColumn>& columns) {
  ReportBundle b;
  b.experiment_id = "optimize";
  Table acc{"optimize", {"method"}, {}};
  Table counts{"optimize_feature_counts", {"method"}, {}};
  for (const auto& col : columns) {
    acc.columns.push_back(col.name);
    counts.columns.push_back(col.name);
  }
  for (std::size_t r = 0; r < kOptimizeRows.size(); ++r) {
    std::vector<std::string> a{kOptimizeRows[r]};
    std::vector<std::string> c{kOptimizeRows[r]};
    for (const auto& col : columns) {
      a.push_back(fmt(col.accuracy[r]));
      c.push_back(std::to_string(col.feature_count[r]));
    }
    acc.rows.push_back(std::move(a));
    counts.rows.push_back(std::move(c));
  }
  b.tables.push_back(std::move(acc));
  b.tables.push_back(std::move(counts));
  for (const auto& col : columns) {
    b.add_file("tables/selection/" + slug(col.name) + ".csv", selection_csv(col.selection));
    if (col.selection.ordered_features.empty()) {
      b.notes.push_back("'" + col.name + "': selection accepted no feature; the SFS rows use all features");
    }
    b.notes.push_back("'" + col.name + "': selection stopped by " +
                      std::string(stop_reason_name(col.selection.stop_reason)));
  }
  return b;
}

RankResult run_rank(const Dataset& data, std::size_t top_k, std::size_t bottom_k) {
  RankResult out;
  out.full = rank_features(data.matrix, data.matrix.labels);
  std::vector<RankingEntry> informative, degenerate;
  for (const auto& e : out.full.entries) (e.degenerate ? degenerate : informative).push_back(e);
  for (std::size_t k = 0; k < std::min(top_k, informative.size()); ++k) out.top.push_back(informative[k]);
  for (std::size_t k = 0; out.top.size() < top_k && k < degenerate.size(); ++k) out.top.push_back(degenerate[k]);
  const std::size_t nb = std::min(bottom_k, informative.size());
  out.bottom.assign(informative.end() - static_cast<std::ptrdiff_t>(nb), informative.end());
  return out;
}

ReportBundle rank_report(const RankResult& result) {
  ReportBundle b;
  b.experiment_id = "rank";
  auto table = [](std::string name, std::span<const RankingEntry> entries, long first_rank) {
    Table t{std::move(name), {"rank", "feature", "r", "degenerate"}, {}};
    for (std::size_t i = 0; i < entries.size(); ++i) {
      t.rows.push_back({std::to_string(first_rank + static_cast<long>(i)), entries[i].feature, fmt(entries[i].r),
                        entries[i].degenerate ? "true" : "false"});
    }
    return t;
  };
  b.tables.push_back(table("ranking_top", result.top, 1));
  b.tables.push_back(table("ranking_bottom", result.bottom, -static_cast<long>(result.bottom.size())));
  b.tables.push_back(table("ranking", result.full.entries, 1));
  return b;
}

SelectionRun run_selection(const Dataset& data, const HarnessConfig& config, const SelectionConfig& selection,
                           double holdout_fraction) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ValidationError("holdout fraction must be strictly between 0 and 1");
  }
  if (!has_both_classes(data.matrix.labels)) throw DegenerateDataError("corpus contains a single class");
  const Split s = group_split(data.corpus, config.split);
  const Dataset train = data.subset(s.train);
  const FeatureMatrix test = data.matrix.take_rows(s.test);
  require_trainable(train.matrix, "train split");
  const SelectionData sel = carve_holdout(train, config.split.seed, holdout_fraction, config.preprocessing.minmax);
  SelectionRun out;
  out.result = select_features(sel.fit, sel.holdout, config.train, selection);
  Preprocessing prep = config.preprocessing;
  prep.selected_features = selected_or_all(out.result);
  out.model = train_pipeline(train.matrix, config.train, prep);
  out.test = evaluate(out.model, test, test.labels);
  return out;
}

}  // namespace stylo
