#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/feature_matrix.hpp"
#include "stylo/report.hpp"
#include "stylo/select.hpp"
#include "stylo/stats.hpp"
#include "stylo/svm.hpp"

namespace stylo {

class Annotator;
class FeatureRegistry;

// A corpus with its feature matrix; row i of the matrix is record i.
struct Dataset {
  Corpus corpus;
  FeatureMatrix matrix;

  Dataset subset(std::span<const std::size_t> indices) const;
  std::size_t size() const { return corpus.size(); }
};

Dataset extract_dataset(Corpus corpus, const FeatureRegistry& registry, const Annotator& annotator,
                        unsigned threads);

struct HarnessConfig {
  SplitSpec split;
  TrainConfig train;
  Preprocessing preprocessing;
  unsigned threads = 1;
};

// Feature names matched against the matrix columns; unknown names raise
// ValidationError listing close matches.
std::vector<std::string> resolve_features(const FeatureMatrix& matrix, const std::vector<std::string>& requested);

// --- Point A: linguistic profiles -------------------------------------

struct PointAResult {
  std::vector<std::string> groups;
  std::vector<std::string> features;
  // curves[f][g] for features[f], groups[g].
  std::vector<std::vector<KdeCurve>> curves;
};

// Requires >= 2 model groups (DegenerateDataError otherwise).
PointAResult run_point_a(const Dataset& data, const std::vector<std::string>& features, const KdeOptions& kde,
                         unsigned threads);
ReportBundle point_a_report(const PointAResult& result);

// --- Point B: one classifier per model group ---------------------------

struct GroupRun {
  std::string group;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  Evaluation evaluation;
  SvmModel model;
};

struct PointBResult {
  std::vector<GroupRun> groups;
};

// Each group is split on its own (records in corpus order), trained on the
// train side and evaluated on the test side.
PointBResult run_point_b(const Dataset& data, const HarnessConfig& config);
ReportBundle point_b_report(const PointBResult& result);

// Train/test split of one group's records, as used by Point B and optimize.
Split group_split(const Corpus& group, const SplitSpec& spec);

// --- Point C: cross-model matrix -------------------------------------------

struct MatrixCell {
  double accuracy = 0.0;
  bool in_domain = false;
};

struct CrossMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<MatrixCell>> cells;
};

// Rows: one pooled leave-one-group-out model per group (when there are at
// least three groups), then one model per group. Columns: each group's test
// side of a question-aligned split. A cell is in-domain when the row's
// training data includes the column's group.
CrossMatrix run_point_c(const Dataset& data, const HarnessConfig& config);

// --- Point D: cross-dataset matrix ----------------------------------------

struct PointDOptions {
  // Evaluate cross cells on the other corpus's test split instead of all of it.
  bool cross_on_test_split = false;
};

// Rows = training corpus, columns = test corpus. Throws ValidationError if
// the two matrices were extracted with different feature registries.
CrossMatrix run_point_d(const Dataset& a, const std::string& name_a, const Dataset& b, const std::string& name_b,
                        const HarnessConfig& config, const PointDOptions& options = {});

ReportBundle cross_matrix_report(const std::string& experiment_id, const CrossMatrix& matrix);

// --- Optimize: accumulating training measures --------------------------

struct OptimizeOptions {
  double lowered_c = 0.8;
  double holdout_fraction = 0.25;
  SelectionConfig selection;
};

struct OptimizeColumn {
  std::string name;
  // original, + MinMax, + SFS, + lowered C
  std::array<double, 4> accuracy{};
  std::array<std::size_t, 4> feature_count{};
  SelectionResult selection;
};

inline constexpr std::array<const char*, 4> kOptimizeRows = {
    "Original", "+ MinMax Norm", "+ Sequential Feature Selection", "+ Lower Regularization Parameter"};

// Each column is one dataset cell. Row 1 uses config.train exactly (no
// preprocessing). Selection runs on a seeded holdout carved from the train
// side, never on the test side.
std::vector<OptimizeColumn> run_optimize(const std::vector<std::pair<std::string, Dataset>>& columns,
                                         const HarnessConfig& config, const OptimizeOptions& options);
ReportBundle optimize_report(const std::vector<OptimizeColumn>& columns);

// --- Ranking ---------------------------------------------------------------

struct RankResult {
  FeatureRanking full;
  std::vector<RankingEntry> top;
  std::vector<RankingEntry> bottom;
};

// Degenerate features only fill the top section once the non-degenerate
// ones run out, and never appear in the bottom section.
RankResult run_rank(const Dataset& data, std::size_t top_k, std::size_t bottom_k);
ReportBundle rank_report(const RankResult& result);

// --- Selection -----------------------------------------------------------

struct SelectionRun {
  SelectionResult result;
  SvmModel model;
  Evaluation test;
};

// Split, carve a holdout from the train side, select, then retrain on the
// whole train side with the selected features and evaluate on the test side.
SelectionRun run_selection(const Dataset& data, const HarnessConfig& config, const SelectionConfig& selection,
                           double holdout_fraction);

// Table helpers shared by the CLI.
Table evaluation_table(const std::string& name, const std::vector<std::pair<std::string, Evaluation>>& rows);

}  // namespace stylo
