#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// `id` identifies the question within a dataset and is shared by every
// model's answer to it; (dataset, model, id) is unique.
struct ResponseRecord {
  std::string id;
  std::string dataset;
  std::string model;
  std::string question;
  std::string response;
  double truth_score = 0.0;
  int label = 0;
  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

using Corpus = std::vector<ResponseRecord>;

// 1 iff score >= 0.5. Throws ValidationError outside [0, 1].
int binarize(double truth_score);

// Line-delimited JSON with keys exactly {id, dataset, model, question,
// response, truth_score, label}. Blank lines are skipped. Malformed JSON
// raises ParseError with the line number; schema or invariant violations
// (including a label that disagrees with binarize(truth_score) and duplicate
// (dataset, model, id) keys) raise ValidationError naming the record id.
Corpus parse_corpus(std::string_view text);
Corpus load_corpus(const std::string& path);
std::string corpus_to_jsonl(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::string& path);

std::vector<std::string> distinct_models(const Corpus& corpus);
std::vector<std::string> distinct_datasets(const Corpus& corpus);
// Indices of records whose model (or dataset) equals `key`, in corpus order.
std::vector<std::size_t> records_where_model(const Corpus& corpus, std::string_view key);
std::vector<std::size_t> records_where_dataset(const Corpus& corpus, std::string_view key);
Corpus take_records(const Corpus& corpus, std::span<const std::size_t> indices);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
  // Split distinct record ids instead of records. Ids name the question and
  // repeat across models, so every model's answer lands on the same side.
  bool aligned = false;
};

struct Split {
  // Record indices in corpus order.
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Train size is floor(n * fraction), kept within [1, n - 1]. Stratified
// splits give each class a largest-remainder share of the train quota and,
// where the class sizes allow, leave both classes on both sides. Aligned
// splits apply the same rule to question ids, stratified by the rounded mean
// label of each id's records.
Split split(const Corpus& corpus, const SplitSpec& spec);
std::vector<std::string> ids_of(const Corpus& corpus, std::span<const std::size_t> indices);

enum class GroupBy { model, dataset };

struct BalanceRow {
  std::string key;
  std::size_t n_total = 0;
  std::size_t n_label0 = 0;
  std::size_t n_label1 = 0;
  friend bool operator==(const BalanceRow&, const BalanceRow&) = default;
};

// Sorted by key.
std::vector<BalanceRow> class_balance(const Corpus& corpus, GroupBy group_by);
std::string class_balance_csv(const std::vector<BalanceRow>& rows);

}  // namespace stylo
