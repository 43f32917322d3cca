#include "stylo/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {"id", "dataset", "model", "question", "response", "truth_score", "label"};

std::string text_field(const json& j, const char* key, const std::string& who) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ValidationError("record " + who + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

ResponseRecord parse_record(const json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError("corpus line is not a JSON object", line);
  std::string who = "at line " + std::to_string(line);
  if (j.contains("id") && j.at("id").is_string()) who = "'" + j.at("id").get<std::string>() + "'";
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) throw ValidationError("record " + who + ": unknown field '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!j.contains(key)) throw ValidationError("record " + who + ": missing field '" + key + "'");
  }
  ResponseRecord r;
  r.id = text_field(j, "id", who);
  r.dataset = text_field(j, "dataset", who);
  r.model = text_field(j, "model", who);
  r.question = text_field(j, "question", who);
  r.response = text_field(j, "response", who);
  if (r.id.empty()) throw ValidationError("record " + who + ": empty id");
  if (!j.at("truth_score").is_number()) throw ValidationError("record " + who + ": truth_score must be a number");
  r.truth_score = j.at("truth_score").get<double>();
  if (!(r.truth_score >= 0.0 && r.truth_score <= 1.0)) {
    throw ValidationError("record " + who + ": truth_score must be in [0, 1]");
  }
  const json& label = j.at("label");
  if (!label.is_number_integer() || (label != 0 && label != 1)) {
    throw ValidationError("record " + who + ": label must be 0 or 1");
  }
  r.label = label.get<int>();
  if (r.label != binarize(r.truth_score)) {
    throw ValidationError("record " + who + ": label " + std::to_string(r.label) + " disagrees with truth_score " +
                          format_double(r.truth_score) + " (scores >= 0.5 are labelled 1)");
  }
  return r;
}

// Largest-remainder train quota per stratum, then nudged so each stratum
// with at least two members keeps one member on each side when possible.
std::vector<std::size_t> stratum_quotas(const std::vector<std::size_t>& sizes, std::size_t n_train) {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  std::vector<std::size_t> quota(sizes.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const double ideal = static_cast<double>(n_train) * static_cast<double>(sizes[k]) / static_cast<double>(n);
    quota[k] = static_cast<std::size_t>(std::floor(ideal));
    assigned += quota[k];
    remainders.emplace_back(ideal - static_cast<double>(quota[k]), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t t = 0; assigned < n_train; ++t, ++assigned) ++quota[remainders[t % remainders.size()].second];
  auto movable_down = [&](std::size_t k) { return quota[k] > 1 || (quota[k] == 1 && sizes[k] < 2); };
  auto movable_up = [&](std::size_t k) { return quota[k] + 1 < sizes[k] || (quota[k] + 1 == sizes[k] && sizes[k] < 2); };
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 2) continue;
    if (quota[k] == 0) {
      for (std::size_t o = 0; o < sizes.size(); ++o) {
        if (o != k && movable_down(o)) {
          --quota[o];
          ++quota[k];
          break;
        }
      }
    } else if (quota[k] == sizes[k]) {
      for (std::size_t o = 0; o < sizes.size(); ++o) {
        if (o != k && movable_up(o)) {
          ++quota[o];
          --quota[k];
          break;
        }
      }
    }
  }
  return quota;
}

std::size_t train_size(std::size_t n, double fraction) {
  const auto raw = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
  return std::clamp<std::size_t>(raw, 1, n - 1);
}

// Splits `units` (each with a stratum 0/1) and returns a per-unit train flag.
std::vector<bool> split_units(const std::vector<int>& strata, const SplitSpec& spec, bool stratify) {
  const std::size_t n = strata.size();
  const std::size_t n_train = train_size(n, spec.train_fraction);
  Rng rng(spec.seed);
  std::vector<bool> in_train(n, false);
  if (!stratify) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t t = 0; t < n_train; ++t) in_train[order[t]] = true;
    return in_train;
  }
  std::vector<std::vector<std::size_t>> members(2);
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(strata[i])].push_back(i);
  const auto quota = stratum_quotas({members[0].size(), members[1].size()}, n_train);
  for (std::size_t k = 0; k < 2; ++k) {
    rng.shuffle(members[k]);
    for (std::size_t t = 0; t < quota[k]; ++t) in_train[members[k][t]] = true;
  }
  return in_train;
}

}  // namespace

int binarize(double truth_score) {
  if (!(truth_score >= 0.0 && truth_score <= 1.0)) {
    throw ValidationError("truth score " + format_double(truth_score) + " is outside [0, 1]");
  }
  return truth_score >= 0.5 ? 1 : 0;
}

Corpus parse_corpus(std::string_view text) {
  Corpus corpus;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(lines[n]);
    } catch (const json::parse_error&) {
      throw ParseError("malformed JSON in corpus", n + 1);
    }
    ResponseRecord r = parse_record(j, n + 1);
    if (!seen.emplace(r.dataset, r.model, r.id).second) {
      throw ValidationError("record '" + r.id + "': duplicate (dataset, model, id) = (" + r.dataset + ", " +
                            r.model + ", " + r.id + ")");
    }
    corpus.push_back(std::move(r));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& r : corpus) {
    const json j = {{"id", r.id},           {"dataset", r.dataset},         {"model", r.model},
                    {"question", r.question}, {"response", r.response}, {"truth_score", r.truth_score},
                    {"label", r.label}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) { write_file(path, corpus_to_jsonl(corpus)); }

namespace {

std::vector<std::string> distinct(const Corpus& corpus, std::string ResponseRecord::*field) {
  std::set<std::string> keys;
  for (const auto& r : corpus) keys.insert(r.*field);
  return {keys.begin(), keys.end()};
}

std::vector<std::size_t> where(const Corpus& corpus, std::string ResponseRecord::*field, std::string_view key) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].*field == key) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::string> distinct_models(const Corpus& corpus) { return distinct(corpus, &ResponseRecord::model); }
std::vector<std::string> distinct_datasets(const Corpus& corpus) {
  return distinct(corpus, &ResponseRecord::dataset);
}
std::vector<std::size_t> records_where_model(const Corpus& corpus, std::string_view key) {
  return where(corpus, &ResponseRecord::model, key);
}
std::vector<std::size_t> records_where_dataset(const Corpus& corpus, std::string_view key) {
  return where(corpus, &ResponseRecord::dataset, key);
}

Corpus take_records(const Corpus& corpus, std::span<const std::size_t> indices) {
  Corpus out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(corpus.at(i));
  return out;
}

Split split(const Corpus& corpus, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ValidationError("train fraction must be strictly between 0 and 1");
  }
  if (corpus.size() < 2) throw DegenerateDataError("splitting needs at least two records");
  const bool has0 = std::any_of(corpus.begin(), corpus.end(), [](const auto& r) { return r.label == 0; });
  const bool has1 = std::any_of(corpus.begin(), corpus.end(), [](const auto& r) { return r.label == 1; });
  if (spec.stratified && !(has0 && has1)) {
    throw DegenerateDataError("stratified split requires both classes in the corpus");
  }

  Split out;
  if (!spec.aligned) {
    std::vector<int> strata;
    strata.reserve(corpus.size());
    for (const auto& r : corpus) strata.push_back(r.label);
    const auto in_train = split_units(strata, spec, spec.stratified);
    for (std::size_t i = 0; i < corpus.size(); ++i) (in_train[i] ? out.train : out.test).push_back(i);
    return out;
  }

  // Question ids in first-appearance order; stratum = rounded mean label.
  std::vector<std::string> ids;
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // id -> (count, positives)
  for (const auto& r : corpus) {
    auto [it, inserted] = stats.try_emplace(r.id, 0, 0);
    if (inserted) ids.push_back(r.id);
    ++it->second.first;
    it->second.second += static_cast<std::size_t>(r.label);
  }
  if (ids.size() < 2) throw DegenerateDataError("aligned split needs at least two distinct question ids");
  std::vector<int> strata;
  for (const auto& id : ids) {
    const auto [count, positives] = stats.at(id);
    strata.push_back(2 * positives >= count ? 1 : 0);
  }
  const bool mixed = std::find(strata.begin(), strata.end(), 0) != strata.end() &&
                     std::find(strata.begin(), strata.end(), 1) != strata.end();
  const auto in_train = split_units(strata, spec, spec.stratified && mixed);
  std::map<std::string, bool> side;
  for (std::size_t k = 0; k < ids.size(); ++k) side[ids[k]] = in_train[k];
  for (std::size_t i = 0; i < corpus.size(); ++i) (side.at(corpus[i].id) ? out.train : out.test).push_back(i);
  return out;
}

std::vector<std::string> ids_of(const Corpus& corpus, std::span<const std::size_t> indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(corpus.at(i).id);
  return out;
}

std::vector<BalanceRow> class_balance(const Corpus& corpus, GroupBy group_by) {
  std::map<std::string, BalanceRow> rows;
  for (const auto& r : corpus) {
    const std::string& key = group_by == GroupBy::model ? r.model : r.dataset;
    BalanceRow& row = rows[key];
    row.key = key;
    ++row.n_total;
    ++(r.label == 1 ? row.n_label1 : row.n_label0);
  }
  std::vector<BalanceRow> out;
  for (auto& [key, row] : rows) out.push_back(row);
  return out;
}

std::string class_balance_csv(const std::vector<BalanceRow>& rows) {
  std::string out = "group,n_total,n_label0,n_label1\n";
  for (const auto& row : rows) {
    out += csv_join({row.key, std::to_string(row.n_total), std::to_string(row.n_label0),
                     std::to_string(row.n_label1)});
    out += '\n';
  }
  return out;
}

}  // namespace stylo
