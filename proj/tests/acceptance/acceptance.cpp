// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"
#include "fuzz.hpp"
#include "qp_oracle.hpp"
#include "stylo/annotator.hpp"
#include "stylo/experiments.hpp"
#include "stylo/features.hpp"
#include "stylo/stats.hpp"
#include "stylo/svm.hpp"
#include "stylo/synthetic.hpp"
#include "stylo/util.hpp"

namespace fs = std::filesystem;
using namespace stylo;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_time(Outcome& o, double elapsed, double limit) {
  if (elapsed >= limit) o.fail("took " + format_double(elapsed) + " s, limit " + format_double(limit) + " s");
}

// Box and equality constraints of a trained model.
bool kkt_feasible(const SvmModel& m, std::string* why) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dual_coefficients.size(); ++i) {
    const double coef = m.dual_coefficients[i];
    const double alpha = std::abs(coef);
    const double bound = m.class_c[coef > 0 ? 1 : 0];
    if (alpha < 0.0 || alpha > bound * (1 + 1e-12)) {
      *why = "alpha " + format_double(alpha) + " outside [0, " + format_double(bound) + "]";
      return false;
    }
    sum += coef;
  }
  if (std::abs(sum) > 1e-6) {
    *why = "|sum alpha y| = " + format_double(std::abs(sum));
    return false;
  }
  return true;
}

std::vector<SvmModel>& trained_models() {
  static std::vector<SvmModel> models;
  return models;
}

// --- 1 ---------------------------------------------------------------------

Outcome fixtures_exact() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto& registry = FeatureRegistry::builtin();
  const auto& names = testing::fixture_feature_names();
  if (names.size() != 40 || std::set<std::string>(names.begin(), names.end()).size() != 40) {
    o.fail("designated list is not 40 unique names");
  }
  for (const auto& f : testing::fixtures()) {
    const auto doc = annotate(f.text);
    if (doc.tokens.size() != f.tokens.size()) {
      o.fail("'" + f.text + "': token count " + std::to_string(doc.tokens.size()));
      continue;
    }
    for (std::size_t i = 0; i < f.tokens.size(); ++i) {
      const auto& got = doc.tokens[i];
      const auto& want = f.tokens[i];
      if (got.surface != want.surface || got.pos != want.pos || got.lemma != want.lemma ||
          got.syllable_count != want.syllables || got.is_stopword != want.stop) {
        o.fail("'" + f.text + "': token " + std::to_string(i) + " '" + got.surface + "' " +
               std::string(upos_name(got.pos)) + " " + got.lemma);
      }
    }
    if (doc.sentences.size() != f.sentences) o.fail("'" + f.text + "': sentence count");
    std::vector<EntityType> types;
    for (const auto& e : doc.entities) types.push_back(e.type);
    if (types != f.entities) o.fail("'" + f.text + "': entities");

    const auto values = registry.extract(doc);
    const auto expected = testing::expected_features(f);
    for (const auto& name : names) {
      const auto idx = registry.index_of(name);
      if (!idx) {
        o.fail("feature '" + name + "' missing from the registry");
        continue;
      }
      const double want = expected.at(name);
      if (values[*idx] != want) {
        o.fail("'" + f.text + "': " + name + " = " + format_double(values[*idx]) + ", expected " +
               format_double(want));
      }
    }
  }
  check_time(o, seconds_since(start), 1.0);
  return o;
}

// --- 2 ---------------------------------------------------------------------

// Category size N recomputed from the annotation, independent of the extractor.
double category_total(const std::string& category, const AnnotatedDocument& doc) {
  if (category == "ent:ALL") return static_cast<double>(doc.entities.size());
  double n = 0;
  for (const auto& t : doc.tokens) {
    const bool word = t.pos != Upos::PUNCT;
    if (category.rfind("pos:", 0) == 0) {
      n += upos_name(t.pos) == category.substr(4) ? 1 : 0;
    } else if (category == "content") {
      n += (t.pos == Upos::NOUN || t.pos == Upos::VERB || t.pos == Upos::ADJ || t.pos == Upos::ADV ||
            t.pos == Upos::PROPN)
               ? 1
               : 0;
    } else if (category == "stop") {
      n += word && t.is_stopword ? 1 : 0;
    } else if (category == "word") {
      n += word ? 1 : 0;
    } else {
      return -1;
    }
  }
  return n;
}

struct Triple {
  std::string category;
  std::size_t simple = 0, root = 0, corrected = 0;
  int seen = 0;
};

Outcome registry_identities() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto& registry = FeatureRegistry::builtin();
  const auto names = registry.names();
  if (names.size() != 220) o.fail("registry has " + std::to_string(names.size()) + " names");
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) o.fail("duplicate names");

  // Group simple/root/corrected formulas by category: variation(K,C) and
  // ttr(K,lemma|surface) whose N is the word count.
  std::map<std::string, Triple> triples;
  for (std::size_t i = 0; i < registry.specs().size(); ++i) {
    const auto& formula = registry.specs()[i].formula;
    std::string kind, category;
    if (formula.rfind("variation(", 0) == 0) {
      const auto comma = formula.find(',');
      kind = formula.substr(10, comma - 10);
      category = formula.substr(comma + 1, formula.size() - comma - 2);
    } else if (formula.rfind("ttr(", 0) == 0) {
      const auto comma = formula.find(',');
      kind = formula.substr(4, comma - 4);
      category = "word|" + formula.substr(comma + 1, formula.size() - comma - 2);
    } else {
      continue;
    }
    auto& t = triples[category];
    t.category = category;
    if (kind == "simple") t.simple = i, t.seen |= 1;
    if (kind == "root") t.root = i, t.seen |= 2;
    if (kind == "corrected") t.corrected = i, t.seen |= 4;
  }
  std::size_t complete = 0;
  for (const auto& [key, t] : triples) complete += t.seen == 7 ? 1 : 0;
  if (complete < 20) o.fail("only " + std::to_string(complete) + " simple/root/corrected triples");

  std::mt19937_64 rng(20240501);
  std::size_t checked = 0;
  for (int d = 0; d < 1000 && o.pass; ++d) {
    const auto doc = annotate(testing::random_document(rng));
    const auto v = registry.extract(doc);
    for (const auto& [key, t] : triples) {
      if (t.seen != 7) continue;
      const std::string category = key.rfind("word|", 0) == 0 ? "word" : key;
      const double n = category_total(category, doc);
      if (n < 0) {
        o.fail("unhandled category " + category);
        break;
      }
      const double root_expected = v[t.simple] * std::sqrt(n);
      const double corrected_expected = v[t.root] / std::sqrt(2.0);
      if (std::abs(v[t.root] - root_expected) > 1e-12 || std::abs(v[t.corrected] - corrected_expected) > 1e-12) {
        o.fail("identity broken for " + key + " on fuzz document " + std::to_string(d));
        break;
      }
      ++checked;
    }
  }
  check_time(o, seconds_since(start), 10.0);
  if (o.pass) o.detail = std::to_string(checked) + " identity checks";
  return o;
}

// --- 3 ---------------------------------------------------------------------

FeatureMatrix to_matrix(const std::vector<std::vector<double>>& x, const std::vector<int>& labels) {
  FeatureMatrix m;
  for (std::size_t k = 0; k < x.front().size(); ++k) m.column_names.push_back("x" + std::to_string(k));
  for (std::size_t i = 0; i < x.size(); ++i) m.append_row("r" + std::to_string(i), labels[i], x[i]);
  return m;
}

Outcome svm_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const double cs[] = {0.5, 1.0, 10.0};
  double worst_gap = 0.0;
  std::size_t test_points = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const std::size_t n = 4 + rng() % 17;
    const std::size_t d = 1 + rng() % 3;
    testing::QpProblem p;
    p.c = cs[instance % 3];
    p.gamma = 1.0 / static_cast<double>(d);
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x(d);
      for (auto& v : x) v = coord(rng);
      p.x.push_back(x);
      labels.push_back(i < 2 ? static_cast<int>(i) : static_cast<int>(rng() % 2));
      p.y.push_back(labels.back() == 1 ? 1.0 : -1.0);
    }
    const auto oracle = testing::solve_qp(p);

    TrainConfig config;
    config.c = p.c;
    config.gamma = p.gamma;
    config.kkt_tolerance = 1e-6;
    const auto model = train(to_matrix(p.x, labels), labels, config);
    trained_models().push_back(model);

    const double gap = std::abs(dual_objective(model) - oracle.objective);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-3) {
      o.fail("instance " + std::to_string(instance) + ": dual " + format_double(dual_objective(model)) +
             " vs oracle " + format_double(oracle.objective));
    }
    for (int t = 0; t < 20; ++t) {
      std::vector<double> x(d);
      for (auto& v : x) v = coord(rng);
      const int ours = predict(model, x).label;
      const int theirs = testing::qp_decision(p, oracle, x) > 0 ? 1 : 0;
      ++test_points;
      if (ours != theirs) o.fail("instance " + std::to_string(instance) + ": prediction differs from oracle");
    }
  }
  check_time(o, seconds_since(start), 120.0);
  if (o.pass) {
    o.detail = "worst dual gap " + format_double(worst_gap) + ", " + std::to_string(test_points) + " test points";
  }
  return o;
}

// --- 4 ---------------------------------------------------------------------

Outcome kkt_and_xor() {
  Outcome o;
  const std::vector<std::vector<double>> x = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> labels = {0, 0, 1, 1};
  TrainConfig config;
  config.c = 10;
  config.gamma = 1;
  const auto xor_model = train(to_matrix(x, labels), labels, config);
  trained_models().push_back(xor_model);
  if (accuracy(xor_model, to_matrix(x, labels), labels) != 1.0) o.fail("XOR training accuracy below 1");

  std::size_t checked = 0;
  for (const auto& m : trained_models()) {
    std::string why;
    if (!kkt_feasible(m, &why)) o.fail(why);
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " models feasible";
  return o;
}

// --- 5 ---------------------------------------------------------------------

Outcome statistics() {
  Outcome o;
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  // Closed form: sxy = 4, sxx = syy = 5, r = 4/5.
  const auto r = pearson_r(x, y);
  if (std::abs(r.r - 0.8) > 1e-12 || r.degenerate) o.fail("pearson " + format_double(r.r));

  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = 1 + rng() % 200;
    std::vector<double> samples(n);
    const int shape = static_cast<int>(rng() % 4);
    std::normal_distribution<double> normal(0.0, 1.0 + static_cast<double>(rng() % 50));
    std::uniform_int_distribution<int> small(0, 5);
    for (auto& v : samples) {
      switch (shape) {
        case 0: v = normal(rng); break;
        case 1: v = static_cast<double>(small(rng)); break;
        case 2: v = std::exp(normal(rng) / 10.0); break;
        default: v = 42.0; break;
      }
    }
    const auto curve = kde(samples);
    const double integral = trapezoid_integral(curve.grid, curve.density);
    worst = std::max(worst, std::abs(integral - 1.0));
    if (std::abs(integral - 1.0) > 0.01) o.fail("KDE integral " + format_double(integral) + " on set " + std::to_string(s));
  }

  FeatureMatrix m;
  m.column_names = {"a", "b", "c"};
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> row = {u(rng), u(rng) * 1e-6, std::round(u(rng))};
    m.append_row("r" + std::to_string(i), i % 2, row);
  }
  const auto scaled = minmax_apply(minmax_fit(m), m);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto col = scaled.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    if (*lo != 0.0 || *hi != 1.0) o.fail("minmax column " + m.column_names[j] + " not on [0, 1]");
  }
  if (o.pass) o.detail = "worst KDE integral error " + format_double(worst);
  return o;
}

// --- 6, 7, 8, 9 --------------------------------------------------------------

Dataset synthetic_dataset(const SyntheticConfig& config) {
  return extract_dataset(generate_synthetic(config), FeatureRegistry::builtin(), Annotator::builtin(),
                         default_thread_count());
}

HarnessConfig harness() {
  HarnessConfig h;
  h.split.train_fraction = 0.8;
  h.train.c = 1.0;
  h.threads = default_thread_count();
  return h;
}

Outcome point_b() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SyntheticConfig config;
  config.seed = 1;
  const auto result = run_point_b(synthetic_dataset(config), harness());
  std::string accs;
  for (const auto& g : result.groups) {
    trained_models().push_back(g.model);
    accs += " " + g.group + "=" + format_double(g.evaluation.accuracy);
    if (g.evaluation.accuracy < 0.90) o.fail(g.group + " accuracy " + format_double(g.evaluation.accuracy));
    if (g.n_train + g.n_test != 800) o.fail(g.group + " has " + std::to_string(g.n_train + g.n_test) + " records");
  }
  if (result.groups.size() != 4) o.fail("expected 4 groups");
  check_time(o, seconds_since(start), 60.0);
  if (o.pass) o.detail = accs.substr(1);
  return o;
}

Outcome point_c() {
  Outcome o;
  SyntheticConfig config;
  config.seed = 2;
  const auto m = run_point_c(synthetic_dataset(config), harness());
  double worst = 0.0;
  for (std::size_t c = 0; c < m.column_labels.size(); ++c) {
    std::optional<double> own;
    for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
      if (m.row_labels[r] == m.column_labels[c]) own = m.cells[r][c].accuracy;
    }
    if (!own) {
      o.fail("no in-domain row for " + m.column_labels[c]);
      continue;
    }
    for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
      if (m.cells[r][c].in_domain) continue;
      const double gap = std::abs(m.cells[r][c].accuracy - *own);
      worst = std::max(worst, gap);
      if (gap > 0.10) o.fail(m.row_labels[r] + " -> " + m.column_labels[c] + " differs by " + format_double(gap));
    }
  }
  if (o.pass) o.detail = "worst cross-cell gap " + format_double(worst);
  return o;
}

Outcome point_d() {
  Outcome o;
  SyntheticConfig a;
  a.groups = {"davinci"};
  a.group_adjective_shift = {0.0};
  a.dataset = "alpha";
  a.seed = 3;
  SyntheticConfig b = a;
  b.dataset = "beta";
  b.seed = 4;
  b.inverted = true;
  const auto m = run_point_d(synthetic_dataset(a), "alpha", synthetic_dataset(b), "beta", harness());
  std::string cells;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& cell = m.cells[r][c];
      cells += " " + m.row_labels[r] + "->" + m.column_labels[c] + "=" + format_double(cell.accuracy);
      if (cell.in_domain && cell.accuracy <= 0.90) o.fail("in-domain cell " + format_double(cell.accuracy));
      if (!cell.in_domain && cell.accuracy >= 0.50) o.fail("cross cell " + format_double(cell.accuracy));
    }
  }
  if (o.pass) o.detail = cells.substr(1);
  return o;
}

Outcome selection() {
  Outcome o;
  SyntheticConfig config;
  config.groups = {"ada"};
  config.group_adjective_shift = {0.0};
  config.reuse_shift = 0.0;
  config.numeral_shift = 3.0;
  config.seed = 5;
  const auto data = synthetic_dataset(config);
  auto h = harness();
  h.preprocessing.minmax = true;
  SelectionConfig sc;
  sc.tolerance = 0.001;
  sc.threads = h.threads;
  const auto run = run_selection(data, h, sc, 0.25);
  const auto& r = run.result;
  if (r.ordered_features.size() > 5) o.fail(std::to_string(r.ordered_features.size()) + " features selected");
  double previous = r.baseline_accuracy;
  for (std::size_t k = 0; k < r.accuracy_path.size(); ++k) {
    if (r.accuracy_path[k] - previous < 0.001) o.fail("step " + std::to_string(k + 1) + " improved < 0.001");
    previous = r.accuracy_path[k];
  }

  // All-features reference on the same split.
  const auto parts = split(data.corpus, h.split);
  const auto train_side = data.subset(parts.train);
  const auto test_side = data.subset(parts.test);
  const auto full = train_pipeline(train_side.matrix, h.train, Preprocessing{true, std::nullopt});
  const double full_acc = accuracy(full, test_side.matrix, test_side.matrix.labels);
  trained_models().push_back(full);
  trained_models().push_back(run.model);
  if (std::abs(run.test.accuracy - full_acc) > 0.02) {
    o.fail("selected " + format_double(run.test.accuracy) + " vs all features " + format_double(full_acc));
  }
  if (o.pass) {
    std::string feats;
    for (const auto& f : r.ordered_features) feats += (feats.empty() ? "" : ",") + f;
    o.detail = std::to_string(r.ordered_features.size()) + " features (" + feats + "), accuracy " +
               format_double(run.test.accuracy) + " vs " + format_double(full_acc);
  }
  return o;
}

// --- 10 ----------------------------------------------------------------------

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << "stylo";
  if (code != 0) {
    for (const auto& a : args) std::cerr << ' ' << a;
    std::cerr << "\n" << err.str();
  }
  return code;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = read_file(e.path().string());
  }
  return files;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "stylo-acceptance-determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string corpus = (root / "corpus.jsonl").string();
  const std::string corpus_b = (root / "corpus_b.jsonl").string();
  if (cli({"synth", "--out", corpus, "--seed", "11", "--per-group", "60", "--groups", "ada,babbage,curie"}) != 0 ||
      cli({"synth", "--out", corpus_b, "--seed", "12", "--per-group", "60", "--groups", "ada,babbage,curie",
           "--dataset-name", "other", "--inverted"}) != 0) {
    o.fail("synth failed");
    return o;
  }
  const std::string corpus_text = read_file(corpus);
  const std::vector<std::vector<std::string>> commands = {
      {"extract", "--corpus", corpus},
      {"profile", "--corpus", corpus, "--features", "total_number_of_numerals,simple_nouns_variation"},
      {"rank", "--corpus", corpus, "--top", "5", "--bottom", "5"},
      {"train", "--corpus", corpus, "--seed", "3"},
      {"train", "--corpus", corpus, "--seed", "3", "--pooled", "--minmax", "--format", "json"},
      {"cross-model", "--corpus", corpus, "--seed", "4"},
      {"cross-dataset", "--corpus", corpus, "--corpus-b", corpus_b, "--seed", "5"},
      {"optimize", "--corpus", corpus, "--corpus-b", corpus_b, "--seed", "6"},
      {"select", "--corpus", corpus, "--seed", "7", "--minmax", "--max-features", "3"},
  };
  std::size_t compared = 0;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::map<std::string, std::string> first;
    for (int run = 0; run < 2; ++run) {
      const std::string out = (root / ("run" + std::to_string(k) + "_" + std::to_string(run))).string();
      auto args = commands[k];
      args.insert(args.end(), {"--out-dir", out, "--threads", run == 0 ? "1" : "3"});
      if (cli(args) != 0) {
        o.fail(commands[k][0] + " failed");
        break;
      }
      const auto files = tree(out);
      if (run == 0) {
        first = files;
        const std::string again = (root / ("rerun" + std::to_string(k))).string();
        if (cli({"rerun", "--config", out + "/report.json", "--out-dir", again}) != 0) {
          o.fail(commands[k][0] + " rerun failed");
        } else if (tree(again) != files) {
          o.fail(commands[k][0] + ": rerun from the config snapshot differs");
        }
      } else if (files != first) {
        o.fail(commands[k][0] + ": repeated run differs");
      }
      compared += files.size();
    }
  }
  // Evaluating a saved model is a harness command too.
  const std::string model = (root / "run3_0/models/ada.json").string();
  std::string eval_first;
  for (int run = 0; run < 2; ++run) {
    const std::string out = (root / ("eval" + std::to_string(run))).string();
    if (cli({"eval", "--corpus", corpus, "--model-file", model, "--model", "ada", "--out-dir", out}) != 0) {
      o.fail("eval failed");
      break;
    }
    const auto files = tree(out);
    std::string joined;
    for (const auto& [k, v] : files) joined += k + "\n" + v;
    if (run == 0) eval_first = joined;
    else if (joined != eval_first) o.fail("eval: repeated run differs");
  }
  if (read_file(corpus) != corpus_text) o.fail("input corpus was modified");
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(compared) + " files compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"feature fixtures", fixtures_exact},
      {"registry and variation identities", registry_identities},
      {"SVM vs QP oracle", svm_oracle},
      {"KKT feasibility and XOR", kkt_and_xor},
      {"statistics", statistics},
      {"synthetic per-group classification", point_b},
      {"cross-model matrix", point_c},
      {"cross-dataset collapse", point_d},
      {"forward selection", selection},
      {"determinism", determinism},
  };
  // KKT is checked over every model trained by the criteria, so it runs last.
  const std::vector<std::size_t> order = {0, 1, 2, 4, 5, 6, 7, 8, 9, 3};
  std::vector<Outcome> outcomes(criteria.size());
  for (const std::size_t i : order) {
    const auto start = std::chrono::steady_clock::now();
    try {
      outcomes[i] = criteria[i].second();
    } catch (const std::exception& e) {
      outcomes[i].fail(std::string("exception: ") + e.what());
    }
    outcomes[i].detail += (outcomes[i].detail.empty() ? "" : "; ") + format_double(std::round(seconds_since(start) * 100) / 100) + " s";
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::printf("%s %2zu %s: %s\n", outcomes[i].pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcomes[i].detail.c_str());
    failures += outcomes[i].pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
