#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "stylo/annotator.hpp"
#include "stylo/collector.hpp"
#include "stylo/error.hpp"
#include "stylo/experiments.hpp"
#include "stylo/features.hpp"
#include "stylo/synthetic.hpp"
#include "stylo/tagger.hpp"
#include "stylo/util.hpp"
#include "stylo/version.hpp"

namespace stylo::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    Options, command, corpus, corpus_b, out_dir, out, manifest, model_file, features, seed, c, gamma, split,
    tolerance, format, threads, no_stratify, minmax, class_weighted, model_filter, dataset_filter, top_k, bottom_k,
    max_features, holdout, lowered_c, cross_on_test_split, pooled, grid_size, questions, endpoint, prompt_template,
    max_tokens, concurrency, max_attempts, timeout_seconds, prompt_field, max_tokens_field, reply_pointer,
    api_key_env, dataset_name, model_name, groups, responses_per_group, inverted, numeral_shift, reuse_shift,
    noise_fraction, positive_rate, tagged, epochs, tagger_holdout)

namespace {

using nlohmann::json;

const std::vector<std::string> kHarnessVerbs = {"extract", "profile",       "rank",          "train", "eval",
                                                "cross-model", "cross-dataset", "optimize", "select"};

// Keys persisted in the snapshot of each verb.
std::vector<std::string> snapshot_keys(const std::string& command) {
  std::vector<std::string> keys = {"command", "corpus", "manifest", "model_filter", "dataset_filter", "format"};
  auto add = [&](std::initializer_list<const char*> more) { keys.insert(keys.end(), more.begin(), more.end()); };
  const bool trains = command == "train" || command == "cross-model" || command == "cross-dataset" ||
                      command == "optimize" || command == "select";
  if (command != "eval") add({"features", "seed"});
  if (trains) add({"c", "gamma", "split", "no_stratify", "class_weighted"});
  if (trains && command != "optimize") add({"minmax"});
  if (command == "profile") add({"grid_size"});
  if (command == "rank") add({"top_k", "bottom_k"});
  if (command == "train") add({"pooled"});
  if (command == "eval") add({"model_file"});
  if (command == "cross-dataset") add({"corpus_b", "cross_on_test_split"});
  if (command == "optimize") add({"corpus_b", "tolerance", "max_features", "holdout", "lowered_c"});
  if (command == "select") add({"tolerance", "max_features", "holdout"});
  return keys;
}

std::string snapshot(const Options& o) {
  const json all = o;
  json::object_t picked;
  for (const auto& key : snapshot_keys(o.command)) picked[key] = all.at(key);
  return json(picked).dump();
}

unsigned thread_count(const Options& o) { return o.threads == 0 ? default_thread_count() : o.threads; }

TableFormat table_format(const Options& o) {
  if (o.format == "csv") return TableFormat::csv;
  if (o.format == "json") return TableFormat::json;
  throw ValidationError("--format must be csv or json");
}

TrainConfig train_config(const Options& o) {
  if (!(o.c > 0.0)) throw ValidationError("--c must be > 0");
  TrainConfig t;
  t.c = o.c;
  t.seed = o.seed;
  t.class_weighted = o.class_weighted;
  if (o.gamma != "scale") {
    double g = 0.0;
    try {
      g = parse_double(o.gamma);
    } catch (const Error&) {
      throw ValidationError("--gamma must be 'scale' or a positive number, got '" + o.gamma + "'");
    }
    if (!(g > 0.0)) throw ValidationError("--gamma must be 'scale' or a positive number, got '" + o.gamma + "'");
    t.gamma = g;
  }
  return t;
}

HarnessConfig harness_config(const Options& o) {
  if (!(o.split > 0.0 && o.split < 1.0)) throw ValidationError("--split must be strictly between 0 and 1");
  HarnessConfig h;
  h.split.train_fraction = o.split;
  h.split.seed = o.seed;
  h.split.stratified = !o.no_stratify;
  h.train = train_config(o);
  h.preprocessing.minmax = o.minmax;
  h.threads = thread_count(o);
  return h;
}

SelectionConfig selection_config(const Options& o) {
  if (!(o.tolerance >= 0.0)) throw ValidationError("--tolerance must be >= 0");
  SelectionConfig s;
  s.tolerance = o.tolerance;
  if (o.max_features > 0) s.cap = o.max_features;
  s.threads = thread_count(o);
  return s;
}

FeatureRegistry registry_for(const Options& o) {
  return o.manifest.empty() ? FeatureRegistry::builtin() : FeatureRegistry::load(o.manifest);
}

Corpus load_filtered(const std::string& path, const Options& o) {
  if (path.empty()) throw ValidationError("--corpus is required");
  Corpus corpus = load_corpus(path);
  if (o.model_filter.empty() && o.dataset_filter.empty()) return corpus;
  Corpus kept;
  for (auto& r : corpus) {
    if (!o.model_filter.empty() && r.model != o.model_filter) continue;
    if (!o.dataset_filter.empty() && r.dataset != o.dataset_filter) continue;
    kept.push_back(std::move(r));
  }
  if (kept.empty()) throw ValidationError("no records in '" + path + "' match the --model/--dataset filter");
  return kept;
}

Dataset dataset_for(Corpus corpus, const Options& o, const FeatureRegistry& registry, bool restrict_features) {
  Dataset d = extract_dataset(std::move(corpus), registry, Annotator::builtin(), thread_count(o));
  if (restrict_features && !o.features.empty()) d.matrix = d.matrix.take_columns(resolve_features(d.matrix, o.features));
  return d;
}

std::string corpus_name(const Corpus& corpus, const std::string& path) {
  const auto datasets = distinct_datasets(corpus);
  if (datasets.size() == 1) return datasets.front();
  return std::filesystem::path(path).stem().string();
}

Table balance_table(const Corpus& corpus) {
  Table t{"class_balance", {"group", "n_total", "n_label0", "n_label1"}, {}};
  for (const auto& row : class_balance(corpus, GroupBy::model)) {
    t.rows.push_back({row.key, std::to_string(row.n_total), std::to_string(row.n_label0),
                      std::to_string(row.n_label1)});
  }
  return t;
}

Table selection_table(const SelectionResult& result) {
  Table t{"selection", {"step", "feature", "holdout_accuracy"}, {}};
  for (std::size_t i = 0; i < result.ordered_features.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), result.ordered_features[i], format_double(result.accuracy_path[i])});
  }
  return t;
}

ReportBundle run_extract(const Options& o) {
  const auto registry = registry_for(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  ReportBundle b;
  b.experiment_id = "extract";
  b.tables.push_back(balance_table(d.corpus));
  b.add_file("features.csv", to_csv(d.matrix));
  return b;
}

ReportBundle run_profile(const Options& o) {
  const auto registry = registry_for(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, false);
  KdeOptions kde;
  kde.grid_size = o.grid_size;
  return point_a_report(run_point_a(d, o.features, kde, thread_count(o)));
}

ReportBundle run_rank_cmd(const Options& o) {
  const auto registry = registry_for(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  return rank_report(run_rank(d, o.top_k, o.bottom_k));
}

ReportBundle run_train(const Options& o) {
  const auto registry = registry_for(o);
  const HarnessConfig h = harness_config(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  if (!o.pooled) {
    ReportBundle b = point_b_report(run_point_b(d, h));
    b.tables.push_back(balance_table(d.corpus));
    return b;
  }
  const Split s = group_split(d.corpus, h.split);
  const FeatureMatrix train_side = d.matrix.take_rows(s.train);
  const FeatureMatrix test_side = d.matrix.take_rows(s.test);
  if (std::set<int>(train_side.labels.begin(), train_side.labels.end()).size() < 2) {
    throw DegenerateDataError("train split contains a single class");
  }
  const SvmModel model = train_pipeline(train_side, h.train, h.preprocessing);
  ReportBundle b;
  b.experiment_id = "train";
  b.tables.push_back(evaluation_table("evaluation", {{"pooled", evaluate(model, test_side, test_side.labels)}}));
  b.tables.push_back(balance_table(d.corpus));
  b.add_file("models/pooled.json", model_to_json(model));
  return b;
}

ReportBundle run_eval(const Options& o) {
  if (o.model_file.empty()) throw ValidationError("--model-file is required");
  const SvmModel model = load_model(o.model_file);
  const auto registry = registry_for(o);
  if (model.registry_version != registry.version()) {
    throw ValidationError("model was trained with feature registry '" + model.registry_version +
                          "', current registry is '" + registry.version() + "'");
  }
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, false);
  const auto predictions = predict_all(model, d.matrix);
  ReportBundle b;
  b.experiment_id = "eval";
  b.tables.push_back(evaluation_table("evaluation", {{"all", evaluate(model, d.matrix, d.matrix.labels)}}));
  Table p{"predictions", {"id", "model", "label", "predicted", "decision_value"}, {}};
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    p.rows.push_back({d.corpus[i].id, d.corpus[i].model, std::to_string(d.corpus[i].label),
                      std::to_string(predictions[i].label), format_double(predictions[i].decision_value)});
  }
  b.tables.push_back(std::move(p));
  return b;
}

ReportBundle run_cross_model(const Options& o) {
  const auto registry = registry_for(o);
  const HarnessConfig h = harness_config(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  ReportBundle b = cross_matrix_report("point_c", run_point_c(d, h));
  b.notes.push_back("single-group rows reuse the question-aligned split of the same seed");
  return b;
}

ReportBundle run_cross_dataset(const Options& o) {
  if (o.corpus_b.empty()) throw ValidationError("--corpus-b is required");
  const auto registry = registry_for(o);
  const HarnessConfig h = harness_config(o);
  const Dataset a = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  const Dataset b = dataset_for(load_filtered(o.corpus_b, o), o, registry, true);
  std::string name_a = corpus_name(a.corpus, o.corpus);
  std::string name_b = corpus_name(b.corpus, o.corpus_b);
  if (name_a == name_b) {
    name_a = "A:" + name_a;
    name_b = "B:" + name_b;
  }
  ReportBundle bundle = cross_matrix_report("point_d", run_point_d(a, name_a, b, name_b, h, {o.cross_on_test_split}));
  bundle.notes.push_back(o.cross_on_test_split ? "cross cells evaluated on the other corpus's test split"
                                               : "cross cells evaluated on the full other corpus");
  return bundle;
}

ReportBundle run_optimize_cmd(const Options& o) {
  const auto registry = registry_for(o);
  const HarnessConfig h = harness_config(o);
  Corpus corpus = load_filtered(o.corpus, o);
  if (!o.corpus_b.empty()) {
    const auto first = distinct_datasets(corpus);
    Corpus more = load_filtered(o.corpus_b, o);
    for (const auto& name : distinct_datasets(more)) {
      if (std::find(first.begin(), first.end(), name) != first.end()) {
        throw ValidationError("dataset '" + name + "' appears in both --corpus and --corpus-b");
      }
    }
    corpus.insert(corpus.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  const Dataset all = dataset_for(std::move(corpus), o, registry, true);
  std::vector<std::pair<std::string, Dataset>> columns;
  for (const auto& name : distinct_datasets(all.corpus)) {
    columns.emplace_back(name, all.subset(records_where_dataset(all.corpus, name)));
  }
  OptimizeOptions options;
  options.lowered_c = o.lowered_c;
  options.holdout_fraction = o.holdout;
  options.selection = selection_config(o);
  return optimize_report(run_optimize(columns, h, options));
}

ReportBundle run_select_cmd(const Options& o) {
  const auto registry = registry_for(o);
  const HarnessConfig h = harness_config(o);
  const Dataset d = dataset_for(load_filtered(o.corpus, o), o, registry, true);
  const SelectionRun run = run_selection(d, h, selection_config(o), o.holdout);
  ReportBundle b;
  b.experiment_id = "select";
  b.tables.push_back(selection_table(run.result));
  b.tables.push_back(evaluation_table("evaluation", {{"selected", run.test}}));
  b.add_file("models/selected.json", model_to_json(run.model));
  b.notes.push_back("stop reason: " + std::string(stop_reason_name(run.result.stop_reason)));
  b.notes.push_back("majority-class holdout accuracy: " + format_double(run.result.baseline_accuracy));
  if (run.result.ordered_features.empty()) b.notes.push_back("no feature accepted; the model uses all features");
  return b;
}

int run_collect(const Options& o, std::ostream& out) {
  if (o.questions.empty()) throw ValidationError("--questions is required");
  if (o.endpoint.empty()) throw ValidationError("--endpoint is required");
  if (o.out.empty()) throw ValidationError("--out is required");
  const auto questions = parse_questions(read_file(o.questions));
  CollectorConfig config;
  config.endpoint_url = o.endpoint;
  config.prompt_template = o.prompt_template;
  config.max_tokens = o.max_tokens;
  config.max_concurrent_requests = o.concurrency;
  config.max_attempts = o.max_attempts;
  config.timeout_seconds = o.timeout_seconds;
  config.prompt_field = o.prompt_field;
  config.max_tokens_field = o.max_tokens_field;
  config.reply_pointer = o.reply_pointer;
  config.api_key_env = o.api_key_env;
  config.dataset = o.dataset_name;
  config.model = o.model_name;
  const auto responses = collect_responses(questions, config);
  write_file(o.out, collected_to_jsonl(responses));
  const auto failed = static_cast<std::size_t>(
      std::count_if(responses.begin(), responses.end(), [](const auto& r) { return r.error.has_value(); }));
  out << "collected " << responses.size() - failed << "/" << responses.size() << " responses into " << o.out
      << "\n";
  if (failed > 0) throw IoError(std::to_string(failed) + " of " + std::to_string(responses.size()) +
                                " requests failed; see the error fields in " + o.out);
  return 0;
}

int run_synth(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ValidationError("--out is required");
  SyntheticConfig config;
  config.groups = o.groups;
  config.group_adjective_shift.clear();
  for (std::size_t g = 0; g < o.groups.size(); ++g) config.group_adjective_shift.push_back(0.5 * static_cast<double>(g));
  config.responses_per_group = o.responses_per_group;
  if (!o.dataset_name.empty()) config.dataset = o.dataset_name;
  config.seed = o.seed;
  config.positive_rate = o.positive_rate;
  config.numeral_shift = o.numeral_shift;
  config.reuse_shift = o.reuse_shift;
  config.noise_fraction = o.noise_fraction;
  config.inverted = o.inverted;
  const Corpus corpus = generate_synthetic(config);
  save_corpus(corpus, o.out);
  out << "wrote " << corpus.size() << " records to " << o.out << "\n";
  return 0;
}

int run_train_tagger(const Options& o, std::ostream& out) {
  if (o.tagged.empty()) throw ValidationError("--tagged is required");
  if (o.out.empty()) throw ValidationError("--out is required");
  TaggerTrainingOptions options;
  options.epochs = o.epochs;
  options.seed = o.seed;
  options.holdout_fraction = o.tagger_holdout;
  const auto result = train_tagger_file(o.tagged, options);
  result.model.save(o.out);
  out << "trained on " << result.train_sentences << " sentences";
  if (result.holdout_accuracy) {
    out << "; holdout token accuracy " << format_double(*result.holdout_accuracy) << " over "
        << result.holdout_sentences << " sentences";
  }
  out << "\nwrote " << o.out << "\n";
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--corpus", o.corpus, "Corpus JSONL file")->required();
  sub->add_option("--out-dir", o.out_dir, "Report directory")->capture_default_str();
  sub->add_option("--features", o.features, "Feature names (comma-separated or repeated)")->delimiter(',');
  sub->add_option("--seed", o.seed, "Seed for splits and training")->capture_default_str();
  sub->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--model", o.model_filter, "Keep only records of this model");
  sub->add_option("--dataset", o.dataset_filter, "Keep only records of this dataset");
  sub->add_option("--manifest", o.manifest, "Feature manifest (default: built-in)");
}

void add_training(CLI::App* sub, Options& o) {
  sub->add_option("--c", o.c, "SVM regularization parameter")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "RBF width: 'scale' or a positive number")->capture_default_str();
  sub->add_option("--split", o.split, "Train fraction")->capture_default_str();
  sub->add_flag("--no-stratify", o.no_stratify, "Plain random split instead of label-stratified");
  sub->add_flag("--class-weighted", o.class_weighted, "Scale C per class by inverse frequency");
}

void add_selection(CLI::App* sub, Options& o) {
  sub->add_option("--tolerance", o.tolerance, "Minimum accuracy gain per accepted feature")->capture_default_str();
  sub->add_option("--max-features", o.max_features, "Stop after this many features (0 = no cap)");
  sub->add_option("--holdout", o.holdout, "Fraction of the train side held out for selection")
      ->capture_default_str();
}

}  // namespace

std::string options_to_json(const Options& options) { return json(options).dump(); }

Options options_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config snapshot is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("command")) throw ValidationError("config snapshot has no 'command'");
  const json known = Options{};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ValidationError("unknown key '" + key + "' in config snapshot");
  }
  try {
    return j.get<Options>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config snapshot: ") + e.what());
  }
}

int execute(const Options& o, std::ostream& out) {
  if (o.command == "collect") return run_collect(o, out);
  if (o.command == "synth") return run_synth(o, out);
  if (o.command == "train-tagger") return run_train_tagger(o, out);
  const TableFormat format = table_format(o);
  ReportBundle bundle;
  if (o.command == "extract") bundle = run_extract(o);
  else if (o.command == "profile") bundle = run_profile(o);
  else if (o.command == "rank") bundle = run_rank_cmd(o);
  else if (o.command == "train") bundle = run_train(o);
  else if (o.command == "eval") bundle = run_eval(o);
  else if (o.command == "cross-model") bundle = run_cross_model(o);
  else if (o.command == "cross-dataset") bundle = run_cross_dataset(o);
  else if (o.command == "optimize") bundle = run_optimize_cmd(o);
  else if (o.command == "select") bundle = run_select_cmd(o);
  else throw ValidationError("unknown command '" + o.command + "'");
  bundle.seed = o.seed;
  bundle.config_json = snapshot(o);
  write_bundle(bundle, o.out_dir, format);
  if (!bundle.tables.empty()) out << bundle.tables.front().to_csv();
  out << "report: " << (std::filesystem::path(o.out_dir) / "report.json").string() << "\n";
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Handcrafted linguistic features and truthfulness classification of model responses", "stylo"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;
  std::string rerun_config;

  auto* extract = app.add_subcommand("extract", "Write the feature matrix of a corpus");
  add_common(extract, o);

  auto* profile = app.add_subcommand("profile", "Per-model KDE profiles and overlay plots");
  add_common(profile, o);
  profile->add_option("--grid-size", o.grid_size, "Minimum KDE grid points")->capture_default_str();

  auto* rank = app.add_subcommand("rank", "Rank features by Pearson correlation with the label");
  add_common(rank, o);
  rank->add_option("--top", o.top_k, "Rows in the top section")->capture_default_str();
  rank->add_option("--bottom", o.bottom_k, "Rows in the bottom section")->capture_default_str();

  auto* train = app.add_subcommand("train", "Train and evaluate one classifier per model group");
  add_common(train, o);
  add_training(train, o);
  train->add_flag("--minmax", o.minmax, "MinMax-normalize features");
  train->add_flag("--pooled", o.pooled, "Train a single classifier over all groups");

  auto* eval = app.add_subcommand("eval", "Evaluate a saved model on a corpus");
  add_common(eval, o);
  eval->add_option("--model-file", o.model_file, "Model JSON written by train/select")->required();

  auto* cross_model = app.add_subcommand("cross-model", "Cross-model accuracy matrix");
  add_common(cross_model, o);
  add_training(cross_model, o);
  cross_model->add_flag("--minmax", o.minmax, "MinMax-normalize features");

  auto* cross_dataset = app.add_subcommand("cross-dataset", "Cross-dataset accuracy matrix");
  add_common(cross_dataset, o);
  add_training(cross_dataset, o);
  cross_dataset->add_option("--corpus-b", o.corpus_b, "Second corpus")->required();
  cross_dataset->add_flag("--minmax", o.minmax, "MinMax-normalize features");
  cross_dataset->add_flag("--cross-on-test-split", o.cross_on_test_split,
                          "Evaluate cross cells on the other corpus's test split only");

  auto* optimize = app.add_subcommand("optimize", "Accumulating MinMax / selection / lower-C measures");
  add_common(optimize, o);
  add_training(optimize, o);
  add_selection(optimize, o);
  optimize->add_option("--corpus-b", o.corpus_b, "Corpus with further dataset columns");
  optimize->add_option("--lowered-c", o.lowered_c, "C of the last row")->capture_default_str();

  auto* select = app.add_subcommand("select", "Sequential forward feature selection");
  add_common(select, o);
  add_training(select, o);
  add_selection(select, o);
  select->add_flag("--minmax", o.minmax, "MinMax-normalize features");

  auto* collect = app.add_subcommand("collect", "Query a completion endpoint for each question");
  collect->add_option("--questions", o.questions, "JSONL of {id, question}")->required();
  collect->add_option("--endpoint", o.endpoint, "Completion endpoint URL")->required();
  collect->add_option("--out", o.out, "Output JSONL")->required();
  collect->add_option("--template", o.prompt_template, "Prompt template with one {question}")
      ->capture_default_str();
  collect->add_option("--max-tokens", o.max_tokens, "Completion token cap")->capture_default_str();
  collect->add_option("--concurrency", o.concurrency, "Requests in flight")->capture_default_str();
  collect->add_option("--max-attempts", o.max_attempts, "Attempts per request")->capture_default_str();
  collect->add_option("--timeout", o.timeout_seconds, "Per-request timeout in seconds")->capture_default_str();
  collect->add_option("--prompt-field", o.prompt_field, "Request field for the prompt")->capture_default_str();
  collect->add_option("--max-tokens-field", o.max_tokens_field, "Request field for the token cap")
      ->capture_default_str();
  collect->add_option("--reply-pointer", o.reply_pointer, "JSON pointer to the completion text")
      ->capture_default_str();
  collect->add_option("--api-key-env", o.api_key_env, "Name of the environment variable holding the API key")
      ->capture_default_str();
  collect->add_option("--dataset-name", o.dataset_name, "Dataset field of the output records");
  collect->add_option("--model-name", o.model_name, "Model field of the output records");

  auto* synth = app.add_subcommand("synth", "Generate a labelled synthetic corpus");
  synth->add_option("--out", o.out, "Output JSONL")->required();
  synth->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  synth->add_option("--groups", o.groups, "Model group names")->delimiter(',')->capture_default_str();
  synth->add_option("--per-group", o.responses_per_group, "Responses per group")->capture_default_str();
  synth->add_option("--dataset-name", o.dataset_name, "Dataset field of the records");
  synth->add_option("--numeral-shift", o.numeral_shift, "Numeral shift in sd units")->capture_default_str();
  synth->add_option("--reuse-shift", o.reuse_shift, "Word-reuse shift in sd units")->capture_default_str();
  synth->add_option("--noise", o.noise_fraction, "Noise sd as a fraction of each signal sd")->capture_default_str();
  synth->add_option("--positive-rate", o.positive_rate, "Share of label-1 records")->capture_default_str();
  synth->add_flag("--inverted", o.inverted, "Shift label-1 records instead of label-0");

  auto* tagger = app.add_subcommand("train-tagger", "Train the POS tagger on a tagged corpus");
  tagger->add_option("--tagged", o.tagged, "'word<TAB>TAG' lines, blank line between sentences")->required();
  tagger->add_option("--out", o.out, "Output model file")->required();
  tagger->add_option("--epochs", o.epochs, "Training epochs")->capture_default_str();
  tagger->add_option("--holdout", o.tagger_holdout, "Held-out sentence fraction")->capture_default_str();
  tagger->add_option("--seed", o.seed, "Shuffle seed")->capture_default_str();

  auto* rerun = app.add_subcommand("rerun", "Re-run a command from the config in its report.json");
  rerun->add_option("--config", rerun_config, "report.json of an earlier run")->required();
  rerun->add_option("--out-dir", o.out_dir, "Report directory for the re-run")->required();
  rerun->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rerun->parsed()) {
      const json report = json::parse(read_file(rerun_config), nullptr, false);
      if (report.is_discarded() || !report.contains("config")) {
        throw ValidationError("'" + rerun_config + "' is not a report.json with a config snapshot");
      }
      Options replay = options_from_json(report.at("config").dump());
      if (std::find(kHarnessVerbs.begin(), kHarnessVerbs.end(), replay.command) == kHarnessVerbs.end()) {
        throw ValidationError("config snapshot names a command that cannot be re-run: '" + replay.command + "'");
      }
      replay.out_dir = o.out_dir;
      replay.threads = o.threads;
      return execute(replay, out);
    }
    o.command = app.get_subcommands().front()->get_name();
    return execute(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DegenerateDataError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stylo::cli
