#include "stylo/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    d += t * t;
  }
  return d;
}

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  return std::exp(-gamma * squared_distance(a, b));
}

// Above this many rows kernel values are recomputed instead of cached.
constexpr std::size_t kMaxCachedRows = 6000;

class SmoSolver {
 public:
  SmoSolver(std::vector<std::vector<double>> x, std::vector<double> y, std::vector<double> bound, double gamma,
            const TrainConfig& config)
      : x_(std::move(x)), y_(std::move(y)), c_(std::move(bound)), gamma_(gamma), config_(config),
        rng_(config.seed), n_(x_.size()), alpha_(n_, 0.0), f_(n_, 0.0) {
    if (n_ <= kMaxCachedRows) {
      kernel_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        kernel_[i * n_ + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) kernel_[i * n_ + j] = kernel_[j * n_ + i] = rbf(x_[i], x_[j], gamma_);
      }
    }
  }

  void solve(TrainStats& stats) {
    bool examine_all = true;
    int passes = 0;
    while (passes < config_.max_passes) {
      if (iterations_ >= config_.max_iterations) {
        stats.hit_iteration_cap = true;
        break;
      }
      std::size_t changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < n_ && iterations_ < config_.max_iterations; ++i) changed += examine(i);
      } else {
        for (std::size_t i = 0; i < n_ && iterations_ < config_.max_iterations; ++i) {
          if (is_free(i)) changed += examine(i);
        }
      }
      ++stats.sweeps;
      if (examine_all) passes = changed == 0 ? passes + 1 : 0;
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
    stats.iterations = iterations_;
  }

  const std::vector<double>& alpha() const { return alpha_; }

  // Mean of y_i - f_i over free multipliers; otherwise the midpoint of the
  // interval allowed by the bound multipliers' KKT conditions.
  double final_bias() const {
    double sum = 0.0;
    std::size_t free_count = 0;
    double lo = -HUGE_VAL;
    double hi = HUGE_VAL;
    for (std::size_t i = 0; i < n_; ++i) {
      const double target = y_[i] - f_[i];
      if (is_free(i)) {
        sum += target;
        ++free_count;
      } else if ((alpha_[i] <= 0.0) == (y_[i] > 0)) {
        lo = std::max(lo, target);
      } else {
        hi = std::min(hi, target);
      }
    }
    if (free_count > 0) return sum / static_cast<double>(free_count);
    if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo;
    if (std::isfinite(hi)) return hi;
    return 0.0;
  }

 private:
  double k(std::size_t i, std::size_t j) const {
    return kernel_.empty() ? rbf(x_[i], x_[j], gamma_) : kernel_[i * n_ + j];
  }
  double error(std::size_t i) const { return f_[i] + b_ - y_[i]; }
  bool is_free(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < c_[i]; }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double e1 = error(i1);
    const double e2 = error(i2);
    const double s = y1 * y2;
    double lo;
    double hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_[i2], c_[i1] + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_[i1]);
      hi = std::min(c_[i2], a1 + a2);
    }
    if (hi - lo <= 0.0) return false;
    const double k11 = k(i1, i1);
    const double k12 = k(i1, i2);
    const double k22 = k(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 1e-12) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Objective gain along the constraint line for a move of d.
      auto gain = [&](double d) { return y2 * (e1 - e2) * d - 0.5 * eta * d * d; };
      const double g_lo = gain(lo - a2);
      const double g_hi = gain(hi - a2);
      if (std::abs(g_lo - g_hi) <= 1e-12) return false;
      a2_new = g_lo > g_hi ? lo : hi;
    }
    const double snap = 1e-12 * c_[i2];
    if (a2_new < snap) a2_new = 0.0;
    if (a2_new > c_[i2] - snap) a2_new = c_[i2];
    if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < 1e-12 * c_[i1]) a1_new = 0.0;
    if (a1_new > c_[i1] * (1.0 - 1e-12)) a1_new = c_[i1];

    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    if (is_free(i1)) {
      b_ = b1;
    } else if (is_free(i2)) {
      b_ = b2;
    } else {
      b_ = 0.5 * (b1 + b2);
    }
    for (std::size_t t = 0; t < n_; ++t) f_[t] += d1 * k(i1, t) + d2 * k(i2, t);
    ++iterations_;
    return true;
  }

  std::size_t examine(std::size_t i2) {
    const double e2 = error(i2);
    const double r2 = e2 * y_[i2];
    const double tol = config_.kkt_tolerance;
    if (!((r2 < -tol && alpha_[i2] < c_[i2]) || (r2 > tol && alpha_[i2] > 0.0))) return 0;

    std::vector<std::size_t> free_set;
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_free(i)) free_set.push_back(i);
    }
    if (free_set.size() > 1) {
      std::size_t best = n_;
      double best_gap = -1.0;
      for (std::size_t i : free_set) {
        const double gap = std::abs(error(i) - e2);
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      if (best < n_ && take_step(best, i2)) return 1;
    }
    if (!free_set.empty()) {
      const std::size_t start = rng_.below(free_set.size());
      for (std::size_t t = 0; t < free_set.size(); ++t) {
        if (take_step(free_set[(start + t) % free_set.size()], i2)) return 1;
      }
    }
    const std::size_t start = rng_.below(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      if (take_step((start + t) % n_, i2)) return 1;
    }
    return 0;
  }

  std::vector<std::vector<double>> x_;
  std::vector<double> y_;
  std::vector<double> c_;
  double gamma_;
  TrainConfig config_;
  Rng rng_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> f_;
  std::vector<double> kernel_;
  double b_ = 0.0;
  std::size_t iterations_ = 0;
};

void check_config(const TrainConfig& config) {
  if (!(config.c > 0.0) || !std::isfinite(config.c)) throw ValidationError("C must be positive");
  if (config.gamma && (!(*config.gamma > 0.0) || !std::isfinite(*config.gamma))) {
    throw ValidationError("gamma must be positive");
  }
  if (!(config.kkt_tolerance > 0.0)) throw ValidationError("KKT tolerance must be positive");
  if (config.max_passes < 1) throw ValidationError("max_passes must be positive");
}

}  // namespace

double scale_gamma(std::span<const double> values, std::size_t dims) {
  if (values.empty() || dims == 0) return 1.0;
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / n;
  if (!(var > 0.0)) return 1.0;
  return 1.0 / (static_cast<double>(dims) * var);
}

std::size_t SvmModel::kernel_dims() const {
  return selected_features ? selected_features->size() : feature_names.size();
}

SvmModel train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config,
               TrainStats* stats) {
  check_config(config);
  matrix.check_shape();
  const std::size_t n = matrix.rows();
  if (labels.size() != n) throw ContractError("train: labels do not align with rows");
  if (n < 2) throw DegenerateDataError("training needs at least two rows");
  std::array<std::size_t, 2> per_class{};
  for (int label : labels) {
    if (label != 0 && label != 1) throw ValidationError("labels must be 0 or 1");
    ++per_class[static_cast<std::size_t>(label)];
  }
  if (per_class[0] == 0 || per_class[1] == 0) throw DegenerateDataError("training needs both classes present");
  for (double v : matrix.values) {
    if (!std::isfinite(v)) throw ValidationError("training matrix contains a non-finite value");
  }

  // Canonical row order: lexicographic on (values, label).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = matrix.row(a);
    const auto rb = matrix.row(b);
    if (std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end())) return true;
    if (std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end())) return false;
    return labels[a] < labels[b];
  });

  SvmModel model;
  model.config = config;
  model.c = config.c;
  model.gamma = config.gamma ? *config.gamma : scale_gamma(matrix.values, matrix.cols());
  if (config.class_weighted) {
    for (std::size_t k = 0; k < 2; ++k) {
      model.class_c[k] = config.c * static_cast<double>(n) / (2.0 * static_cast<double>(per_class[k]));
    }
  } else {
    model.class_c = {config.c, config.c};
  }
  model.feature_names = matrix.column_names;
  model.registry_version = matrix.registry_version;

  std::vector<std::vector<double>> x(n);
  std::vector<double> y(n);
  std::vector<double> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = matrix.row(order[i]);
    x[i].assign(r.begin(), r.end());
    const int label = labels[order[i]];
    y[i] = label == 1 ? 1.0 : -1.0;
    bound[i] = model.class_c[static_cast<std::size_t>(label)];
  }

  SmoSolver solver(x, y, bound, model.gamma, config);
  TrainStats local;
  solver.solve(local);
  if (stats) *stats = local;

  const auto& alpha = solver.alpha();
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.push_back(x[i]);
      model.dual_coefficients.push_back(alpha[i] * y[i]);
    }
  }
  model.bias = solver.final_bias();
  return model;
}

SvmModel train_pipeline(const FeatureMatrix& matrix, const TrainConfig& config, const Preprocessing& prep,
                        TrainStats* stats) {
  FeatureMatrix work = matrix;
  std::optional<MinMaxParams> params;
  if (prep.minmax) {
    params = minmax_fit(matrix);
    work = minmax_apply(*params, work);
  }
  if (prep.selected_features) {
    if (prep.selected_features->empty()) throw ValidationError("feature subset must not be empty");
    work = work.take_columns(*prep.selected_features);
  }
  SvmModel model = train(work, matrix.labels, config, stats);
  model.feature_names = matrix.column_names;
  model.normalization = std::move(params);
  model.selected_features = prep.selected_features;
  return model;
}

std::vector<double> transform_row(const SvmModel& model, std::span<const double> row) {
  if (row.size() != model.input_dims()) {
    throw ContractError("predict: row has " + std::to_string(row.size()) + " values, model expects " +
                        std::to_string(model.input_dims()));
  }
  std::vector<double> v(row.begin(), row.end());
  if (model.normalization) minmax_apply_row(*model.normalization, v);
  if (!model.selected_features) return v;
  std::vector<double> out;
  out.reserve(model.selected_features->size());
  for (const auto& name : *model.selected_features) {
    const auto it = std::find(model.feature_names.begin(), model.feature_names.end(), name);
    if (it == model.feature_names.end()) throw ValidationError("model selects unknown feature '" + name + "'");
    out.push_back(v[static_cast<std::size_t>(it - model.feature_names.begin())]);
  }
  return out;
}

double decision_function(const SvmModel& model, std::span<const double> transformed) {
  if (transformed.size() != model.kernel_dims()) throw ContractError("decision_function: dimension mismatch");
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    f += model.dual_coefficients[i] * rbf(model.support_vectors[i], transformed, model.gamma);
  }
  return f;
}

Prediction predict(const SvmModel& model, std::span<const double> row) {
  const double f = decision_function(model, transform_row(model, row));
  return {f > 0.0 ? 1 : 0, f};
}

std::vector<Prediction> predict_all(const SvmModel& model, const FeatureMatrix& matrix) {
  const FeatureMatrix aligned =
      matrix.column_names == model.feature_names ? matrix : matrix.take_columns(model.feature_names);
  std::vector<Prediction> out;
  out.reserve(aligned.rows());
  for (std::size_t i = 0; i < aligned.rows(); ++i) out.push_back(predict(model, aligned.row(i)));
  return out;
}

Evaluation evaluate(const SvmModel& model, const FeatureMatrix& matrix, std::span<const int> labels) {
  if (matrix.rows() == 0) throw ContractError("evaluation needs at least one row");
  if (labels.size() != matrix.rows()) throw ContractError("evaluate: labels do not align with rows");
  const auto predictions = predict_all(model, matrix);
  Evaluation e;
  e.n = labels.size();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto actual = static_cast<std::size_t>(labels[i] == 1);
    const auto predicted = static_cast<std::size_t>(predictions[i].label);
    ++e.confusion[actual][predicted];
    correct += actual == predicted ? 1 : 0;
  }
  e.accuracy = static_cast<double>(correct) / static_cast<double>(e.n);
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t tp = e.confusion[k][k];
    const std::size_t predicted = e.confusion[0][k] + e.confusion[1][k];
    const std::size_t actual = e.confusion[k][0] + e.confusion[k][1];
    e.precision[k] = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
    e.recall[k] = actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
  }
  return e;
}

double accuracy(const SvmModel& model, const FeatureMatrix& matrix, std::span<const int> labels) {
  return evaluate(model, matrix, labels).accuracy;
}

double dual_objective(const SvmModel& model) {
  double linear = 0.0;
  double quadratic = 0.0;
  const std::size_t m = model.support_vectors.size();
  for (std::size_t i = 0; i < m; ++i) {
    linear += std::abs(model.dual_coefficients[i]);
    for (std::size_t j = 0; j < m; ++j) {
      quadratic += model.dual_coefficients[i] * model.dual_coefficients[j] *
                   rbf(model.support_vectors[i], model.support_vectors[j], model.gamma);
    }
  }
  return linear - 0.5 * quadratic;
}

void validate_model(const SvmModel& model) {
  if (!(model.gamma > 0.0) || !std::isfinite(model.gamma)) throw ValidationError("model gamma must be positive");
  if (!(model.c > 0.0)) throw ValidationError("model C must be positive");
  if (model.support_vectors.size() != model.dual_coefficients.size()) {
    throw ValidationError("model has mismatched support vectors and coefficients");
  }
  const std::size_t dims = model.kernel_dims();
  double balance = 0.0;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    if (model.support_vectors[i].size() != dims) throw ValidationError("support vector has wrong dimension");
    const double coef = model.dual_coefficients[i];
    const double bound = model.class_c[coef > 0 ? 1 : 0];
    if (!(std::abs(coef) > 0.0) || std::abs(coef) > bound * (1.0 + 1e-12)) {
      throw ValidationError("dual coefficient outside (0, C]");
    }
    balance += coef;
  }
  if (std::abs(balance) > 1e-6) throw ValidationError("dual coefficients do not sum to zero");
  if (model.normalization && (model.normalization->min.size() != model.feature_names.size() ||
                              model.normalization->max.size() != model.feature_names.size())) {
    throw ValidationError("normalization parameters do not match the feature list");
  }
}

}  // namespace stylo
