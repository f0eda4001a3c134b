#include "paging/rbf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "paging/error.hpp"
#include "paging/format.hpp"

namespace paging {

namespace {

constexpr const char* kModelMagic = "paging-rbf-model";
constexpr int kModelVersion = 1;

std::string next_content_line(std::istream& in, int& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  throw ParseError("model file: unexpected end of input after line " + std::to_string(line_no));
}

double keyed_value(const std::string& line, const std::string& key, int line_no) {
  std::istringstream fields(line);
  std::string name, value, trailing;
  if (!(fields >> name >> value) || name != key || (fields >> trailing))
    throw ParseError("model file line " + std::to_string(line_no) + ": expected '" + key + " <value>'");
  return parse_number(value);
}

}  // namespace

void RbfModel::validate() const {
  if (window < 1) throw InvalidArgument("rbf model: window must be >= 1");
  if (!(bias > 0.0)) throw InvalidArgument("rbf model: bias must be positive");
  if (!(scale > 0.0)) throw InvalidArgument("rbf model: scale must be positive");
  if (centers.rows() > 0 && centers.cols() != window)
    throw InvalidArgument("rbf model: every center must have the window dimension");
  if (weights.size() != centers.rows()) throw InvalidArgument("rbf model: one output weight per center required");
}

void TrainOptions::validate() const {
  if (window < 1) throw InvalidArgument("train: window must be >= 1");
  if (!(bias > 0.0)) throw InvalidArgument("train: bias must be positive");
  if (!(mse_goal > 0.0)) throw InvalidArgument("train: mse_goal must be positive");
  if (max_neurons < 1) throw InvalidArgument("train: max_neurons must be >= 1");
  if (!(ridge >= 0.0)) throw InvalidArgument("train: ridge must be >= 0");
}

double predict_normalized(const RbfModel& model, std::span<const double> window) {
  if (static_cast<int>(window.size()) != model.window)
    throw DimensionMismatch("predict: window has " + std::to_string(window.size()) + " samples, model expects " +
                            std::to_string(model.window));
  const Eigen::Map<const Eigen::RowVectorXd> x(window.data(), static_cast<Eigen::Index>(window.size()));
  double out = model.offset;
  for (Eigen::Index j = 0; j < model.centers.rows(); ++j)
    out += model.weights(j) * activation((x - model.centers.row(j)).norm(), model.bias);
  return out;
}

double predict(const RbfModel& model, std::span<const double> window) {
  std::vector<double> normalized(window.begin(), window.end());
  for (double& v : normalized) v /= model.scale;
  return model.scale * predict_normalized(model, normalized);
}

std::vector<double> predict_series(const RbfModel& model, std::span<const double> samples) {
  const auto w = static_cast<std::size_t>(model.window);
  if (samples.size() <= w) throw InsufficientData("predict_series: series shorter than window + 1");
  std::vector<double> out;
  out.reserve(samples.size() - w);
  for (std::size_t t = w; t < samples.size(); ++t) out.push_back(predict(model, samples.subspan(t - w, w)));
  return out;
}

TrainingPairs make_training_pairs(std::span<const double> samples, int window) {
  const auto w = static_cast<std::size_t>(window);
  if (window < 1 || samples.size() <= w) throw InsufficientData("training pairs: series shorter than window + 1");
  const auto n = static_cast<Eigen::Index>(samples.size() - w);
  TrainingPairs pairs{Eigen::MatrixXd(n, window), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < window; ++k) pairs.inputs(i, k) = samples[static_cast<std::size_t>(i + k)];
    pairs.targets(i) = samples[static_cast<std::size_t>(i) + w];
  }
  return pairs;
}

TrainResult train(const TrafficSeries& series, const TrainOptions& options) {
  options.validate();
  if (series.size() < static_cast<std::size_t>(options.window) + 2)
    throw InsufficientData("train: need at least window + 2 samples");

  const double peak = *std::max_element(series.samples.begin(), series.samples.end());
  const double scale = peak > 0.0 ? peak : 1.0;
  std::vector<double> normalized(series.samples);
  for (double& v : normalized) v /= scale;
  const TrainingPairs pairs = make_training_pairs(normalized, options.window);
  const Eigen::Index n = pairs.targets.size();
  const double to_units = options.goal_units == MseUnits::Load ? scale * scale : 1.0;

  // Orthogonal basis q_0 = 1, q_1, ... with Phi = Q * coupling, coupling unit upper triangular.
  const auto capacity = static_cast<Eigen::Index>(std::min<Eigen::Index>(options.max_neurons, n)) + 1;
  Eigen::MatrixXd basis(n, capacity);
  Eigen::VectorXd basis_norm2(capacity);
  Eigen::MatrixXd coupling = Eigen::MatrixXd::Identity(capacity, capacity);
  Eigen::VectorXd coefficients(capacity);

  basis.col(0).setOnes();
  basis_norm2(0) = static_cast<double>(n);
  coefficients(0) = pairs.targets.sum() / static_cast<double>(n);  // the offset is not penalized
  Eigen::VectorXd residual = pairs.targets.array() - coefficients(0);

  TrainResult result;
  result.report.units = options.goal_units;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> chosen;
  Eigen::Index columns = 1;

  while (static_cast<int>(chosen.size()) < options.max_neurons && static_cast<Eigen::Index>(chosen.size()) < n) {
    Eigen::Index pick = -1;
    double largest = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double r = std::abs(residual(i));
      if (r > largest) {
        largest = r;
        pick = i;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    chosen.push_back(pick);

    Eigen::VectorXd column = hidden_layer(pairs.inputs, pairs.inputs.row(pick), options.bias);
    const double raw_norm2 = column.squaredNorm();
    // Modified Gram-Schmidt, run twice; the second pass mops up cancellation.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < columns; ++i) {
        if (basis_norm2(i) == 0.0) continue;
        const double alpha = basis.col(i).dot(column) / basis_norm2(i);
        coupling(i, columns) += alpha;
        column -= alpha * basis.col(i);
      }
    }
    double norm2 = column.squaredNorm();
    if (norm2 <= 1e-24 * raw_norm2) {  // numerically inside the span of earlier columns
      column.setZero();
      norm2 = 0.0;
    }
    const double denom = norm2 + options.ridge;
    const double coefficient = denom > 0.0 ? column.dot(residual) / denom : 0.0;
    basis.col(columns) = column;
    basis_norm2(columns) = norm2;
    coefficients(columns) = coefficient;
    residual -= coefficient * column;
    ++columns;

    const double mse = residual.squaredNorm() / static_cast<double>(n) * to_units;
    result.report.mse_history.push_back(mse);
    if (mse <= options.mse_goal) break;
  }

  // Back to the original basis: coupling * theta = coefficients.
  const Eigen::VectorXd theta = coupling.topLeftCorner(columns, columns)
                                    .triangularView<Eigen::UnitUpper>()
                                    .solve(coefficients.head(columns));

  RbfModel& model = result.model;
  model.window = options.window;
  model.bias = options.bias;
  model.scale = scale;
  model.offset = theta(0);
  model.weights = theta.tail(columns - 1);
  model.centers.resize(static_cast<Eigen::Index>(chosen.size()), options.window);
  for (std::size_t j = 0; j < chosen.size(); ++j)
    model.centers.row(static_cast<Eigen::Index>(j)) = pairs.inputs.row(chosen[j]);

  result.report.neurons = model.neuron_count();
  result.report.final_mse = result.report.mse_history.back();
  result.report.goal_met = result.report.final_mse <= options.mse_goal;
  return result;
}

void write_model(std::ostream& out, const RbfModel& model) {
  model.validate();
  out << kModelMagic << ' ' << kModelVersion << '\n'
      << "window " << model.window << '\n'
      << "bias " << format_number(model.bias) << '\n'
      << "scale " << format_number(model.scale) << '\n'
      << "neurons " << model.neuron_count() << '\n';
  for (Eigen::Index j = 0; j < model.centers.rows(); ++j) {
    for (Eigen::Index k = 0; k < model.centers.cols(); ++k) out << format_number(model.centers(j, k)) << ' ';
    out << format_number(model.weights(j)) << '\n';
  }
  out << "offset " << format_number(model.offset) << '\n';
}

RbfModel read_model(std::istream& in) {
  int line_no = 0;
  {
    std::istringstream magic(next_content_line(in, line_no));
    std::string name;
    int version = 0;
    if (!(magic >> name >> version) || name != kModelMagic)
      throw ParseError("model file line " + std::to_string(line_no) + ": not a paging-rbf-model file");
    if (version != kModelVersion)
      throw ParseError("model file: unsupported version " + std::to_string(version));
  }
  RbfModel model;
  const double window = keyed_value(next_content_line(in, line_no), "window", line_no);
  model.bias = keyed_value(next_content_line(in, line_no), "bias", line_no);
  model.scale = keyed_value(next_content_line(in, line_no), "scale", line_no);
  const double neurons = keyed_value(next_content_line(in, line_no), "neurons", line_no);
  if (window < 1 || window != std::floor(window) || neurons < 0 || neurons != std::floor(neurons))
    throw ParseError("model file: window and neurons must be nonnegative integers");
  model.window = static_cast<int>(window);
  const auto k = static_cast<Eigen::Index>(neurons);
  model.centers.resize(k, model.window);
  model.weights.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    std::istringstream fields(next_content_line(in, line_no));
    std::vector<double> values;
    std::string token;
    while (fields >> token) values.push_back(parse_number(token));
    if (static_cast<int>(values.size()) != model.window + 1)
      throw ParseError("model file line " + std::to_string(line_no) + ": expected window + 1 values");
    for (int c = 0; c < model.window; ++c) model.centers(j, c) = values[static_cast<std::size_t>(c)];
    model.weights(j) = values.back();
  }
  model.offset = keyed_value(next_content_line(in, line_no), "offset", line_no);
  model.validate();
  return model;
}

}  // namespace paging
