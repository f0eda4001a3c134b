#pragma once

#include <cmath>
#include <concepts>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "paging/traffic.hpp"

namespace paging {

/// Hidden-layer scale that gives activation 0.5 at unit distance: sqrt(ln 2), rounded.
inline constexpr double kDefaultRbfBias = 0.8326;

/// Gaussian radial basis response. The net input is distance * bias and the
/// unit outputs exp(-net^2); this is exp(-d^2 / (2 sigma^2)) with
/// sigma = 1 / (bias * sqrt(2)).
template <std::floating_point Scalar>
Scalar activation(Scalar distance, Scalar bias) {
  const Scalar net = distance * bias;
  return std::exp(-net * net);
}

template <std::floating_point Scalar>
Scalar sigma_from_bias(Scalar bias) {
  return Scalar(1) / (bias * std::sqrt(Scalar(2)));
}

/// Hidden responses for a batch of inputs: H(i, j) = activation(|x_i - u_j|, bias).
template <typename InputDerived, typename CenterDerived>
Eigen::Matrix<typename InputDerived::Scalar, Eigen::Dynamic, Eigen::Dynamic> hidden_layer(
    const Eigen::MatrixBase<InputDerived>& inputs, const Eigen::MatrixBase<CenterDerived>& centers,
    typename InputDerived::Scalar bias) {
  using Scalar = typename InputDerived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> h(inputs.rows(), centers.rows());
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    h.col(j) = ((inputs.rowwise() - centers.row(j)).rowwise().norm() * bias)
                   .array()
                   .square()
                   .unaryExpr([](Scalar v) { return std::exp(-v); })
                   .matrix();
  }
  return h;
}

/// Trained one-step-ahead predictor. Centers live in normalized-load units
/// (raw load / scale); the output layer is offset + weights . hidden.
struct RbfModel {
  Eigen::MatrixXd centers;  // neurons x window
  Eigen::VectorXd weights;  // one per center
  double offset = 0.0;
  double bias = kDefaultRbfBias;
  int window = 8;
  double scale = 1.0;

  int neuron_count() const { return static_cast<int>(centers.rows()); }
  void validate() const;
};

/// Output for an already-normalized window.
double predict_normalized(const RbfModel& model, std::span<const double> window);

/// Next-sample load (raw units) from the last `model.window` raw loads.
double predict(const RbfModel& model, std::span<const double> window);

/// One-step predictions for samples[window], ..., samples[n-1], each from the
/// window of actual samples immediately before it.
std::vector<double> predict_series(const RbfModel& model, std::span<const double> samples);

/// Units in which the training MSE (and its goal) is measured.
enum class MseUnits {
  Load,        // squared Erlang, i.e. normalized MSE * scale^2
  Normalized,  // squared fraction of the training peak
};

struct TrainOptions {
  int window = 8;
  double bias = kDefaultRbfBias;
  double mse_goal = 0.02;
  MseUnits goal_units = MseUnits::Load;
  int max_neurons = 60;
  /// Ridge term of the regularized orthogonal least-squares refit.
  double ridge = 1e-8;

  void validate() const;
};

struct TrainReport {
  int neurons = 0;
  double final_mse = 0.0;           // in TrainOptions::goal_units
  std::vector<double> mse_history;  // training MSE after each added neuron
  bool goal_met = false;
  MseUnits units = MseUnits::Load;
};

struct TrainResult {
  RbfModel model;
  TrainReport report;
};

/// Sliding-window regression pairs: row i of `inputs` holds samples[i .. i+W-1]
/// and targets(i) = samples[i+W].
struct TrainingPairs {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd targets;
};
TrainingPairs make_training_pairs(std::span<const double> samples, int window);

/// Greedy center insertion on load normalized by 1 / max(series).
///
/// Starting from the offset-only fit, each round turns the training input with
/// the largest absolute residual (earliest index on ties, never one already
/// chosen) into a new center and refits the output layer. The refit is
/// regularized orthogonal least squares: the new hidden column is
/// Gram-Schmidt orthogonalized against the offset and earlier columns, and its
/// coefficient in that basis is q.r / (q.q + ridge). Each step therefore
/// removes a nonnegative amount of squared error, and with ridge = 0 the fit
/// equals the ordinary least-squares refit over all columns. Training stops
/// once the MSE reaches the goal, at max_neurons, or when every input is a
/// center. At least one neuron is added.
TrainResult train(const TrafficSeries& series, const TrainOptions& options);

/// Versioned text format, 17 significant digits, exact round trip.
void write_model(std::ostream& out, const RbfModel& model);
RbfModel read_model(std::istream& in);

}  // namespace paging
