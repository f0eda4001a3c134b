#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "paging/error.hpp"
#include "paging/rbf.hpp"

using namespace paging;

namespace {

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out[static_cast<std::size_t>(i)].push_back(m(i, k));
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

TrafficSeries short_t1(double noise, int length) {
  auto spec = TrafficSpec::defaults(TrafficKind::T1);
  spec.noise_std = noise;
  spec.length = length;
  return generate(spec);
}

}  // namespace

TEST_SUITE("rbf") {

TEST_CASE("activation anchors") {
  CHECK(activation(0.0, kDefaultRbfBias) == 1.0);
  CHECK(std::abs(activation(1.0, kDefaultRbfBias) - 0.5) < 1e-4);
  CHECK(std::abs(activation(2.0, kDefaultRbfBias) - 0.0625) < 1e-4);
  // the Gaussian written with the derived sigma is the same function
  const double sigma = sigma_from_bias(kDefaultRbfBias);
  for (double d : {0.3, 1.0, 2.5})
    CHECK(activation(d, kDefaultRbfBias) == doctest::Approx(std::exp(-d * d / (2 * sigma * sigma))).epsilon(1e-13));
}

TEST_CASE("activation is strictly decreasing and in (0, 1]") {
  double prev = 2.0;
  for (int i = 0; i <= 500; ++i) {
    const double a = activation(i * 0.01, kDefaultRbfBias);
    CHECK(a < prev);
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    prev = a;
  }
}

TEST_CASE("hidden layer matches the scalar activation") {
  Eigen::MatrixXd x(3, 2), c(2, 2);
  x << 0, 0, 1, 0, 0.5, 2;
  c << 0, 0, 1, 1;
  const Eigen::MatrixXd h = hidden_layer(x, c, 0.8326);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) CHECK(h(i, j) == doctest::Approx(activation((x.row(i) - c.row(j)).norm(), 0.8326)));
}

TEST_CASE("trivial models") {
  RbfModel zero;
  zero.window = 3;
  zero.centers = Eigen::MatrixXd::Random(2, 3);
  zero.weights = Eigen::VectorXd::Zero(2);
  zero.offset = 0.4;
  zero.scale = 9.0;
  const std::vector<double> w{1.0, 5.0, 2.0};
  CHECK(predict(zero, w) == doctest::Approx(0.4 * 9.0));

  RbfModel one;
  one.window = 3;
  one.centers = Eigen::MatrixXd(1, 3);
  one.centers << 0.1, 0.2, 0.3;
  one.weights = Eigen::VectorXd::Ones(1);
  one.scale = 10.0;
  const std::vector<double> at_center{1.0, 2.0, 3.0};
  CHECK(predict(one, at_center) == doctest::Approx(10.0).epsilon(1e-14));

  const std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS(predict(one, wrong), DimensionMismatch);
}

TEST_CASE("trained model agrees with a loop evaluator on held-out windows") {
  const auto series = generate(TrafficSpec::defaults(TrafficKind::T1));
  auto [train_part, test_part] = split(series, 0.8, 9);
  const auto result = train(train_part, {});
  const auto& m = result.model;
  const auto centers = rows_of(m.centers);
  const auto weights = to_std(m.weights);
  const auto predicted = predict_series(m, test_part.samples);
  for (std::size_t t = 8; t < test_part.size(); ++t) {
    std::vector<double> input;
    for (std::size_t k = t - 8; k < t; ++k) input.push_back(test_part.samples[k] / m.scale);
    const double ref = m.scale * oracle::rbf_output(centers, weights, m.offset, m.bias, input);
    CHECK(std::abs(predicted[t - 8] - ref) < 1e-9);
  }
}

TEST_CASE("denormalization round trip") {
  const auto result = train(short_t1(0.1, 300), {});
  const auto& m = result.model;
  const auto s = short_t1(0.1, 40).samples;
  for (std::size_t t = 0; t + 8 <= s.size(); ++t) {
    std::span<const double> w(s.data() + t, 8);
    std::vector<double> scaled(w.begin(), w.end());
    for (double& v : scaled) v /= m.scale;
    CHECK(std::abs(predict(m, w) - m.scale * predict_normalized(m, scaled)) < 1e-12);
  }
}

TEST_CASE("constant series needs one neuron") {
  TrafficSeries s;
  s.samples.assign(50, 3.0);
  const auto r = train(s, {});
  CHECK(r.report.neurons == 1);
  CHECK(r.report.final_mse < 1e-20);
  CHECK(r.report.goal_met);
  const std::vector<double> w(8, 3.0);
  CHECK(predict(r.model, w) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("noiseless T1 meets the goal") {
  const auto r = train(short_t1(0.0, 960), {});
  CHECK(r.report.goal_met);
  CHECK(r.report.neurons <= 60);
  CHECK(r.report.final_mse <= 0.02);
}

TEST_CASE("series too short") {
  TrafficSeries s;
  s.samples.assign(9, 1.0);
  CHECK_THROWS_AS(train(s, {}), InsufficientData);
  s.samples.assign(10, 1.0);
  CHECK_NOTHROW(train(s, {}));
}

TEST_CASE("training mse never increases") {
  TrainOptions options;
  options.mse_goal = 1e-12;
  options.max_neurons = 60;
  for (auto kind : {TrafficKind::T1, TrafficKind::T2, TrafficKind::T3}) {
    auto spec = TrafficSpec::defaults(kind);
    spec.noise_std = 0.3;
    const auto r = train(generate(spec), options);
    CHECK(r.report.mse_history.size() == 60);
    for (std::size_t i = 1; i < r.report.mse_history.size(); ++i)
      CHECK(r.report.mse_history[i] <= r.report.mse_history[i - 1] + 1e-12);
    CHECK(r.report.goal_met == (r.report.final_mse <= options.mse_goal));
  }
}

TEST_CASE("first center is the largest deviation from the mean") {
  const auto s = short_t1(0.2, 200);
  TrainOptions options;
  options.max_neurons = 1;
  const auto r = train(s, options);
  std::vector<double> normalized = s.samples;
  const double peak = *std::max_element(normalized.begin(), normalized.end());
  for (double& v : normalized) v /= peak;
  const auto pairs = make_training_pairs(normalized, 8);
  const double mean = pairs.targets.mean();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < pairs.targets.size(); ++i)
    if (std::abs(pairs.targets(i) - mean) > std::abs(pairs.targets(best) - mean)) best = i;
  CHECK((r.model.centers.row(0) - pairs.inputs.row(best)).norm() == 0.0);
}

TEST_CASE("unregularized fit equals least squares on the chosen centers") {
  const auto s = short_t1(0.2, 200);
  TrainOptions options;
  options.ridge = 0.0;
  options.max_neurons = 12;
  options.mse_goal = 1e-12;
  options.goal_units = MseUnits::Normalized;
  const auto r = train(s, options);
  std::vector<double> normalized = s.samples;
  for (double& v : normalized) v /= r.model.scale;
  const auto pairs = make_training_pairs(normalized, 8);
  Eigen::MatrixXd design(pairs.inputs.rows(), r.model.neuron_count() + 1);
  design.col(0).setOnes();
  design.rightCols(r.model.neuron_count()) = hidden_layer(pairs.inputs, r.model.centers, r.model.bias);
  const Eigen::VectorXd theta = design.colPivHouseholderQr().solve(pairs.targets);
  const double ls_mse = (design * theta - pairs.targets).squaredNorm() / pairs.targets.size();
  CHECK(r.report.final_mse == doctest::Approx(ls_mse).epsilon(1e-8));
  CHECK(r.model.offset == doctest::Approx(theta(0)).epsilon(1e-6));
  for (int j = 0; j < r.model.neuron_count(); ++j) CHECK(r.model.weights(j) == doctest::Approx(theta(j + 1)).epsilon(1e-6));
}

TEST_CASE("exact interpolation when every input is a center") {
  TrafficSeries s;
  s.samples = {1.0, 3.0, 2.0, 4.0};  // W = 1: three distinct inputs 1, 3, 2
  TrainOptions options;
  options.window = 1;
  options.ridge = 0.0;
  options.mse_goal = 1e-300;
  options.max_neurons = 10;
  const auto r = train(s, options);
  // offset plus two centers already span the three targets
  CHECK(r.report.neurons <= 3);
  CHECK(r.report.final_mse < 1e-16);
  for (std::size_t t = 1; t < s.size(); ++t)
    CHECK(predict(r.model, std::span<const double>(s.samples.data() + t - 1, 1)) ==
          doctest::Approx(s.samples[t]).epsilon(1e-7));
}

TEST_CASE("goal units") {
  const auto s = short_t1(0.1, 400);
  const double peak = *std::max_element(s.samples.begin(), s.samples.end());
  const double scale2 = peak * peak;
  TrainOptions load;
  TrainOptions norm;
  norm.goal_units = MseUnits::Normalized;
  norm.mse_goal = load.mse_goal / scale2;
  const auto a = train(s, load);
  const auto b = train(s, norm);
  CHECK(a.model.scale == peak);
  REQUIRE(a.report.mse_history.size() == b.report.mse_history.size());
  for (std::size_t i = 0; i < a.report.mse_history.size(); ++i)
    CHECK(a.report.mse_history[i] == doctest::Approx(b.report.mse_history[i] * scale2).epsilon(1e-12));
  CHECK(a.report.units == MseUnits::Load);
}

TEST_CASE("option validation") {
  TrafficSeries s;
  s.samples.assign(20, 1.0);
  TrainOptions bad;
  bad.bias = 0.0;
  CHECK_THROWS_AS(train(s, bad), InvalidArgument);
  bad = {};
  bad.max_neurons = 0;
  CHECK_THROWS_AS(train(s, bad), InvalidArgument);
}

TEST_CASE("model file round trip is bit exact") {
  const auto r = train(short_t1(0.1, 500), {});
  std::stringstream buf;
  write_model(buf, r.model);
  const auto back = read_model(buf);
  CHECK(back.window == r.model.window);
  CHECK(back.bias == r.model.bias);
  CHECK(back.scale == r.model.scale);
  CHECK(back.offset == r.model.offset);
  CHECK(back.centers == r.model.centers);
  CHECK(back.weights == r.model.weights);

  std::istringstream truncated("paging-rbf-model 1\nwindow 8\nbias 0.8\n");
  CHECK_THROWS_AS(read_model(truncated), ParseError);
  std::istringstream wrong("paging-rbf-model 2\n");
  CHECK_THROWS_AS(read_model(wrong), ParseError);
}

}
