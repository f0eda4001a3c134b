#include "paging/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paging/des.hpp"
#include "paging/format.hpp"
#include "paging/metrics.hpp"
#include "paging/strategy.hpp"

namespace paging {

namespace {

using nlohmann::json;

// Reads the members of one JSON object, remembering which keys were consumed
// so that misspelt keys are reported instead of silently ignored.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& target) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) return;
    target = convert<T>(*it, field(key));
  }

  template <typename T>
  void read(const char* key, std::optional<T>& target) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) return;
    target = convert<T>(*it, field(key));
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = object_.find(key);
    return (it == object_.end() || it->is_null()) ? nullptr : &*it;
  }

  bool has(const char* key) const { return object_.contains(key) && !object_.at(key).is_null(); }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key.c_str()) + ": unknown field");
    }
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  template <typename T>
  static T convert(const json& value, const std::string& name) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!value.is_boolean()) throw ConfigError(name + ": expected true or false");
      return value.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!value.is_number_integer()) throw ConfigError(name + ": expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (value.is_number_unsigned()) return value.get<T>();
        if (value.get<long long>() < 0) throw ConfigError(name + ": expected a nonnegative integer");
      }
      return value.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ConfigError(name + ": expected a number");
      return value.get<double>();
    } else if constexpr (std::is_same_v<T, std::string> || std::is_same_v<T, std::filesystem::path>) {
      if (!value.is_string()) throw ConfigError(name + ": expected a string");
      return T(value.get<std::string>());
    }
  }

  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_scheme(ObjectReader& parent, const char* key, PagingSchemeConfig& scheme) {
  if (const json* node = parent.child(key)) {
    ObjectReader reader(*node, parent.field(key));
    reader.read("name", scheme.name);
    reader.read("channels", scheme.channels);
    reader.read("mean_service_time", scheme.mean_service_time);
    reader.finish();
  }
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

// File-name label per traffic entry: the kind, suffixed with the index when repeated.
std::vector<std::string> traffic_labels(const ExperimentConfig& config) {
  std::vector<std::string> labels;
  std::map<std::string, int> counts;
  for (const auto& spec : config.traffic) ++counts[to_string(spec.kind)];
  for (std::size_t i = 0; i < config.traffic.size(); ++i) {
    const std::string kind = to_string(config.traffic[i].kind);
    labels.push_back(counts[kind] > 1 ? kind + "_" + std::to_string(i) : kind);
  }
  return labels;
}

struct TrainedType {
  TrafficSeries train;
  TrafficSeries test;
  TrainResult trained;
};

TrainedType train_type(const ExperimentConfig& config, std::size_t index) {
  const TrafficSeries series = generate(config.traffic_spec(index));
  auto [train_part, test_part] =
      split(series, config.train_fraction, static_cast<std::size_t>(config.predictor.window) + 2);
  TrainResult trained = train(train_part, config.predictor);
  return {std::move(train_part), std::move(test_part), std::move(trained)};
}

StrategyConfig strategy_config(const ExperimentConfig& config) {
  StrategyConfig strategy;
  strategy.sequential = config.sequential;
  strategy.concurrent = config.concurrent;
  strategy.threshold = config.threshold ? *config.threshold : default_crossover(config.sequential, config.concurrent);
  strategy.hysteresis = config.hysteresis;
  strategy.swap_penalty = config.swap_penalty;
  strategy.validate();
  return strategy;
}

void write_curves_plot(std::ostream& out, const ExperimentConfig& config) {
  const auto& s = config.sequential.name;
  const auto& c = config.concurrent.name;
  out << "# gnuplot script: wait probability and mean system time vs arrival rate\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 900,600\n"
      << "set xlabel 'arrival rate (per time unit)'\n"
      << "set output 'curves_pwait.png'\n"
      << "set ylabel 'wait (blocking) probability'\n"
      << "plot 'curves.csv' using 1:2 with lines title '" << s << "', '' using 1:4 with lines title '" << c << "'\n"
      << "set output 'curves_time.png'\n"
      << "set ylabel 'mean time in system'\n"
      << "set yrange [0:*]\n"
      << "plot 'curves.csv' using 1:3 with lines title '" << s << "', '' using 1:5 with lines title '" << c << "'\n";
}

void write_prediction_plot(std::ostream& out, const std::vector<std::string>& labels) {
  out << "# gnuplot script: held-out actual vs predicted load per traffic type\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,600\n"
      << "set xlabel 'sample'\n"
      << "set ylabel 'load (Erlang)'\n";
  for (const auto& label : labels) {
    out << "set output 'prediction_" << label << ".png'\n"
        << "set title 'Traffic " << label << "'\n"
        << "plot 'prediction_" << label << ".csv' using 1:2 with lines title 'actual', '' using 1:3 with lines title "
           "'predicted'\n";
  }
}

void write_strategy_plot(std::ostream& out, const std::vector<std::string>& labels) {
  out << "# gnuplot script: proposed vs pure strategies per traffic type\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,600\n"
      << "set xlabel 'sample'\n";
  for (const auto& label : labels) {
    const std::string file = "comparison_" + label + ".csv";
    out << "set output 'blocking_" << label << ".png'\n"
        << "set title 'Blocking probability, traffic " << label << "'\n"
        << "set ylabel 'wait (blocking) probability'\n"
        << "plot '" << file << "' using 1:4 with lines title 'sequential', '' using 1:6 with lines title "
        << "'concurrent', '' using 1:9 with lines title 'proposed'\n"
        << "set output 'servicing_" << label << ".png'\n"
        << "set title 'Servicing time, traffic " << label << "'\n"
        << "set ylabel 'mean time in system'\n"
        << "plot '" << file << "' using 1:5 with lines title 'sequential', '' using 1:7 with lines title "
        << "'concurrent', '' using 1:10 with lines title 'proposed'\n";
  }
}

void write_summary_row(std::ostream& out, const std::string& label, const std::string& strategy,
                       const StrategySummary& s) {
  out << label << ',' << strategy << ',' << s.steps << ',' << format_number(s.mean_wait_probability) << ','
      << format_number(s.mean_system_time) << ',' << s.divergent << ',' << s.swaps << '\n';
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig config;
  for (auto kind : {TrafficKind::T1, TrafficKind::T2, TrafficKind::T3}) {
    config.traffic.push_back(TrafficSpec::defaults(kind));
    config.traffic_seed_explicit.push_back(false);
  }
  config.cells = {{7, 1.0, 2.0},  {7, 1.0, 4.0},  {7, 1.0, 6.0}, {14, 1.5, 2.0},
                  {14, 1.5, 4.0}, {14, 1.5, 6.0}, {1, 1.0, 0.5}};
  return config;
}

TrafficSpec ExperimentConfig::traffic_spec(std::size_t index) const {
  TrafficSpec spec = traffic.at(index);
  if (index >= traffic_seed_explicit.size() || !traffic_seed_explicit[index]) spec.seed = seed + index;
  return spec;
}

ExperimentConfig parse_config(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": JSON syntax error");
  }

  ExperimentConfig config = ExperimentConfig::defaults();
  ObjectReader top(root, "");
  top.read("seed", config.seed);
  top.read("out_dir", config.out_dir);

  if (const json* node = top.child("schemes")) {
    ObjectReader schemes(*node, "schemes");
    read_scheme(schemes, "sequential", config.sequential);
    read_scheme(schemes, "concurrent", config.concurrent);
    schemes.finish();
  }

  if (const json* node = top.child("curves")) {
    ObjectReader curves(*node, "curves");
    curves.read("lambda_min", config.lambda_min);
    curves.read("lambda_max", config.lambda_max);
    curves.read("lambda_step", config.lambda_step);
    curves.finish();
  }

  if (const json* node = top.child("traffic")) {
    if (!node->is_array() || node->empty()) throw ConfigError("traffic: expected a nonempty array");
    config.traffic.clear();
    config.traffic_seed_explicit.clear();
    for (std::size_t i = 0; i < node->size(); ++i) {
      ObjectReader entry((*node)[i], "traffic[" + std::to_string(i) + "]");
      std::string kind = "T1";
      entry.read("kind", kind);
      TrafficSpec spec;
      try {
        spec = TrafficSpec::defaults(traffic_kind_from_string(kind));
      } catch (const InvalidArgument& e) {
        throw ConfigError(entry.field("kind") + ": " + e.what());
      }
      entry.read("amplitude", spec.amplitude);
      entry.read("baseline", spec.baseline);
      entry.read("period_samples", spec.period_samples);
      entry.read("noise_std", spec.noise_std);
      entry.read("length", spec.length);
      entry.read("sample_period", spec.sample_period);
      entry.read("load_ceiling", spec.load_ceiling);
      config.traffic_seed_explicit.push_back(entry.has("seed"));
      entry.read("seed", spec.seed);
      entry.finish();
      config.traffic.push_back(spec);
    }
  }

  if (const json* node = top.child("predictor")) {
    ObjectReader predictor(*node, "predictor");
    predictor.read("window", config.predictor.window);
    predictor.read("bias", config.predictor.bias);
    predictor.read("mse_goal", config.predictor.mse_goal);
    std::optional<std::string> units;
    predictor.read("mse_goal_units", units);
    if (units) {
      if (*units == "load") {
        config.predictor.goal_units = MseUnits::Load;
      } else if (*units == "normalized") {
        config.predictor.goal_units = MseUnits::Normalized;
      } else {
        throw ConfigError(predictor.field("mse_goal_units") + ": expected \"load\" or \"normalized\"");
      }
    }
    predictor.read("max_neurons", config.predictor.max_neurons);
    predictor.read("ridge", config.predictor.ridge);
    predictor.read("train_fraction", config.train_fraction);
    predictor.finish();
  }

  if (const json* node = top.child("strategy")) {
    ObjectReader strategy(*node, "strategy");
    strategy.read("threshold", config.threshold);
    strategy.read("hysteresis", config.hysteresis);
    strategy.read("swap_penalty", config.swap_penalty);
    strategy.read("perfect_oracle", config.perfect_oracle);
    strategy.read("model_dir", config.model_dir);
    strategy.finish();
  }

  if (const json* node = top.child("validate")) {
    ObjectReader validate(*node, "validate");
    if (const json* cells = validate.child("cells")) {
      if (!cells->is_array() || cells->empty()) throw ConfigError("validate.cells: expected a nonempty array");
      config.cells.clear();
      for (std::size_t i = 0; i < cells->size(); ++i) {
        ObjectReader cell((*cells)[i], "validate.cells[" + std::to_string(i) + "]");
        ValidationCell v;
        cell.read("channels", v.channels);
        cell.read("mean_service_time", v.mean_service_time);
        cell.read("arrival_rate", v.arrival_rate);
        cell.finish();
        config.cells.push_back(v);
      }
    }
    validate.read("min_arrivals", config.min_arrivals);
    validate.read("horizon", config.horizon);
    validate.read("warmup_fraction", config.warmup_fraction);
    validate.read("batches", config.batches);
    validate.read("relative_tolerance", config.relative_tolerance);
    validate.read("customer_trace", config.write_customer_trace);
    validate.finish();
  }
  top.finish();

  // Nested invariants, reported against the config rather than deep in a command.
  try {
    config.sequential.validate();
    config.concurrent.validate();
    for (std::size_t i = 0; i < config.traffic.size(); ++i) config.traffic_spec(i).validate();
    config.predictor.validate();
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
      throw InvalidArgument("predictor.train_fraction must lie in (0, 1)");
    if (!(config.lambda_step > 0.0) || !(config.lambda_min >= 0.0) || !(config.lambda_max >= config.lambda_min))
      throw InvalidArgument("curves: need 0 <= lambda_min <= lambda_max and lambda_step > 0");
    if (!(config.hysteresis >= 0.0) || !(config.swap_penalty >= 0.0))
      throw InvalidArgument("strategy: hysteresis and swap_penalty must be >= 0");
    if (!(config.warmup_fraction >= 0.0 && config.warmup_fraction < 1.0))
      throw InvalidArgument("validate.warmup_fraction must lie in [0, 1)");
    if (config.batches < 20) throw InvalidArgument("validate.batches must be >= 20");
    if (!(config.relative_tolerance >= 0.0)) throw InvalidArgument("validate.relative_tolerance must be >= 0");
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

int cmd_curves(const ExperimentConfig& config, std::ostream& log) {
  ensure_out_dir(config.out_dir);
  const std::vector<PagingSchemeConfig> schemes{config.sequential, config.concurrent};
  const auto grid = arrival_grid(config.lambda_min, config.lambda_max, config.lambda_step);
  const auto rows = sweep_curves(schemes, grid);
  {
    auto out = open_output(config.out_dir / "curves.csv");
    write_curves_csv(out, schemes, rows);
  }
  {
    auto out = open_output(config.out_dir / "curves.gp");
    write_curves_plot(out, config);
  }
  const double crossover = default_crossover(config.sequential, config.concurrent);
  log << "wrote " << rows.size() << " rows to " << (config.out_dir / "curves.csv").string() << '\n'
      << "crossover lambda* = " << format_number(crossover) << " (" << config.sequential.name << " faster below, "
      << config.concurrent.name << " faster above)\n";
  return kExitOk;
}

int cmd_train(const ExperimentConfig& config, std::ostream& log) {
  ensure_out_dir(config.out_dir);
  const auto labels = traffic_labels(config);
  auto metrics_out = open_output(config.out_dir / "metrics.csv");
  auto report_out = open_output(config.out_dir / "training.csv");
  metrics_out << "traffic," << kMetricsCsvHeader << '\n';
  report_out << "traffic,neurons,final_mse,mse_units,goal_met\n";

  for (std::size_t i = 0; i < config.traffic.size(); ++i) {
    const std::string& label = labels[i];
    TrainedType trained;
    try {
      trained = train_type(config, i);
    } catch (const Error& e) {
      throw Error("traffic " + label + ": " + e.what());
    }
    const RbfModel& model = trained.trained.model;
    const auto predicted = predict_series(model, trained.test.samples);
    const std::span<const double> actual =
        std::span<const double>(trained.test.samples).subspan(static_cast<std::size_t>(model.window));

    {
      auto out = open_output(config.out_dir / ("model_" + label + ".txt"));
      write_model(out, model);
    }
    {
      auto out = open_output(config.out_dir / ("prediction_" + label + ".csv"));
      out << "t,actual,predicted\n";
      const std::size_t first = trained.train.size() + static_cast<std::size_t>(model.window);
      for (std::size_t k = 0; k < predicted.size(); ++k)
        out << first + k << ',' << format_number(actual[k]) << ',' << format_number(predicted[k]) << '\n';
    }
    const MetricsReport metrics = error_metrics(actual, predicted);
    metrics_out << label << ',' << metrics_csv_row(metrics) << '\n';
    const TrainReport& report = trained.trained.report;
    report_out << label << ',' << report.neurons << ',' << format_number(report.final_mse) << ','
               << (report.units == MseUnits::Load ? "load" : "normalized") << ','
               << (report.goal_met ? "true" : "false") << '\n';

    log << label << ": " << report.neurons << " neurons, training MSE " << format_number(report.final_mse)
        << (report.goal_met ? " (goal met)" : " (goal NOT met)") << ", held-out RMSE " << format_number(metrics.rmse)
        << ", correlation " << (metrics.pearson ? format_number(*metrics.pearson) : std::string("undefined")) << '\n';
  }
  auto plot = open_output(config.out_dir / "prediction.gp");
  write_prediction_plot(plot, labels);
  return kExitOk;
}

int cmd_strategy(const ExperimentConfig& config, std::ostream& log) {
  ensure_out_dir(config.out_dir);
  const auto labels = traffic_labels(config);
  const StrategyConfig strategy = strategy_config(config);
  auto summary_out = open_output(config.out_dir / "strategy_summary.csv");
  summary_out << "traffic,strategy,steps,mean_pwait,mean_T,divergent_steps,swaps\n";
  log << "threshold lambda* = " << format_number(strategy.threshold) << '\n';

  for (std::size_t i = 0; i < config.traffic.size(); ++i) {
    const std::string& label = labels[i];
    RbfModel model;
    TrafficSeries test;
    try {
      if (config.model_dir) {
        const auto path = *config.model_dir / ("model_" + label + ".txt");
        std::ifstream in(path);
        if (!in) throw Error("cannot read model '" + path.string() + "'");
        model = read_model(in);
        const TrafficSeries series = generate(config.traffic_spec(i));
        test = split(series, config.train_fraction, static_cast<std::size_t>(model.window) + 2).second;
      } else {
        TrainedType trained = train_type(config, i);
        model = std::move(trained.trained.model);
        test = std::move(trained.test);
      }
    } catch (const Error& e) {
      throw Error("traffic " + label + ": " + e.what());
    }

    const auto window = static_cast<std::size_t>(model.window);
    const auto perfect = perfect_predictions(test, window);
    const StrategyComparison oracle = compare_strategies(test, perfect, window, strategy);
    const StrategyComparison result =
        config.perfect_oracle ? oracle : compare_strategies(test, model, strategy);

    {
      auto out = open_output(config.out_dir / ("comparison_" + label + ".csv"));
      write_comparison_csv(out, result);
    }
    {
      auto out = open_output(config.out_dir / ("trace_" + label + ".csv"));
      write_trace_csv(out, result.intelligent);
    }
    write_summary_row(summary_out, label, "sequential", result.sequential_summary);
    write_summary_row(summary_out, label, "concurrent", result.concurrent_summary);
    write_summary_row(summary_out, label, "intelligent", result.intelligent_summary);
    write_summary_row(summary_out, label, "perfect_oracle", oracle.intelligent_summary);

    const bool beats_both = no_worse_than(result.intelligent_summary, result.sequential_summary, 1e-9) &&
                            no_worse_than(result.intelligent_summary, result.concurrent_summary, 1e-9);
    auto describe = [](const StrategySummary& s) {
      std::string text = "T=" + format_number(s.mean_system_time) + " pwait=" + format_number(s.mean_wait_probability);
      if (s.divergent) text += " (" + std::to_string(s.divergent) + " divergent steps)";
      return text;
    };
    log << label << ": sequential " << describe(result.sequential_summary) << "; concurrent "
        << describe(result.concurrent_summary) << "; intelligent " << describe(result.intelligent_summary) << ", "
        << result.intelligent_summary.swaps << " swaps" << (beats_both ? " [beats both pure strategies]" : "")
        << "; perfect oracle " << describe(oracle.intelligent_summary) << '\n';
  }
  auto plot = open_output(config.out_dir / "strategy.gp");
  write_strategy_plot(plot, labels);
  return kExitOk;
}

int cmd_validate(const ExperimentConfig& config, std::ostream& log) {
  ensure_out_dir(config.out_dir);
  std::vector<SimConfig> runs;
  for (std::size_t i = 0; i < config.cells.size(); ++i) {
    const auto& cell = config.cells[i];
    SimConfig sim;
    if (config.horizon) {
      sim.channels = cell.channels;
      sim.mean_service_time = cell.mean_service_time;
      sim.arrivals = cell.arrival_rate;
      sim.horizon = *config.horizon;
      sim.seed = config.seed;
    } else {
      sim = SimConfig::for_arrivals(cell.channels, cell.mean_service_time, cell.arrival_rate, config.min_arrivals,
                                    config.seed);
    }
    sim.warmup = config.warmup_fraction * sim.horizon;
    sim.stream = i;
    sim.batches = config.batches;
    runs.push_back(sim);
  }

  std::vector<std::future<SimResult>> jobs;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      if (!config.write_customer_trace) return simulate(runs[i]);
      auto trace = open_output(config.out_dir / ("customers_" + std::to_string(i) + ".csv"));
      return simulate(runs[i], &trace);
    }));
  }
  std::vector<SimResult> results;
  for (auto& job : jobs) results.push_back(job.get());

  auto out = open_output(config.out_dir / "validate.csv");
  out << "channels,mean_service_time,arrival_rate,analytic_pwait,sim_pwait,ci95_pwait,analytic_T,sim_T,ci95_T,"
         "arrivals,little,pass\n";
  bool all_pass = true;
  for (std::size_t i = 0; i < config.cells.size(); ++i) {
    const auto& cell = config.cells[i];
    const SimResult& sim = results[i];
    const QueueMetrics analytic =
        mean_system_time({"cell", cell.channels, cell.mean_service_time}, cell.arrival_rate);
    auto agrees = [&](double exact, double estimate, double ci) {
      return std::isfinite(exact) && std::abs(exact - estimate) <= std::max(ci, config.relative_tolerance * std::abs(exact));
    };
    const bool little = little_check(sim, cell.arrival_rate);
    const bool pass = agrees(analytic.wait_probability, sim.wait_probability_hat, sim.ci95_wait) &&
                      agrees(analytic.mean_system_time, sim.mean_system_time_hat, sim.ci95_system_time) && little;
    all_pass = all_pass && pass;
    out << cell.channels << ',' << format_number(cell.mean_service_time) << ',' << format_number(cell.arrival_rate)
        << ',' << format_number(analytic.wait_probability) << ',' << format_number(sim.wait_probability_hat) << ','
        << format_number(sim.ci95_wait) << ',' << format_number(analytic.mean_system_time) << ','
        << format_number(sim.mean_system_time_hat) << ',' << format_number(sim.ci95_system_time) << ','
        << sim.arrivals << ',' << (little ? "true" : "false") << ',' << (pass ? "pass" : "FAIL") << '\n';
    log << "c=" << cell.channels << " 1/mu=" << format_number(cell.mean_service_time)
        << " lambda=" << format_number(cell.arrival_rate) << ": pwait " << format_number(analytic.wait_probability)
        << " vs " << format_number(sim.wait_probability_hat) << " +- " << format_number(sim.ci95_wait) << ", T "
        << format_number(analytic.mean_system_time) << " vs " << format_number(sim.mean_system_time_hat) << " +- "
        << format_number(sim.ci95_system_time) << " -> " << (pass ? "pass" : "FAIL") << '\n';
  }
  return all_pass ? kExitOk : kExitValidationFailed;
}

}  // namespace paging
