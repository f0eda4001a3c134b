#include "paging/des.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <ostream>
#include <queue>

#include "paging/error.hpp"
#include "paging/format.hpp"
#include "paging/rng.hpp"

namespace paging {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

enum class EventKind { Arrival, Departure };

struct Event {
  double time;
  std::uint64_t sequence;
  EventKind kind;
  std::size_t customer;

  // Min-heap on (time, sequence).
  bool operator>(const Event& other) const {
    return time != other.time ? time > other.time : sequence > other.sequence;
  }
};

struct Customer {
  double arrival = 0.0;
  double service_start = 0.0;
  double departure = 0.0;
  bool waited = false;
};

class ArrivalProcess {
 public:
  explicit ArrivalProcess(const SimConfig& config) : config_(config) {}

  // Next arrival strictly after `now`. Memorylessness lets a draw that
  // overshoots its segment restart from the boundary at the next rate.
  double next(double now, Rng& rng) const {
    if (const double* rate = std::get_if<double>(&config_.arrivals)) {
      return *rate > 0.0 ? now + rng.exponential(*rate) : kNever;
    }
    const auto& series = std::get<TrafficSeries>(config_.arrivals);
    double t = now;
    for (;;) {
      const auto segment = static_cast<std::size_t>(std::floor(t / series.period));
      if (segment >= series.size()) return kNever;
      const double end = static_cast<double>(segment + 1) * series.period;
      const double rate = series.samples[segment];
      if (rate > 0.0) {
        const double candidate = t + rng.exponential(rate);
        if (candidate < end) return candidate;
      }
      t = end;
    }
  }

 private:
  const SimConfig& config_;
};

struct MeanAndHalfWidth {
  double mean;
  double half_width;
};

MeanAndHalfWidth batch_interval(const std::vector<double>& batch_means) {
  const auto b = static_cast<double>(batch_means.size());
  double mean = 0.0;
  for (double v : batch_means) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : batch_means) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (b - 1.0));
  return {mean, student_t_975(static_cast<int>(batch_means.size()) - 1) * sd / std::sqrt(b)};
}

// Largest distance from p_hat to the 95% Wilson score bounds. Batch means
// degenerate to a zero-width interval when the event is rarer than one per
// batch; the binomial interval does not.
double wilson_half_width(std::size_t successes, std::size_t trials) {
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double spread = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
  return std::max(std::abs(centre + spread - p), std::abs(p - (centre - spread)));
}

}  // namespace

void SimConfig::validate() const {
  if (channels < 1) throw InvalidArgument("simulate: channels must be >= 1");
  if (!(mean_service_time > 0.0)) throw InvalidArgument("simulate: mean_service_time must be positive");
  if (const double* rate = std::get_if<double>(&arrivals)) {
    if (!(*rate >= 0.0) || !std::isfinite(*rate)) throw InvalidArgument("simulate: arrival rate must be >= 0");
  } else {
    std::get<TrafficSeries>(arrivals).validate();
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("simulate: horizon must be positive");
  if (!(warmup >= 0.0) || !(warmup < horizon)) throw InvalidArgument("simulate: need 0 <= warmup < horizon");
  if (batches < 20) throw InvalidArgument("simulate: at least 20 batches are required");
}

SimConfig SimConfig::for_arrivals(int channels, double mean_service_time, double arrival_rate,
                                  std::size_t arrivals_wanted, std::uint64_t seed) {
  if (!(arrival_rate > 0.0)) throw InvalidArgument("for_arrivals: arrival rate must be positive");
  SimConfig config;
  config.channels = channels;
  config.mean_service_time = mean_service_time;
  config.arrivals = arrival_rate;
  // 5% head room keeps the post-warmup count above the target (Poisson sd ~ sqrt(n)).
  config.horizon = 1.05 * static_cast<double>(arrivals_wanted) / (0.9 * arrival_rate);
  config.warmup = 0.1 * config.horizon;
  config.seed = seed;
  return config;
}

SimResult simulate(const SimConfig& config, std::ostream* trace) {
  config.validate();
  Rng rng(config.seed, config.stream);
  const ArrivalProcess arrivals(config);
  const double service_rate = 1.0 / config.mean_service_time;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> calendar;
  std::uint64_t sequence = 0;
  std::vector<Customer> customers;
  std::deque<std::size_t> waiting;
  int busy = 0;
  std::size_t in_system = 0;

  // Time-weighted number in system, split into equal time batches over [warmup, horizon].
  const auto batches = static_cast<std::size_t>(config.batches);
  const double window = config.horizon - config.warmup;
  const double batch_span = window / static_cast<double>(batches);
  std::vector<double> area(batches, 0.0);
  auto accumulate_area = [&](double from, double to) {
    from = std::max(from, config.warmup);
    to = std::min(to, config.horizon);
    if (to <= from || in_system == 0) return;
    auto batch_end = [&](std::size_t b) {
      return b + 1 == batches ? config.horizon : config.warmup + static_cast<double>(b + 1) * batch_span;
    };
    auto b = std::min(static_cast<std::size_t>((from - config.warmup) / batch_span), batches - 1);
    while (from < to) {
      while (b + 1 < batches && batch_end(b) <= from) ++b;
      const double upto = std::min(to, batch_end(b));
      area[b] += static_cast<double>(in_system) * (upto - from);
      from = upto;
    }
  };

  auto start_service = [&](std::size_t id, double now) {
    ++busy;
    customers[id].service_start = now;
    calendar.push({now + rng.exponential(service_rate), sequence++, EventKind::Departure, id});
  };

  const double first = arrivals.next(0.0, rng);
  if (first <= config.horizon) calendar.push({first, sequence++, EventKind::Arrival, 0});

  double clock = 0.0;
  while (!calendar.empty()) {
    const Event event = calendar.top();
    calendar.pop();
    accumulate_area(clock, event.time);
    clock = event.time;

    if (event.kind == EventKind::Arrival) {
      const std::size_t id = customers.size();
      customers.push_back({clock, 0.0, 0.0, false});
      ++in_system;
      if (busy < config.channels) {
        start_service(id, clock);
      } else {
        customers[id].waited = true;
        waiting.push_back(id);
      }
      const double next = arrivals.next(clock, rng);
      if (next <= config.horizon) calendar.push({next, sequence++, EventKind::Arrival, 0});
    } else {
      customers[event.customer].departure = clock;
      --busy;
      --in_system;
      if (!waiting.empty()) {
        const std::size_t id = waiting.front();
        waiting.pop_front();
        start_service(id, clock);
      }
    }
  }

  if (trace != nullptr) {
    *trace << "arrival,service_start,departure\n";
    for (const auto& c : customers)
      *trace << format_number(c.arrival) << ',' << format_number(c.service_start) << ','
             << format_number(c.departure) << '\n';
  }

  const auto first_tracked = std::lower_bound(customers.begin(), customers.end(), config.warmup,
                                              [](const Customer& c, double t) { return c.arrival < t; });
  const auto tracked = static_cast<std::size_t>(customers.end() - first_tracked);
  if (tracked < config.min_arrivals || tracked < batches)
    throw DegenerateHorizon("simulate: only " + std::to_string(tracked) + " arrivals after warmup (need " +
                            std::to_string(config.min_arrivals) + ")");

  SimResult result;
  result.arrivals = tracked;
  result.served = tracked;
  std::vector<double> wait_means(batches, 0.0), time_means(batches, 0.0), count_means(batches, 0.0);
  double total_time = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * tracked / batches;
    const std::size_t hi = (b + 1) * tracked / batches;
    double waited = 0.0, time = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Customer& c = first_tracked[static_cast<std::ptrdiff_t>(i)];
      waited += c.waited ? 1.0 : 0.0;
      time += c.departure - c.arrival;
    }
    result.waited += static_cast<std::size_t>(waited);
    total_time += time;
    wait_means[b] = waited / static_cast<double>(hi - lo);
    time_means[b] = time / static_cast<double>(hi - lo);
    const double span = (b + 1 == batches) ? config.horizon - (config.warmup + static_cast<double>(b) * batch_span) : batch_span;
    count_means[b] = area[b] / span;
  }
  double total_area = 0.0;
  for (double a : area) total_area += a;

  result.wait_probability_hat = static_cast<double>(result.waited) / static_cast<double>(tracked);
  result.mean_system_time_hat = total_time / static_cast<double>(tracked);
  result.mean_in_system_hat = total_area / window;
  result.ci95_wait = std::max(batch_interval(wait_means).half_width, wilson_half_width(result.waited, tracked));
  result.ci95_system_time = batch_interval(time_means).half_width;
  result.ci95_in_system = batch_interval(count_means).half_width;
  return result;
}

std::vector<SimResult> replicate(const SimConfig& config, int count) {
  if (count < 1) throw InvalidArgument("replicate: count must be >= 1");
  std::vector<std::future<SimResult>> jobs;
  jobs.reserve(static_cast<std::size_t>(count));
  for (int r = 0; r < count; ++r) {
    SimConfig run = config;
    run.stream = static_cast<std::uint64_t>(r);
    jobs.push_back(std::async(std::launch::async, [run] { return simulate(run); }));
  }
  std::vector<SimResult> results;
  results.reserve(jobs.size());
  for (auto& job : jobs) results.push_back(job.get());
  return results;
}

bool little_check(const SimResult& result, double arrival_rate) {
  const double expected = arrival_rate * result.mean_system_time_hat;
  const double tolerance =
      3.0 * std::hypot(arrival_rate * result.ci95_system_time, result.ci95_in_system);
  return std::abs(result.mean_in_system_hat - expected) <= tolerance;
}

double student_t_975(int df) {
  static constexpr std::array<double, 30> table = {
      12.7062, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469, 2.3646, 2.3060, 2.2622, 2.2281,
      2.2010,  2.1788, 2.1604, 2.1448, 2.1314, 2.1199, 2.1098, 2.1009, 2.0930, 2.0860,
      2.0796,  2.0739, 2.0687, 2.0639, 2.0595, 2.0555, 2.0518, 2.0484, 2.0452, 2.0423};
  if (df < 1) throw InvalidArgument("student_t_975: degrees of freedom must be >= 1");
  if (df <= 30) return table[static_cast<std::size_t>(df - 1)];
  // Cornish-Fisher expansion around the normal quantile.
  const double z = 1.959963984540054;
  const double v = df;
  const double z3 = z * z * z, z5 = z3 * z * z, z7 = z5 * z * z;
  return z + (z3 + z) / (4 * v) + (5 * z5 + 16 * z3 + 3 * z) / (96 * v * v) +
         (3 * z7 + 19 * z5 + 17 * z3 - 15 * z) / (384 * v * v * v);
}

}  // namespace paging
