#include "covest/protocol_sim.hpp"

#include "covest/su2.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace covest {

namespace {

constexpr double kPi = std::numbers::pi;

// Welford accumulator with Chan's pairwise merge.
struct RunningStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }

  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

SimResult finish(const RunningStats& stats, double closed_form) {
  SimResult r;
  r.trials = stats.count;
  r.empirical_mean_error = stats.mean;
  r.standard_error = stats.standard_error();
  r.closed_form = closed_form;
  r.z_score = r.standard_error > 0 ? (r.empirical_mean_error - closed_form) / r.standard_error : 0.0;
  return r;
}

// Runs `draw(rng)` trials times across the configured partitions.
template <class Draw>
RunningStats run_partitioned(std::int64_t trials, std::uint64_t seed, int partitions, const Draw& draw) {
  std::vector<RunningStats> parts(partitions);
  auto work = [&](int p) {
    const std::int64_t base = trials / partitions;
    const std::int64_t count = base + (p < trials % partitions ? 1 : 0);
    std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(p)));
    for (std::int64_t i = 0; i < count; ++i) parts[p].add(draw(rng));
  };
  if (partitions == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int p = 0; p < partitions; ++p) threads.emplace_back(work, p);
    for (auto& t : threads) t.join();
  }
  RunningStats total;
  for (const auto& part : parts) total.merge(part);
  return total;
}

void check_trials(std::int64_t trials) {
  if (trials < 2) throw std::invalid_argument("simulate: at least 2 trials are needed for a standard error");
}

}  // namespace

std::string to_string(Protocol p) { return p == Protocol::phase ? "phase" : "su2"; }

Protocol parse_protocol(const std::string& s) {
  if (s == "phase") return Protocol::phase;
  if (s == "su2") return Protocol::su2;
  throw std::invalid_argument("unknown protocol: " + s);
}

void SimConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
  if (partitions < 1) throw std::invalid_argument("SimConfig: partitions must be >= 1");
  if (grid_size < 256 || (grid_size & (grid_size - 1)) != 0)
    throw std::invalid_argument("SimConfig: grid_size must be a power of two >= 256");
  if (n < 0 || (protocol == Protocol::su2 && n < 1)) throw std::invalid_argument("SimConfig: invalid n");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrigSeries outcome_density_phase(const PhaseDesign& design) {
  const Eigen::VectorXcd& x = design.input.amplitudes();
  const Eigen::Index d = x.size();
  if (design.seed.dim() != d) throw DimensionMismatch("outcome_density_phase: seed dimension mismatch");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = k; l < d; ++l) c(l - k) += std::conj(x(k)) * x(l) * design.seed(l, k);
  c /= 2.0 * kPi;
  return TrigSeries(c);
}

TrigSeries outcome_density_su2_class(const Su2Design& design) {
  const Su2BlockAmplitudes& blocks = design.blocks;
  if (blocks.parity() != Parity::odd) throw std::invalid_argument("outcome_density_su2_class: n must be odd");
  const Eigen::VectorXd& x = blocks.amplitudes();
  const Eigen::Index d = x.size();
  const SeedMatrix& t = design.seed;
  if (t.dim() != d) throw DimensionMismatch("outcome_density_su2_class: seed dimension mismatch");
  auto q = [&](double theta) {
    Eigen::VectorXd chi(d);
    for (Eigen::Index k = 0; k < d; ++k) chi(k) = character(IrrepLabel(2 * static_cast<int>(k + 1)), theta);
    std::complex<double> sum = 0.0;
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l) sum += x(k) * x(l) * t(l, k) * chi(k) * chi(l);
    const double s = std::sin(theta / 2.0);
    return s * s * sum.real() / kPi;
  };
  return TrigSeries::from_samples(q, 2 * static_cast<int>(d));
}

SimResult simulate(const SimConfig& config, const PhaseDesign& design) {
  config.validate();
  check_trials(config.trials);
  if (config.protocol != Protocol::phase) throw std::invalid_argument("simulate: protocol is not phase");
  if (design.input.levels() != config.n + 1) throw std::invalid_argument("simulate: design does not have n+1 levels");
  const GridSampler sampler(outcome_density_phase(design), config.grid_size);
  const RunningStats stats = run_partitioned(config.trials, config.seed, config.partitions, [&](std::mt19937_64& rng) {
    const double phi = sampler.sample(uniform01(rng));
    const double s = std::sin(phi / 2.0);
    return s * s;
  });
  return finish(stats, phase_error(design.input, design.seed));
}

SimResult simulate(const SimConfig& config, const Su2Design& design) {
  config.validate();
  check_trials(config.trials);
  if (config.protocol != Protocol::su2) throw std::invalid_argument("simulate: protocol is not su2");
  if (design.blocks.n() != config.n) throw std::invalid_argument("simulate: design was built for a different n");
  const GridSampler sampler(outcome_density_su2_class(design), config.grid_size);
  const RunningStats stats = run_partitioned(config.trials, config.seed, config.partitions, [&](std::mt19937_64& rng) {
    const double theta = sampler.sample(uniform01(rng));
    const double s = std::sin(theta / 2.0);
    return s * s;
  });
  return finish(stats, su2_error_odd(design.blocks, design.seed));
}

namespace {

void check_explicit(const Su2Design& design) {
  if (design.blocks.parity() != Parity::odd) throw std::invalid_argument("explicit oracle: n must be odd");
  if (design.blocks.blocks() > kExplicitMaxBlocks) throw std::invalid_argument("explicit oracle: too many blocks");
}

// Upper bound on the POVM density: lambda_max(T) * sum_k (2k x_k)^2.
double density_bound(const Su2Design& design) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(design.seed.entries(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& x = design.blocks.amplitudes();
  double s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double w = 2.0 * static_cast<double>(k + 1) * x(k);
    s += w * w;
  }
  return es.eigenvalues().maxCoeff() * s;
}

}  // namespace

double explicit_povm_density(const Su2Design& design, const GroupElement& g, const GroupElement& g_hat) {
  check_explicit(design);
  const Eigen::VectorXd& x = design.blocks.amplitudes();
  const Eigen::Index d = x.size();
  // Block k (dimension j = 2k) of the input: x_k x_E^j with
  // x_E^j = j^{-1/2} sum_a |a>|a>, written as the j x j coefficient matrix
  // x_k j^{-1/2} I. The channel acts as V_g (x) I, i.e. by left
  // multiplication; the POVM vector (j) x_E^j has coefficient matrix j^{1/2} I.
  Eigen::VectorXcd overlap(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const int j = 2 * static_cast<int>(k + 1);
    const IrrepLabel label(j);
    const Eigen::MatrixXcd state =
        (x(k) / std::sqrt(static_cast<double>(j))) * irrep_matrix(label, g);
    const Eigen::MatrixXcd rotated = irrep_matrix(label, g_hat).adjoint() * state;
    // <(j) x_E^j | rotated> = j^{1/2} Tr(rotated)
    overlap(k) = std::sqrt(static_cast<double>(j)) * rotated.trace();
  }
  // <phi| sum_{k,l} t_kl |w_k><w_l| |phi>
  const std::complex<double> p = overlap.adjoint() * design.seed.entries() * overlap;
  return p.real();
}

ExplicitEstimate explicit_su2_importance(const Su2Design& design, std::int64_t samples, std::uint64_t seed) {
  check_explicit(design);
  check_trials(samples);
  std::mt19937_64 rng(stream_seed(seed, 0));
  RunningStats error, norm;
  for (std::int64_t i = 0; i < samples; ++i) {
    const GroupElement g = haar_sample(rng);
    const GroupElement g_hat = haar_sample(rng);
    const double p = explicit_povm_density(design, g, g_hat);
    error.add(distance(g, g_hat) * p);
    norm.add(p);
  }
  ExplicitEstimate out;
  out.error = finish(error, su2_error_odd(design.blocks, design.seed));
  out.normalization = norm.mean;
  out.normalization_se = norm.standard_error();
  return out;
}

SimResult explicit_su2_rejection(const Su2Design& design, std::int64_t samples, std::uint64_t seed) {
  check_explicit(design);
  check_trials(samples);
  const double bound = density_bound(design);
  std::mt19937_64 rng(stream_seed(seed, 0));
  RunningStats error;
  while (error.count < samples) {
    const GroupElement g = haar_sample(rng);
    const GroupElement g_hat = haar_sample(rng);
    const double p = explicit_povm_density(design, g, g_hat);
    if (p > bound * (1.0 + 1e-9)) throw std::logic_error("explicit_su2_rejection: density exceeds its bound");
    if (uniform01(rng) * bound < p) error.add(distance(g, g_hat));
  }
  return finish(error, su2_error_odd(design.blocks, design.seed));
}

}  // namespace covest
