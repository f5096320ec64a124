#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <thread>

#include "heightlab/chow.hpp"
#include "heightlab/errors.hpp"
#include "compiled_poly.hpp"

namespace heightlab {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBlock = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream for one sample.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) : key_(splitmix64(seed ^ splitmix64(index))) {}
  double uniform_open() {  // (0, 1]
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::complex<double> complex_gaussian() {
    double r = std::sqrt(-2.0 * std::log(uniform_open()));
    double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t next() { return splitmix64(key_ + kGolden * ++counter_); }
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct BlockStats {
  double n = 0, mean = 0, m2 = 0;
};

void combine(BlockStats& a, const BlockStats& b) {
  if (b.n == 0) return;
  double n = a.n + b.n;
  double delta = b.mean - a.mean;
  a.mean += delta * b.n / n;
  a.m2 += b.m2 + delta * delta * a.n * b.n / n;
  a.n = n;
}

}  // namespace

double half_harmonic(int N) {
  double s = 0;
  for (int j = 1; j <= N; ++j) s += 1.0 / (2.0 * j);
  return s;
}

SphereIntegralEstimate sphere_log_integral(const LogAbsForm& log_abs_f, int blocks, int N, std::uint64_t samples,
                                           std::uint64_t seed) {
  if (blocks < 1 || N < 1) throw DomainError("sphere_log_integral: need blocks >= 1 and N >= 1");
  if (samples < 2) throw DomainError("sphere_log_integral: need at least 2 samples");
  const std::size_t dim = static_cast<std::size_t>(blocks) * static_cast<std::size_t>(N + 1);
  const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockStats> stats(nblocks);

  auto run_block = [&](std::uint64_t b) {
    std::vector<std::complex<double>> u(dim);
    BlockStats s;
    const std::uint64_t lo = b * kBlock, hi = std::min(samples, lo + kBlock);
    for (std::uint64_t i = lo; i < hi; ++i) {
      SampleStream rng(seed, i);
      for (int k = 0; k < blocks; ++k) {
        double norm2 = 0;
        for (int j = 0; j <= N; ++j) {
          auto g = rng.complex_gaussian();
          u[static_cast<std::size_t>(k * (N + 1) + j)] = g;
          norm2 += std::norm(g);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (int j = 0; j <= N; ++j) u[static_cast<std::size_t>(k * (N + 1) + j)] *= inv;
      }
      double v = log_abs_f(u);
      if (!std::isfinite(v)) v = std::log(DBL_MIN);
      s.n += 1;
      double delta = v - s.mean;
      s.mean += delta / s.n;
      s.m2 += delta * (v - s.mean);
    }
    stats[b] = s;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(hw, nblocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < nblocks; b = next++) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  BlockStats total;
  for (const auto& s : stats) combine(total, s);
  SphereIntegralEstimate est;
  est.value = total.mean;
  est.std_error = std::sqrt(total.m2 / (total.n - 1)) / std::sqrt(total.n);
  est.samples = samples;
  est.seed = seed;
  return est;
}

SphereIntegralEstimate sphere_log_integral(const MultiPoly& F, int blocks, int N, std::uint64_t samples,
                                           std::uint64_t seed) {
  if (F.is_zero()) throw DomainError("sphere_log_integral: zero form");
  const std::size_t dim = static_cast<std::size_t>(blocks) * static_cast<std::size_t>(N + 1);
  if (F.nvars() != dim) throw DomainError("sphere_log_integral: form must have blocks*(N+1) variables");
  if (F.is_constant()) {
    SphereIntegralEstimate est;
    est.value = std::log(std::abs(F.coeff(Exponents(dim, 0)).get_d()));
    est.samples = samples;
    est.seed = seed;
    return est;
  }
  detail::CompiledPoly cp(F);
  return sphere_log_integral([&](std::span<const std::complex<double>> u) { return std::log(std::abs(cp.eval(u))); },
                             blocks, N, samples, seed);
}

}  // namespace heightlab
