// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fbl/canonical.hpp"
#include "fbl/lifting.hpp"
#include "fbl/parser.hpp"
#include "fbl/pricing.hpp"
#include "fbl/symnorm.hpp"
#include "support.hpp"

using namespace fbl;

namespace {

Expr face_supported_term() {
  testing::RandomExprs gen(7);
  return testing::clip(gen.expr(3, 3, 0.1), Expr::scale(2, testing::face_cutoff(3)));
}

Limits wide() {
  Limits l;
  l.max_hyperplanes = 96;
  return l;
}

void cells(benchmark::State& state, bool parallel) {
  const auto F = to_maxmin(face_supported_term(), wide());
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cells(F, std::nullopt, wide(), parallel));
}

void pricing(benchmark::State& state, bool parallel) {
  const auto F = to_maxmin(face_supported_term(), wide());
  const auto problem = PricingProblem::from_cells(enumerate_cells(F, std::nullopt, wide()));
  const std::vector<Rational> prices{Rational(1, 3), Rational(1, 2), Rational(1, 5)};
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? price_parallel(problem, prices) : price_serial(problem, prices));
}

struct NetInstance {
  std::vector<Vector> x, points, lifts;
};

const NetInstance& net_instance() {
  static const NetInstance instance = [] {
    NetInstance in;
    const FdBanachLattice P{3, NormSpec::linf()};
    auto net = positive_unit_net(P, Rational(1, 40), 1000000);
    in.points = net.points;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(0, 6);
    auto vec = [&] {
      Vector v(6);
      for (auto& c : v) c = num(rng);
      return v;
    };
    for (int k = 0; k < 3; ++k) in.x.push_back(vec());
    for (std::size_t i = 0; i < in.points.size(); ++i) in.lifts.push_back(vec());
    return in;
  }();
  return instance;
}

void net_meets(benchmark::State& state, bool parallel) {
  const auto& in = net_instance();
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? net_meets_parallel(in.x, in.points, in.lifts)
                                      : net_meets_serial(in.x, in.points, in.lifts));
  state.counters["net_points"] = static_cast<double>(in.points.size());
}

void symnorm(benchmark::State& state, bool parallel) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(0, 6.283185307179586), weight(0, 2);
  CircleMeasure mu;
  for (int i = 0; i < state.range(0); ++i) mu.atoms.push_back({angle(rng), weight(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(parallel ? symmetric_norm(mu) : symmetric_norm_serial(mu));
}

}  // namespace

BENCHMARK_CAPTURE(cells, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cells, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(pricing, serial, false)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(pricing, parallel, true)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(net_meets, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(net_meets, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(symnorm, serial, false)->Arg(8)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(symnorm, parallel, true)->Arg(8)->Arg(256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
