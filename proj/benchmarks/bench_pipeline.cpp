#include <benchmark/benchmark.h>

#include "hyperkin/expr.hpp"
#include "hyperkin/runner.hpp"
#include "hyperkin/variation.hpp"

using namespace hyperkin;

namespace {

const std::vector<double> kPoint{0.7, 0.9};

void BM_JetProduct(benchmark::State& state) {
  auto vars = VariableSet::make({"u", "v", "t"});
  Jet a = Jet::variable(vars, 0, 0.7);
  Jet b = Jet::variable(vars, 1, 0.9);
  Jet x = sin(a * 2.0) * exp(b * 0.3) + a * b;
  Jet y = cos(b) * a + b * b * 0.25;
  for (auto _ : state) {
    Jet z = x * y;
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_JetProduct);

void BM_ExprEvalJet(benchmark::State& state) {
  auto e = expr::parse("t*sin(2*v)*cos(u) + t^2*sin(v)^2");
  auto vars = VariableSet::make({"u", "v", "t"});
  std::map<std::string, Jet> env{{"u", Jet::variable(vars, 0, 0.7)},
                                 {"v", Jet::variable(vars, 1, 0.9)},
                                 {"t", Jet::variable(vars, 2, 1.0)}};
  for (auto _ : state) {
    Jet j = expr::eval_jet(*e, vars, env);
    benchmark::DoNotOptimize(j);
  }
}
BENCHMARK(BM_ExprEvalJet);

void BM_SurfaceFrame(benchmark::State& state) {
  const auto& sc = find_scenario("balloon");
  for (auto _ : state) {
    auto f = build_surface_frame(sc.motion, 1.0, kPoint);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_SurfaceFrame);

void BM_SurfaceFrameCurvedAmbient(benchmark::State& state) {
  const auto& sc = find_scenario("warped-graph");
  for (auto _ : state) {
    auto f = build_surface_frame(sc.motion, 1.0, kPoint);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_SurfaceFrameCurvedAmbient);

void BM_KinematicsFrame(benchmark::State& state) {
  const auto& sc = find_scenario("balloon");
  auto f = build_surface_frame(sc.motion, 1.0, kPoint);
  for (auto _ : state) {
    auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_KinematicsFrame);

void BM_DeltaConnRoutes(benchmark::State& state) {
  const auto& sc = find_scenario("balloon");
  auto f = build_surface_frame(sc.motion, 1.0, kPoint);
  auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
  RouteFlags flags;  // general routes only, as the runner would gate it
  for (auto _ : state) {
    auto routes = delta_conn_routes(f, k, flags);
    benchmark::DoNotOptimize(routes);
  }
}
BENCHMARK(BM_DeltaConnRoutes);

void BM_GridRun(benchmark::State& state) {
  const auto& sc = find_scenario("balloon");
  RunOptions opt;
  const int n = static_cast<int>(state.range(0));
  opt.grid = {n};
  for (auto _ : state) {
    auto r = run_grid(sc, opt);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GridRun)->Arg(5)->Arg(9)->Arg(17);

}  // namespace

BENCHMARK_MAIN();
