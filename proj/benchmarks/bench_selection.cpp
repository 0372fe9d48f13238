#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dwpp/controllers.hpp"
#include "dwpp/simulator.hpp"

namespace {

using namespace dwpp;

struct Instance {
  DynamicWindow window;
  double kappa;
};

std::vector<Instance> instances() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uv(0.0, 0.5), uw(-1.0, 1.0), uk(-20.0, 20.0);
  std::vector<Instance> out(1024);
  for (auto& in : out) {
    const double a = uv(rng), b = uv(rng), c = uw(rng), d = uw(rng);
    in = {{std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d)}, uk(rng)};
  }
  return out;
}

void BM_ClosedForm(benchmark::State& state) {
  const auto data = instances();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& in = data[i++ & 1023];
    benchmark::DoNotOptimize(optimalVelocityInWindow(in.window, in.kappa));
  }
}
BENCHMARK(BM_ClosedForm);

void BM_Sampled(benchmark::State& state) {
  const auto data = instances();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& in = data[i++ & 1023];
    benchmark::DoNotOptimize(sampledVelocityInWindow(in.window, in.kappa, n));
  }
}
BENCHMARK(BM_Sampled)->Arg(11)->Arg(51)->Arg(201);

void BM_ComputeControl(benchmark::State& state) {
  const auto kind = static_cast<ControllerKind>(state.range(0));
  CornerPathSpec spec;
  spec.corner_angle = degToRad(135.0);
  const ReferencePath path = generateCornerPath(spec);
  const ControllerParams params;
  RobotState s;
  s.pose = {2.6, 0.05, 0.1};
  s.v = 0.45;
  for (auto _ : state) {
    benchmark::DoNotOptimize(computeControl(kind, s, path, params));
  }
  state.SetLabel(std::string(toString(kind)));
}
BENCHMARK(BM_ComputeControl)->DenseRange(0, 3);

void BM_ScenarioPathC(benchmark::State& state) {
  CornerPathSpec spec;
  spec.corner_angle = degToRad(135.0);
  const ReferencePath path = generateCornerPath(spec);
  const ControllerParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(runScenario(path, ControllerKind::kDWPP, params,
                                         ExecutionModel{ExecutionMode::kHardwareClip,
                                                        params.limits},
                                         NoiseModel{}, RobotState{}));
  }
}
BENCHMARK(BM_ScenarioPathC)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
