#include "plateau/kernels.hpp"
#include "plateau/lorentz.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using plateau::ExecutionPolicy;

std::vector<Eigen::MatrixXd> random_grams(int count, int dim) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Eigen::MatrixXd> grams;
  for (int k = 0; k < count; ++k) {
    Eigen::MatrixXd lifts(8, dim + 1);
    for (int i = 0; i < lifts.rows(); ++i)
      for (int j = 0; j < lifts.cols(); ++j) lifts(i, j) = u(rng);
    lifts.colwise().normalize();
    grams.push_back(lifts.transpose() * lifts);
  }
  return grams;
}

void BM_SimplexVolumes(benchmark::State& state, ExecutionPolicy policy) {
  const auto grams = random_grams(static_cast<int>(state.range(0)), 2);
  const auto rule = plateau::SimplexRule::conical(2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(plateau::simplex_volumes(grams, rule, true, policy));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

plateau::PointCloud random_cloud(int count, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  plateau::PointCloud c;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
    v(1) = g(rng);
    v(2) = g(rng);
    Eigen::VectorXd p(3);
    const double r = v.norm();
    p << std::cosh(r), std::sinh(r) / std::max(r, 1e-300) * v(1), std::sinh(r) / std::max(r, 1e-300) * v(2);
    c.points.push_back(p);
    c.weights.push_back(1.0 / count);
  }
  return c;
}

void BM_TileIntegrals(benchmark::State& state, ExecutionPolicy policy) {
  std::mt19937_64 rng(23);
  const plateau::PointCloud fine = random_cloud(400, rng), coarse = random_cloud(40, rng);
  plateau::TileProblem p;
  p.x = plateau::lorentz::origin(2);
  const plateau::PointCloud centers = random_cloud(static_cast<int>(state.range(0)), rng);
  for (const auto& c : centers.points) {
    p.tile_centers.push_back(c);
    p.inverse_tiles.push_back(Eigen::MatrixXd::Identity(3, 3));
  }
  for (auto _ : state) benchmark::DoNotOptimize(plateau::tile_integrals(p, fine, coarse, policy));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SimplexVolumes, serial, ExecutionPolicy::Serial)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_SimplexVolumes, parallel, ExecutionPolicy::Parallel)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(BM_TileIntegrals, serial, ExecutionPolicy::Serial)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_TileIntegrals, parallel, ExecutionPolicy::Parallel)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
