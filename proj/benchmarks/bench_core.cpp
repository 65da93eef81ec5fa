#include <benchmark/benchmark.h>

#include "gwmlp/network.hpp"
#include "gwmlp/optim.hpp"
#include "gwmlp/rng.hpp"
#include "gwmlp/trainer.hpp"

using namespace gwmlp;

namespace {

Matrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  RngState rng(seed);
  return rng_standard_normal(rng, rows, cols);
}

void BM_MatMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(1, n, n);
  const Matrix b = random_matrix(2, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_mul(a, b));
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_MatMul)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

// Shapes below mirror the forecasting task: 175 monthly samples, 3 features,
// one 500-neuron hidden layer.

void BM_ForwardPass(benchmark::State& state) {
  RngState rng(3);
  const MlpModel model = init_mlp({3, 500, 1}, Activation::Linear, rng);
  const Matrix x = random_matrix(4, 175, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlp_predict(model, x));
  }
}
BENCHMARK(BM_ForwardPass);

void BM_ForwardBackward(benchmark::State& state) {
  RngState rng(5);
  const MlpModel model = init_mlp({3, 500, 1}, Activation::Linear, rng);
  const Matrix x = random_matrix(6, 175, 3);
  const Matrix y = random_matrix(7, 175, 1);
  for (auto _ : state) {
    const ForwardTrace trace = mlp_forward(model, x);
    benchmark::DoNotOptimize(mlp_backward(model, trace, y));
  }
}
BENCHMARK(BM_ForwardBackward);

void BM_AdamStep(benchmark::State& state) {
  RngState rng(8);
  MlpModel model = init_mlp({3, 500, 1}, Activation::Linear, rng);
  std::vector<Matrix> params;
  std::vector<Matrix> grads;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    params.push_back(model.weights[l]);
    params.push_back(model.biases[l]);
  }
  for (const Matrix& p : params) {
    grads.push_back(random_matrix(9, p.rows(), p.cols()));
    shapes.emplace_back(p.rows(), p.cols());
  }
  AdamState opt = adam_init(AdamHyper{}, shapes);
  for (auto _ : state) {
    adam_step(opt, params, grads, AdamHyper{});
    benchmark::DoNotOptimize(params);
  }
}
BENCHMARK(BM_AdamStep);

void BM_TrainEpochs(benchmark::State& state) {
  const Matrix x = random_matrix(10, 140, 3);
  const Matrix y = random_matrix(11, 140, 1);
  for (auto _ : state) {
    state.PauseTiming();
    RngState rng(12);
    MlpModel model = init_mlp({3, 500, 1}, Activation::Linear, rng);
    state.ResumeTiming();

    TrainOptions opts;
    opts.epochs = static_cast<std::size_t>(state.range(0));
    opts.log_every = 0;
    benchmark::DoNotOptimize(train_mlp(model, x, y, opts));
  }
}
BENCHMARK(BM_TrainEpochs)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
