#include "gwmlp/optim.hpp"

#include <cmath>

#include "gwmlp/error.hpp"

namespace gwmlp {

void AdamHyper::validate() const {
  if (!(eta > 0.0)) throw ConfigError("adam: eta must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("adam: beta1 must be in [0,1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("adam: beta2 must be in [0,1)");
  if (!(epsilon > 0.0)) throw ConfigError("adam: epsilon must be > 0");
}

AdamState adam_init(const AdamHyper& hyper,
                    std::span<const std::pair<std::size_t, std::size_t>> shapes) {
  hyper.validate();
  if (shapes.empty()) {
    throw ConfigError("adam_init: empty parameter shape list");
  }
  AdamState state;
  for (auto [rows, cols] : shapes) {
    state.m.emplace_back(rows, cols);
    state.v.emplace_back(rows, cols);
  }
  state.t = 0;
  return state;
}

void adam_step(AdamState& state, std::span<Matrix* const> params,
               std::span<const Matrix* const> grads, const AdamHyper& hyper) {
  hyper.validate();
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ShapeError("adam_step: parameter/gradient/state counts differ");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!params[k]->same_shape(*grads[k]) || !params[k]->same_shape(state.m[k])) {
      throw ShapeError("adam_step: tensor " + std::to_string(k) + " shape mismatch " +
                       params[k]->shape_str() + " vs " + grads[k]->shape_str());
    }
    if (!grads[k]->all_finite()) {
      throw NumericError("adam_step: gradient tensor " + std::to_string(k) +
                         " contains non-finite values");
    }
  }

  state.t += 1;
  // Bias corrections recomputed from t so a resumed run matches exactly.
  const double corr1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.t));
  const double corr2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.t));

  for (std::size_t k = 0; k < params.size(); ++k) {
    auto p = params[k]->values();
    auto g = grads[k]->values();
    auto m = state.m[k].values();
    auto v = state.v[k].values();
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = hyper.beta1 * m[i] + (1.0 - hyper.beta1) * g[i];
      v[i] = hyper.beta2 * v[i] + (1.0 - hyper.beta2) * g[i] * g[i];
      const double m_hat = m[i] / corr1;
      const double v_hat = v[i] / corr2;
      // epsilon sits outside the square root, not under it
      p[i] -= hyper.eta * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
    }
  }
}

void adam_step(AdamState& state, std::vector<Matrix>& params,
               const std::vector<Matrix>& grads, const AdamHyper& hyper) {
  std::vector<Matrix*> p;
  std::vector<const Matrix*> g;
  p.reserve(params.size());
  g.reserve(grads.size());
  for (auto& m : params) p.push_back(&m);
  for (const auto& m : grads) g.push_back(&m);
  adam_step(state, p, g, hyper);
}

void sgd_step(std::span<Matrix* const> params,
              std::span<const Matrix* const> grads, double eta) {
  if (params.size() != grads.size()) {
    throw ShapeError("sgd_step: parameter/gradient counts differ");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!params[k]->same_shape(*grads[k])) {
      throw ShapeError("sgd_step: tensor " + std::to_string(k) + " shape mismatch " +
                       params[k]->shape_str() + " vs " + grads[k]->shape_str());
    }
    auto p = params[k]->values();
    auto g = grads[k]->values();
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] -= eta * g[i];
    }
  }
}

void sgd_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads,
              double eta) {
  std::vector<Matrix*> p;
  std::vector<const Matrix*> g;
  p.reserve(params.size());
  g.reserve(grads.size());
  for (auto& m : params) p.push_back(&m);
  for (const auto& m : grads) g.push_back(&m);
  sgd_step(p, g, eta);
}

} // namespace gwmlp
