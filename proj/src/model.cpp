#include "pottssos/model.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pottssos {

void ModelParams::validate() const {
  if (k < 1) throw std::invalid_argument("branching order k must be >= 1");
  if (m < 1) throw std::invalid_argument("max spin m must be >= 1");
  if (!(std::isfinite(theta) && theta > 0.0))
    throw std::invalid_argument("theta must be finite and > 0");
  if (!(std::isfinite(r) && r > 0.0))
    throw std::invalid_argument("r must be finite and > 0");
}

Activities activities_from_couplings(const Couplings& c) {
  if (!std::isfinite(c.J) || !std::isfinite(c.Jp) || !std::isfinite(c.beta))
    throw std::invalid_argument("couplings must be finite");
  if (c.beta <= 0.0) throw std::invalid_argument("beta must be > 0");
  const Activities a{std::exp(c.J * c.beta), std::exp(c.Jp * c.beta)};
  if (!(a.theta > 0.0 && a.r > 0.0 && std::isfinite(a.theta) && std::isfinite(a.r)))
    throw std::invalid_argument("activities overflow or underflow");
  return a;
}

void Configuration::set(VertexId v, int spin) {
  if (spin < 0 || spin > m_)
    throw std::out_of_range("spin " + std::to_string(spin) + " outside {0.." +
                            std::to_string(m_) + "}");
  spins_[v] = spin;
}

int Configuration::at(VertexId v) const {
  auto it = spins_.find(v);
  if (it == spins_.end())
    throw std::domain_error("vertex " + std::to_string(v) + " has no spin assigned");
  return it->second;
}

double hamiltonian(const Configuration& sigma, std::span<const Edge> edges,
                   const Couplings& c) {
  double abs_sum = 0.0;
  double delta_sum = 0.0;
  for (const auto& [x, y] : edges) {
    const int sx = sigma.at(x);
    const int sy = sigma.at(y);
    abs_sum += std::abs(sx - sy);
    delta_sum += (sx == sy) ? 1.0 : 0.0;
  }
  return -c.J * abs_sum - c.Jp * delta_sum;
}

double edge_weight(int i, int j, double theta, double r) {
  const double w = std::pow(theta, std::abs(i - j));
  return i == j ? w * r : w;
}

double gibbs_weight(const Configuration& sigma, std::span<const Edge> edges,
                    double theta, double r) {
  double w = 1.0;
  for (const auto& [x, y] : edges) w *= edge_weight(sigma.at(x), sigma.at(y), theta, r);
  return w;
}

}  // namespace pottssos
