// Potts-SOS model parameters and finite-volume energy.
//
// The model on a tree assigns each vertex a spin in {0, ..., m}. An edge
// <x,y> contributes -J |s(x) - s(y)| - J_p delta(s(x), s(y)) to the energy,
// so the Boltzmann weight of an edge is theta^{|i-j|} r^{delta_ij} with
// theta = exp(J beta) and r = exp(J_p beta). Everything downstream works in
// the activities (theta, r).
#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>

namespace pottssos {

/// Activities and tree/spin shape. theta and r are strictly positive.
struct ModelParams {
  int k = 2;  ///< branching order of the Cayley tree
  int m = 2;  ///< spins take values in {0, ..., m}
  double theta = 1.0;
  double r = 1.0;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

/// Coupling constants in energy units. J = 0 (Potts) and J_p = 0 (SOS) are
/// both admitted.
struct Couplings {
  double J = 0.0;
  double Jp = 0.0;
  double beta = 1.0;
};

struct Activities {
  double theta;
  double r;
};

/// theta = exp(J beta), r = exp(J_p beta). Rejects beta <= 0 and non-finite
/// input with std::invalid_argument.
Activities activities_from_couplings(const Couplings& c);

using VertexId = std::size_t;
using Edge = std::pair<VertexId, VertexId>;

/// Partial spin assignment on a vertex set.
class Configuration {
 public:
  explicit Configuration(int m = 2) : m_(m) {}

  /// Throws std::out_of_range if spin is outside {0, ..., m}.
  void set(VertexId v, int spin);
  /// Throws std::domain_error if v is unassigned.
  int at(VertexId v) const;
  bool contains(VertexId v) const { return spins_.count(v) != 0; }
  int max_spin() const { return m_; }
  std::size_t size() const { return spins_.size(); }

 private:
  int m_;
  std::map<VertexId, int> spins_;
};

/// H = -J sum |s(x)-s(y)| - J_p sum delta(s(x),s(y)) over the given edges.
double hamiltonian(const Configuration& sigma, std::span<const Edge> edges,
                   const Couplings& c);

/// theta^{|i-j|} r^{delta_ij}
double edge_weight(int i, int j, double theta, double r);

/// Product of edge weights; equals exp(-beta H) for matching activities.
double gibbs_weight(const Configuration& sigma, std::span<const Edge> edges,
                    double theta, double r);

}  // namespace pottssos
