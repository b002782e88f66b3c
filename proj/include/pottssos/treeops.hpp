// Finite balls of the Cayley tree, exact Gibbs summation on them, the
// boundary-law recursion that should reproduce it, and a seeded sampler for
// tree-indexed Markov chains.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pottssos/chain.hpp"
#include "pottssos/model.hpp"
#include "pottssos/tisgm.hpp"

namespace pottssos {

/// Ball V_n around the root x0. Vertex ids are assigned in breadth-first
/// order, so a parent id is always smaller than its children's.
struct FiniteTree {
  int k = 2;
  int depth = 0;
  std::vector<std::int64_t> parent;  ///< -1 for the root
  std::vector<std::vector<VertexId>> children;
  std::vector<std::vector<VertexId>> generations;  ///< W_0 .. W_n
  std::vector<Edge> edges;

  std::size_t size() const { return parent.size(); }
};

/// The root has k + 1 children, every other internal vertex k.
FiniteTree build_tree(int k, int depth);

/// 1 + (k+1)(k^n - 1)/(k - 1) for k >= 2, 1 + 2n for k = 1.
std::size_t ball_size(int k, int depth);

/// Largest (m+1)^|V| that exact_root_marginal will sum over.
inline constexpr double kExactConfigCap = 1e6;

/// Root-spin distribution by summing exp(-beta H) over every configuration
/// of the ball, with weight exp(h_s) (h_m = 0) on each generation-n vertex.
/// Throws std::length_error when (m+1)^|V| exceeds kExactConfigCap.
std::vector<double> exact_root_marginal(const FiniteTree& tree, const ModelParams& params,
                                        const BoundaryLaw& boundary_h);

/// The same distribution from the boundary-law recursion: fields pass inward
/// through k F(.) per generation and (k+1) F(.) at the root.
std::vector<double> recursion_root_marginal(int depth, const ModelParams& params,
                                            const BoundaryLaw& boundary_h);

struct SampleStats {
  std::array<std::uint64_t, 3> root_counts{};
  /// Spin counts summed over each generation W_j.
  std::vector<std::array<std::uint64_t, 3>> generation_counts;
  /// (root spin, child spin) counts over the edges between W_0 and W_1.
  std::array<std::array<std::uint64_t, 3>, 3> edge_counts{};
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Draws n_samples independent chains on the tree: root from nu, each child
/// from the kernel row of its parent. Uses std::mt19937_64 with uniforms
/// (u >> 11) * 2^-53, so results are identical on every platform.
SampleStats sample_chain(const FiniteTree& tree, const TransitionKernel& kern,
                         const StationaryLaw& nu, std::uint64_t seed, std::uint64_t n_samples);

}  // namespace pottssos
