#include "pottssos/treeops.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pottssos {

FiniteTree build_tree(int k, int depth) {
  if (k < 1) throw std::invalid_argument("build_tree: k must be >= 1");
  if (depth < 0) throw std::invalid_argument("build_tree: depth must be >= 0");
  FiniteTree t;
  t.k = k;
  t.depth = depth;
  t.parent.push_back(-1);
  t.children.emplace_back();
  t.generations.push_back({0});
  for (int g = 1; g <= depth; ++g) {
    std::vector<VertexId> next;
    for (VertexId v : t.generations.back()) {
      const int n_children = (v == 0) ? k + 1 : k;
      for (int c = 0; c < n_children; ++c) {
        const VertexId id = t.parent.size();
        t.parent.push_back(static_cast<std::int64_t>(v));
        t.children.emplace_back();
        t.children[v].push_back(id);
        t.edges.emplace_back(v, id);
        next.push_back(id);
      }
    }
    t.generations.push_back(std::move(next));
  }
  return t;
}

std::size_t ball_size(int k, int depth) {
  if (depth == 0) return 1;
  if (k == 1) return 1 + 2 * static_cast<std::size_t>(depth);
  std::size_t kn = 1;
  for (int i = 0; i < depth; ++i) kn *= static_cast<std::size_t>(k);
  return 1 + static_cast<std::size_t>(k + 1) * (kn - 1) / static_cast<std::size_t>(k - 1);
}

std::vector<double> exact_root_marginal(const FiniteTree& tree, const ModelParams& params,
                                        const BoundaryLaw& boundary_h) {
  params.validate();
  const int m = params.m;
  const auto q = static_cast<std::size_t>(m + 1);
  if (static_cast<int>(boundary_h.h.size()) != m)
    throw std::invalid_argument("exact_root_marginal: boundary law must have m components");
  const std::size_t n = tree.size();
  const double configs = std::pow(static_cast<double>(q), static_cast<double>(n));
  if (configs > kExactConfigCap)
    throw std::length_error("exact_root_marginal: (m+1)^|V| = " + std::to_string(configs) +
                            " exceeds the cap of " + std::to_string(kExactConfigCap) +
                            " configurations");

  std::vector<double> w(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      w[i * q + j] = edge_weight(static_cast<int>(i), static_cast<int>(j), params.theta, params.r);
  std::vector<double> bw(q, 1.0);
  for (int s = 0; s < m; ++s) bw[static_cast<std::size_t>(s)] = std::exp(boundary_h.h[static_cast<std::size_t>(s)]);

  const auto& leaves = tree.generations.back();
  std::vector<std::size_t> sigma(n, 0);
  std::vector<double> marg(q, 0.0);
  while (true) {
    double weight = 1.0;
    for (const auto& [a, b] : tree.edges) weight *= w[sigma[a] * q + sigma[b]];
    for (VertexId v : leaves) weight *= bw[sigma[v]];
    marg[sigma[0]] += weight;

    std::size_t pos = 0;
    while (pos < n && ++sigma[pos] == q) sigma[pos++] = 0;
    if (pos == n) break;
  }
  double total = 0.0;
  for (double v : marg) total += v;
  for (double& v : marg) v /= total;
  return marg;
}

std::vector<double> recursion_root_marginal(int depth, const ModelParams& params,
                                            const BoundaryLaw& boundary_h) {
  params.validate();
  if (depth < 0) throw std::invalid_argument("recursion_root_marginal: depth must be >= 0");
  BoundaryLaw field = boundary_h;
  if (depth > 0) {
    for (int g = depth - 1; g >= 1; --g) {
      BoundaryLaw f = boundary_law_map(field, params);
      for (double& v : f.h) v *= params.k;
      field = std::move(f);
    }
    BoundaryLaw f = boundary_law_map(field, params);
    for (double& v : f.h) v *= params.k + 1;
    field = std::move(f);
  }
  const auto q = static_cast<std::size_t>(params.m + 1);
  std::vector<double> marg(q, 1.0);
  double mx = 0.0;
  for (double v : field.h) mx = std::max(mx, v);
  double total = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    const double hi = i + 1 < q ? field.h[i] : 0.0;
    marg[i] = std::exp(hi - mx);
    total += marg[i];
  }
  for (double& v : marg) v /= total;
  return marg;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw(std::mt19937_64& rng, const std::array<double, 3>& probs) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return 2;
}

}  // namespace

SampleStats sample_chain(const FiniteTree& tree, const TransitionKernel& kern,
                         const StationaryLaw& nu, std::uint64_t seed, std::uint64_t n_samples) {
  SampleStats st;
  st.seed = seed;
  st.n_samples = n_samples;
  st.generation_counts.assign(tree.generations.size(), {});
  std::vector<int> gen_of(tree.size(), 0);
  for (std::size_t g = 0; g < tree.generations.size(); ++g)
    for (VertexId v : tree.generations[g]) gen_of[v] = static_cast<int>(g);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> spin(tree.size(), 0);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    spin[0] = draw(rng, nu.nu);
    ++st.root_counts[spin[0]];
    ++st.generation_counts[0][spin[0]];
    for (std::size_t v = 1; v < tree.size(); ++v) {
      const auto par = static_cast<std::size_t>(tree.parent[v]);
      spin[v] = draw(rng, kern.P[spin[par]]);
      ++st.generation_counts[static_cast<std::size_t>(gen_of[v])][spin[v]];
      if (par == 0) ++st.edge_counts[spin[0]][spin[v]];
    }
  }
  return st;
}

}  // namespace pottssos
