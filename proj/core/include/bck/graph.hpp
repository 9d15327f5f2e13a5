#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bck {

using Vec = std::vector<double>;

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  double w = 1.0;
};

/// Membership mask of a vertex subset A ⊂ V.
struct VertexSet {
  std::vector<char> mask;

  VertexSet() = default;
  explicit VertexSet(int n) : mask(static_cast<size_t>(n), 0) {}

  int size() const { return static_cast<int>(mask.size()); }
  bool contains(int i) const { return mask[static_cast<size_t>(i)] != 0; }
  void insert(int i) { mask[static_cast<size_t>(i)] = 1; }
  void erase(int i) { mask[static_cast<size_t>(i)] = 0; }

  int count() const;
  VertexSet complement() const;
  bool empty() const { return count() == 0; }

  /// Indicator vector 1_A.
  Vec indicator() const;

  bool operator==(const VertexSet&) const = default;
};

/// Immutable undirected weighted graph. Each undirected edge is stored once
/// (u < v) in the edge list and twice in the CSR adjacency.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const int> neighbors(int i) const {
    return {adj_nbr_.data() + adj_off_[i], adj_nbr_.data() + adj_off_[i + 1]};
  }
  std::span<const double> neighbor_weights(int i) const {
    return {adj_w_.data() + adj_off_[i], adj_w_.data() + adj_off_[i + 1]};
  }

  int degree(int i) const { return adj_off_[i + 1] - adj_off_[i]; }
  double weighted_degree(int i) const;
  int max_degree() const;
  double max_weighted_degree() const;

  /// Number of connected components.
  int num_components() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> adj_off_;
  std::vector<int> adj_nbr_;
  std::vector<double> adj_w_;
};

enum class GraphFormat { Metis, MatrixMarket, EdgeList };

/// Parses a graph in the given format. Throws std::runtime_error with the
/// offending line number on malformed input.
Graph parse_graph(std::istream& in, GraphFormat format);
Graph parse_graph_file(const std::string& path, GraphFormat format);

/// Writes the 1-based edge list "i j w" with shortest round-trip weights.
std::string serialize_edge_list(const Graph& g);

/// Shortest round-trip decimal representation of x.
std::string format_shortest(double x);

/// cut(A, Ā) = Σ_{i∈A, j∉A} w_ij.
double cut_value(const Graph& g, const VertexSet& a);

/// TV(f) = Σ_{edges} w_e |f_u − f_v|.
double total_variation(const Graph& g, const Vec& f);

/// Subgradient of TV with sign(0) := 0; satisfies ⟨f, s⟩ = TV(f).
Vec tv_subgradient(const Graph& g, const Vec& f);

struct TwoMoons {
  Graph graph;
  std::vector<int> labels;  // generating moon per vertex
};

/// Symmetrized k-NN graph of n points on two interleaved half-circles with
/// Gaussian noise; edge weight exp(−d²/(2σ²)). sigma <= 0 selects the mean
/// k-th neighbor distance. Deterministic for fixed seed.
TwoMoons two_moons_graph(int n, int k, double sigma, double noise,
                         std::uint64_t seed);

}  // namespace bck
