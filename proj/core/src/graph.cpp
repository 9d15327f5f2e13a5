#include "bck/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace bck {

int VertexSet::count() const {
  int c = 0;
  for (char b : mask) c += (b != 0);
  return c;
}

VertexSet VertexSet::complement() const {
  VertexSet out(size());
  for (size_t i = 0; i < mask.size(); ++i) out.mask[i] = mask[i] ? 0 : 1;
  return out;
}

Vec VertexSet::indicator() const {
  Vec f(mask.size(), 0.0);
  for (size_t i = 0; i < mask.size(); ++i) f[i] = mask[i] ? 1.0 : 0.0;
  return f;
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw std::invalid_argument("graph: negative vertex count");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v)
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(e.u));
    if (e.u < 0 || e.v >= n_)
      throw std::invalid_argument("graph: vertex id out of range");
    if (!(e.w > 0.0))
      throw std::invalid_argument("graph: nonpositive weight on edge " +
                                  std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
    std::uint64_t key =
        (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("graph: duplicate edge " +
                                  std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  adj_off_.assign(static_cast<size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++adj_off_[static_cast<size_t>(e.u) + 1];
    ++adj_off_[static_cast<size_t>(e.v) + 1];
  }
  for (int i = 0; i < n_; ++i) adj_off_[i + 1] += adj_off_[i];
  adj_nbr_.resize(edges_.size() * 2);
  adj_w_.resize(edges_.size() * 2);
  std::vector<int> cur(adj_off_.begin(), adj_off_.end() - 1);
  for (const auto& e : edges_) {
    adj_nbr_[cur[e.u]] = e.v;
    adj_w_[cur[e.u]++] = e.w;
    adj_nbr_[cur[e.v]] = e.u;
    adj_w_[cur[e.v]++] = e.w;
  }
}

double Graph::weighted_degree(int i) const {
  double d = 0.0;
  for (double w : neighbor_weights(i)) d += w;
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d = std::max(d, degree(i));
  return d;
}

double Graph::max_weighted_degree() const {
  double d = 0.0;
  for (int i = 0; i < n_; ++i) d = std::max(d, weighted_degree(i));
  return d;
}

int Graph::num_components() const {
  std::vector<char> visited(static_cast<size_t>(n_), 0);
  std::vector<int> stack;
  int comps = 0;
  for (int s = 0; s < n_; ++s) {
    if (visited[s]) continue;
    ++comps;
    visited[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j : neighbors(i)) {
        if (!visited[j]) {
          visited[j] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  return comps;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("parse error, line " + std::to_string(line) + ": " +
                           msg);
}

bool next_content_line(std::istream& in, std::string& line, int& lineno,
                       char comment) {
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == comment) continue;
    return true;
  }
  return false;
}

Graph parse_metis(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_content_line(in, line, lineno, '%'))
    parse_fail(lineno, "missing METIS header");
  std::istringstream hdr(line);
  long n = -1, m = -1;
  std::string fmt = "0";
  hdr >> n >> m;
  if (!hdr || n < 0 || m < 0) parse_fail(lineno, "malformed METIS header");
  hdr >> fmt;
  bool edge_weights = fmt.size() >= 1 && fmt.back() == '1';
  if (fmt != "0" && fmt != "1" && fmt != "00" && fmt != "001" && fmt != "01")
    parse_fail(lineno, "unsupported METIS format flag '" + fmt + "'");

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  // weights of the reverse direction, for the symmetry check
  std::vector<std::vector<std::pair<int, double>>> half(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    if (!next_content_line(in, line, lineno, '%'))
      parse_fail(lineno, "missing adjacency line for vertex " +
                             std::to_string(i + 1));
    std::istringstream ls(line);
    long j;
    while (ls >> j) {
      double w = 1.0;
      if (edge_weights && !(ls >> w))
        parse_fail(lineno, "missing edge weight");
      if (j < 1 || j > n) parse_fail(lineno, "vertex id out of range");
      int a = static_cast<int>(i), b = static_cast<int>(j - 1);
      if (a == b) parse_fail(lineno, "self-loop");
      if (!(w > 0.0)) parse_fail(lineno, "nonpositive weight");
      if (a < b) {
        half[static_cast<size_t>(a)].push_back({b, w});
      } else {
        // match against the stored forward direction
        auto& fw = half[static_cast<size_t>(b)];
        auto it = std::find_if(fw.begin(), fw.end(),
                               [&](const auto& p) { return p.first == a; });
        if (it == fw.end() || it->second != w)
          parse_fail(lineno, "asymmetric adjacency between " +
                                 std::to_string(b + 1) + " and " +
                                 std::to_string(a + 1));
        it->first = -1;  // consumed
        edges.push_back({b, a, w});
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (const auto& p : half[static_cast<size_t>(a)])
      if (p.first >= 0)
        parse_fail(lineno, "asymmetric adjacency between " +
                               std::to_string(a + 1) + " and " +
                               std::to_string(p.first + 1));
  if (static_cast<long>(edges.size()) != m)
    parse_fail(lineno, "edge count mismatch: header says " + std::to_string(m) +
                           ", adjacency has " + std::to_string(edges.size()));
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph parse_matrix_market(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) parse_fail(1, "empty stream");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    parse_fail(lineno, "expected MatrixMarket coordinate banner");
  if (field != "real" && field != "pattern" && field != "integer")
    parse_fail(lineno, "unsupported field '" + field + "'");
  if (symmetry != "symmetric")
    parse_fail(lineno, "expected symmetric matrix, got '" + symmetry + "'");
  bool has_value = field != "pattern";

  if (!next_content_line(in, line, lineno, '%'))
    parse_fail(lineno, "missing size line");
  std::istringstream sz(line);
  long rows = -1, cols = -1, nnz = -1;
  sz >> rows >> cols >> nnz;
  if (!sz || rows < 0 || cols != rows || nnz < 0)
    parse_fail(lineno, "malformed size line (square symmetric expected)");

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(nnz));
  for (long e = 0; e < nnz; ++e) {
    if (!next_content_line(in, line, lineno, '%'))
      parse_fail(lineno, "missing entry " + std::to_string(e + 1));
    std::istringstream ls(line);
    long i, j;
    double w = 1.0;
    ls >> i >> j;
    if (has_value) ls >> w;
    if (!ls) parse_fail(lineno, "malformed entry");
    if (i < 1 || i > rows || j < 1 || j > rows)
      parse_fail(lineno, "index out of range");
    if (i == j) parse_fail(lineno, "self-loop (diagonal entry)");
    if (!(w > 0.0)) parse_fail(lineno, "nonpositive weight");
    edges.push_back({static_cast<int>(std::min(i, j) - 1),
                     static_cast<int>(std::max(i, j) - 1), w});
  }
  return Graph(static_cast<int>(rows), std::move(edges));
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<Edge> edges;
  long max_id = 0;
  while (next_content_line(in, line, lineno, '#')) {
    std::istringstream ls(line);
    long i, j;
    double w = 1.0;
    ls >> i >> j;
    if (!ls) parse_fail(lineno, "expected 'i j [w]'");
    ls >> w;  // optional
    if (i < 1 || j < 1) parse_fail(lineno, "vertex ids are 1-based");
    if (i == j) parse_fail(lineno, "self-loop");
    if (!(w > 0.0)) parse_fail(lineno, "nonpositive weight");
    max_id = std::max({max_id, i, j});
    edges.push_back({static_cast<int>(std::min(i, j) - 1),
                     static_cast<int>(std::max(i, j) - 1), w});
  }
  return Graph(static_cast<int>(max_id), std::move(edges));
}

}  // namespace

std::string format_shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Graph parse_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::Metis:
      return parse_metis(in);
    case GraphFormat::MatrixMarket:
      return parse_matrix_market(in);
    case GraphFormat::EdgeList:
      return parse_edge_list(in);
  }
  throw std::logic_error("unknown graph format");
}

Graph parse_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return parse_graph(in, format);
}

std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += format_shortest(e.w);
    out += '\n';
  }
  return out;
}

double cut_value(const Graph& g, const VertexSet& a) {
  double c = 0.0;
  for (const auto& e : g.edges())
    if (a.contains(e.u) != a.contains(e.v)) c += e.w;
  return c;
}

double total_variation(const Graph& g, const Vec& f) {
  if (static_cast<int>(f.size()) != g.num_vertices())
    throw std::invalid_argument("total_variation: dimension mismatch");
  double tv = 0.0;
  for (const auto& e : g.edges()) tv += e.w * std::abs(f[e.u] - f[e.v]);
  return tv;
}

Vec tv_subgradient(const Graph& g, const Vec& f) {
  if (static_cast<int>(f.size()) != g.num_vertices())
    throw std::invalid_argument("tv_subgradient: dimension mismatch");
  Vec s(f.size(), 0.0);
  for (const auto& e : g.edges()) {
    double d = f[e.u] - f[e.v];
    if (d > 0.0) {
      s[e.u] += e.w;
      s[e.v] -= e.w;
    } else if (d < 0.0) {
      s[e.u] -= e.w;
      s[e.v] += e.w;
    }
  }
  return s;
}

TwoMoons two_moons_graph(int n, int k, double sigma, double noise,
                         std::uint64_t seed) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("two_moons_graph: n must be even and >= 2");
  if (k < 1) throw std::invalid_argument("two_moons_graph: k must be >= 1");
  if (k >= n) throw std::invalid_argument("two_moons_graph: k must be < n");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  int half = n / 2;
  std::vector<double> xs(static_cast<size_t>(n)), ys(static_cast<size_t>(n));
  std::vector<int> labels(static_cast<size_t>(n));
  // moon 0: lower half-circle at the origin; moon 1: upper half-circle
  // offset by (1, -0.5)
  for (int i = 0; i < half; ++i) {
    double t = std::numbers::pi * i / (half - 1 > 0 ? half - 1 : 1);
    xs[i] = std::cos(t) + gauss(rng);
    ys[i] = -std::sin(t) + gauss(rng);
    labels[i] = 0;
    xs[half + i] = 1.0 + std::cos(t) + gauss(rng);
    ys[half + i] = -0.5 + std::sin(t) + gauss(rng);
    labels[half + i] = 1;
  }

  auto dist2 = [&](int i, int j) {
    double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
    return dx * dx + dy * dy;
  };

  std::vector<std::vector<int>> knn(static_cast<size_t>(n));
  double kth_sum = 0.0;
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) cand.push_back({dist2(i, j), j});
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    cand.resize(static_cast<size_t>(k));
    std::sort(cand.begin(), cand.end());
    for (const auto& [d2, j] : cand) knn[i].push_back(j);
    kth_sum += std::sqrt(cand.back().first);
  }
  if (sigma <= 0.0) sigma = kth_sum / n;

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j : knn[i]) pairs.push_back({std::min(i, j), std::max(i, j)});
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    double w = std::exp(-dist2(i, j) / (2.0 * sigma * sigma));
    if (w <= 0.0) w = std::numeric_limits<double>::min();
    edges.push_back({i, j, w});
  }
  return {Graph(n, std::move(edges)), std::move(labels)};
}

}  // namespace bck
