#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtq/qstate.hpp"

namespace mtq {

/// Dipole rotation between the two dimer conformations, degrees.
inline constexpr double kConformationAngleDeg = 29.0;

struct SiteIndex {
  int protofilament = 0;
  int row = 0;
  friend auto operator<=>(const SiteIndex&, const SiteIndex&) = default;
};

/// Cylindrical dimer lattice: protofilaments are columns closed into a
/// ring, rows run along the axis. Crossing the seam between the last
/// protofilament and the first shifts the row by seam_shift, which is what
/// makes the lattice helical rather than a plain cylinder.
struct LatticeGeometry {
  int num_protofilaments = 13;
  int num_rows = 1;
  int seam_shift = 3;
  /// The twisted lattice supports up to six contacts per dimer; diagonal
  /// contacts are off by default and enabled here when wanted.
  bool diagonal_neighbors = false;
  /// Default semantics: a bound edge blocks entanglement across it. With
  /// maps_couple set, bound edges are instead the only coupled pairs.
  bool maps_couple = false;
  double dimer_length_nm = 8.0;
  double outer_diameter_nm = 25.0;
  double inner_diameter_nm = 15.0;

  friend bool operator==(const LatticeGeometry&, const LatticeGeometry&) = default;

  int num_sites() const { return num_protofilaments * num_rows; }

  bool contains(SiteIndex s) const {
    return s.protofilament >= 0 && s.protofilament < num_protofilaments &&
           s.row >= 0 && s.row < num_rows;
  }

  /// Flat order = lexicographic (protofilament, row) order.
  int flat_index(SiteIndex s) const { return s.protofilament * num_rows + s.row; }

  SiteIndex site_at(int flat) const { return {flat / num_rows, flat % num_rows}; }
};

inline void validate_geometry(const LatticeGeometry& g) {
  if (g.num_protofilaments < 2)
    throw std::invalid_argument("num_protofilaments must be >= 2, got " +
                                std::to_string(g.num_protofilaments));
  if (g.num_rows < 1)
    throw std::invalid_argument("num_rows must be >= 1, got " +
                                std::to_string(g.num_rows));
  if (g.seam_shift < 0)
    throw std::invalid_argument("seam_shift must be >= 0, got " +
                                std::to_string(g.seam_shift));
}

inline void check_site(const LatticeGeometry& g, SiteIndex s) {
  if (!g.contains(s))
    throw std::invalid_argument("site (" + std::to_string(s.protofilament) + "," +
                                std::to_string(s.row) + ") outside " +
                                std::to_string(g.num_protofilaments) + "x" +
                                std::to_string(g.num_rows) + " lattice");
}

namespace detail {

/// Ring step one protofilament over, seam shift applied on wrap, row left
/// unvalidated (the caller clamps after any further row offset).
inline SiteIndex lateral_raw(const LatticeGeometry& g, SiteIndex s, int direction) {
  int pf = s.protofilament + direction;
  int row = s.row;
  if (pf == g.num_protofilaments) {
    pf = 0;
    row += g.seam_shift;
  } else if (pf < 0) {
    pf = g.num_protofilaments - 1;
    row -= g.seam_shift;
  }
  return {pf, row};
}

}  // namespace detail

/// Ring neighbor one protofilament over (`direction` = +1 or -1). Empty
/// when the seam shift pushes the row off the lattice.
inline std::optional<SiteIndex> lateral_neighbor(const LatticeGeometry& g, SiteIndex s,
                                                 int direction) {
  const SiteIndex t = detail::lateral_raw(g, s, direction);
  if (!g.contains(t)) return std::nullopt;
  return t;
}

/// Adjacent sites in deterministic order: row-1, row+1 (longitudinal,
/// non-wrapping), then lateral -/+, then diagonal -/+ when enabled.
/// The -pf diagonal looks one row up and the +pf diagonal one row down,
/// offsets applied before range clamping so the relation is symmetric even
/// across the seam.
inline std::vector<SiteIndex> neighbors(const LatticeGeometry& g, SiteIndex s) {
  validate_geometry(g);
  check_site(g, s);
  std::vector<SiteIndex> out;
  auto push = [&](SiteIndex t) {
    if (g.contains(t) && std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
  };
  push({s.protofilament, s.row - 1});
  push({s.protofilament, s.row + 1});
  for (int dir : {-1, +1}) push(detail::lateral_raw(g, s, dir));
  if (g.diagonal_neighbors) {
    SiteIndex d = detail::lateral_raw(g, s, -1);
    ++d.row;
    push(d);
    d = detail::lateral_raw(g, s, +1);
    --d.row;
    push(d);
  }
  return out;
}

/// Lateral walk around the cylinder following one of the observed helical
/// repeats. `starts` names the repeat family (3-, 5- or 8-start); the row
/// gain per turn is whatever the geometry's seam provides. Ends at the row
/// boundary (or after visiting every site, whichever is first).
inline std::vector<SiteIndex> helical_path(const LatticeGeometry& g, SiteIndex start,
                                           int starts) {
  validate_geometry(g);
  check_site(g, start);
  if (starts != 3 && starts != 5 && starts != 8)
    throw std::invalid_argument("starts must be one of 3, 5, 8, got " +
                                std::to_string(starts));
  std::vector<SiteIndex> path{start};
  SiteIndex cur = start;
  for (int step = 1; step < g.num_sites(); ++step) {
    const auto next = lateral_neighbor(g, cur, +1);
    if (!next) break;
    cur = *next;
    path.push_back(cur);
  }
  return path;
}

/// Unordered lattice edge, endpoints normalized ascending so the edge
/// order is lexicographic.
struct LatticeEdge {
  SiteIndex a;
  SiteIndex b;

  LatticeEdge(SiteIndex x, SiteIndex y) : a(std::min(x, y)), b(std::max(x, y)) {
    if (x == y) throw std::invalid_argument("edge endpoints coincide");
  }

  friend auto operator<=>(const LatticeEdge&, const LatticeEdge&) = default;
};

/// Every adjacency of the lattice, ascending.
inline std::vector<LatticeEdge> lattice_edges(const LatticeGeometry& g) {
  validate_geometry(g);
  std::set<LatticeEdge> edges;
  for (int flat = 0; flat < g.num_sites(); ++flat) {
    const SiteIndex s = g.site_at(flat);
    for (SiteIndex t : neighbors(g, s)) edges.emplace(s, t);
  }
  return {edges.begin(), edges.end()};
}

/// Set of MAP-occupied lattice edges: the engram. Every bound edge is a
/// valid adjacency of the owning geometry (enforced by bind_map).
class MapBindingPattern {
 public:
  explicit MapBindingPattern(LatticeGeometry geometry) : geometry_(geometry) {
    validate_geometry(geometry_);
  }

  const LatticeGeometry& geometry() const { return geometry_; }
  const std::set<LatticeEdge>& bound_edges() const { return edges_; }
  bool contains(const LatticeEdge& e) const { return edges_.count(e) != 0; }
  std::size_t size() const { return edges_.size(); }

  friend bool operator==(const MapBindingPattern&, const MapBindingPattern&) = default;

 private:
  friend MapBindingPattern bind_map(MapBindingPattern pattern, SiteIndex a, SiteIndex b);
  friend MapBindingPattern unbind_map(MapBindingPattern pattern, SiteIndex a, SiteIndex b);

  LatticeGeometry geometry_;
  std::set<LatticeEdge> edges_;
};

/// Pattern with the edge (a,b) bound. Idempotent; the pair must be a
/// lattice adjacency.
inline MapBindingPattern bind_map(MapBindingPattern pattern, SiteIndex a, SiteIndex b) {
  check_site(pattern.geometry_, a);
  check_site(pattern.geometry_, b);
  const auto adj = neighbors(pattern.geometry_, a);
  if (std::find(adj.begin(), adj.end(), b) == adj.end())
    throw std::invalid_argument("sites (" + std::to_string(a.protofilament) + "," +
                                std::to_string(a.row) + ") and (" +
                                std::to_string(b.protofilament) + "," +
                                std::to_string(b.row) + ") are not adjacent");
  pattern.edges_.emplace(a, b);
  return pattern;
}

/// Pattern with the edge (a,b) absent. Idempotent.
inline MapBindingPattern unbind_map(MapBindingPattern pattern, SiteIndex a, SiteIndex b) {
  check_site(pattern.geometry_, a);
  check_site(pattern.geometry_, b);
  pattern.edges_.erase(LatticeEdge(a, b));
  return pattern;
}

/// Normalized symmetric difference of two engrams on the same geometry:
/// |p1 xor p2| / |all lattice edges|. A metric on patterns, 0 iff equal,
/// 1 when the patterns disagree on every edge.
inline double engram_distance(const MapBindingPattern& p1, const MapBindingPattern& p2) {
  if (!(p1.geometry() == p2.geometry()))
    throw std::invalid_argument("engram_distance: patterns use different geometries");
  const auto& e1 = p1.bound_edges();
  const auto& e2 = p2.bound_edges();
  std::size_t differing = 0;
  for (const auto& e : e1) differing += !p2.contains(e);
  for (const auto& e : e2) differing += !p1.contains(e);
  const std::size_t total = lattice_edges(p1.geometry()).size();
  return static_cast<double>(differing) / static_cast<double>(total);
}

/// Contiguous patch of sites evolving as one register. Qubit k of the
/// state is sites[k]; sites are kept in ascending (lexicographic) order.
template <typename Scalar = double>
struct CoherentDomain {
  std::vector<SiteIndex> sites;
  PureState<Scalar> state;
};

/// Connected components of the lattice after the engram's cuts, split
/// further until every component fits max_domain_size. Sites only; use
/// partition_domains when the quantum states are wanted.
///
/// Cut rule: a bound edge blocks coupling (maps_couple inverts this, making
/// the bound edges the only couplings). Oversized components are reduced by
/// repeatedly deleting each one's lexicographically smallest remaining
/// internal edge and recomputing, which is deterministic and terminates
/// because any component with two or more sites has an internal edge.
inline std::vector<std::vector<SiteIndex>> partition_sites(const LatticeGeometry& g,
                                                           const MapBindingPattern& pattern,
                                                           int max_domain_size) {
  validate_geometry(g);
  if (!(pattern.geometry() == g))
    throw std::invalid_argument("pattern geometry differs from lattice geometry");
  if (max_domain_size < 1)
    throw std::invalid_argument("max_domain_size must be >= 1, got " +
                                std::to_string(max_domain_size));

  std::vector<LatticeEdge> edges;
  for (const auto& e : lattice_edges(g)) {
    const bool bound = pattern.contains(e);
    if (g.maps_couple ? bound : !bound) edges.push_back(e);
  }

  const int n = g.num_sites();
  std::vector<int> parent(n);
  std::vector<int> comp_size(n);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  std::vector<char> removed(edges.size(), 0);
  for (;;) {
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (removed[i]) continue;
      const int ra = find(g.flat_index(edges[i].a));
      const int rb = find(g.flat_index(edges[i].b));
      if (ra != rb) parent[ra] = rb;
    }
    std::fill(comp_size.begin(), comp_size.end(), 0);
    for (int v = 0; v < n; ++v) ++comp_size[find(v)];

    std::set<int> pending;
    for (int v = 0; v < n; ++v)
      if (comp_size[find(v)] > max_domain_size) pending.insert(find(v));
    if (pending.empty()) break;

    for (std::size_t i = 0; i < edges.size() && !pending.empty(); ++i) {
      if (removed[i]) continue;
      const int root = find(g.flat_index(edges[i].a));
      if (pending.erase(root)) removed[i] = 1;
    }
  }

  std::map<int, std::vector<SiteIndex>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(g.site_at(v));
  std::vector<std::vector<SiteIndex>> out;
  out.reserve(groups.size());
  for (auto& [root, sites] : groups) out.push_back(std::move(sites));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

/// Coherent domains induced by an engram, each initialized to the all-|a>
/// product state. Domains hold dense amplitude vectors, so the size bound
/// must stay within kMaxQubits.
template <typename Scalar = double>
std::vector<CoherentDomain<Scalar>> partition_domains(const LatticeGeometry& g,
                                                      const MapBindingPattern& pattern,
                                                      int max_domain_size) {
  if (max_domain_size > kMaxQubits)
    throw std::invalid_argument("max_domain_size " + std::to_string(max_domain_size) +
                                " exceeds the dense-state cap of " +
                                std::to_string(kMaxQubits));
  auto groups = partition_sites(g, pattern, max_domain_size);
  std::vector<CoherentDomain<Scalar>> domains;
  domains.reserve(groups.size());
  for (auto& sites : groups) {
    const int k = static_cast<int>(sites.size());
    domains.push_back({std::move(sites), PureState<Scalar>::basis_state(k, 0)});
  }
  return domains;
}

/// One dimer with its classical conformation. The dipole direction is a
/// function of the conformation: the reference axis in |a>, rotated by
/// kConformationAngleDeg in |b>.
struct TubulinSite {
  SiteIndex site;
  int conformation = 0;  // 0 = |a>, 1 = |b>

  double dipole_angle_deg() const {
    return conformation == 0 ? 0.0 : kConformationAngleDeg;
  }
};

/// Unit dipole vector (cos theta, sin theta) in the lattice plane.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 2, 1> dipole_vector(const TubulinSite& t) {
  if (t.conformation != 0 && t.conformation != 1)
    throw std::invalid_argument("conformation must be 0 or 1, got " +
                                std::to_string(t.conformation));
  const Scalar rad =
      static_cast<Scalar>(t.dipole_angle_deg() * std::numbers::pi / 180.0);
  return {std::cos(rad), std::sin(rad)};
}

/// Text form: header "pf=<P> rows=<R> seam=<S>", one "bind p1 r1 p2 r2"
/// line per bound edge, ascending.
inline void write_pattern(std::ostream& os, const MapBindingPattern& pattern) {
  const auto& g = pattern.geometry();
  os << "pf=" << g.num_protofilaments << " rows=" << g.num_rows
     << " seam=" << g.seam_shift << "\n";
  for (const auto& e : pattern.bound_edges())
    os << "bind " << e.a.protofilament << " " << e.a.row << " " << e.b.protofilament
       << " " << e.b.row << "\n";
}

/// Parse the text form. Geometry flags beyond the header keep their
/// defaults; every bind line is validated as a lattice adjacency.
inline MapBindingPattern read_pattern(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("pattern input: missing header");
  {
    std::istringstream hs{line};
    std::string pf_tok, rows_tok, seam_tok, extra;
    if (!(hs >> pf_tok >> rows_tok >> seam_tok) || (hs >> extra) ||
        !pf_tok.starts_with("pf=") || !rows_tok.starts_with("rows=") ||
        !seam_tok.starts_with("seam="))
      throw std::invalid_argument(
          "pattern input: header must be 'pf=<P> rows=<R> seam=<S>'");
    LatticeGeometry g;
    try {
      g.num_protofilaments = std::stoi(pf_tok.substr(3));
      g.num_rows = std::stoi(rows_tok.substr(5));
      g.seam_shift = std::stoi(seam_tok.substr(5));
    } catch (const std::exception&) {
      throw std::invalid_argument("pattern input: malformed header number");
    }
    MapBindingPattern pattern{g};
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
      ++lineno;
      std::istringstream ls{line};
      std::string word;
      if (!(ls >> word)) continue;
      if (word != "bind")
        throw std::invalid_argument("pattern input line " + std::to_string(lineno) +
                                    ": expected 'bind <pf1> <row1> <pf2> <row2>'");
      SiteIndex a, b;
      if (!(ls >> a.protofilament >> a.row >> b.protofilament >> b.row) ||
          (ls >> word))
        throw std::invalid_argument("pattern input line " + std::to_string(lineno) +
                                    ": expected 'bind <pf1> <row1> <pf2> <row2>'");
      try {
        pattern = bind_map(std::move(pattern), a, b);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("pattern input line " + std::to_string(lineno) +
                                    ": " + e.what());
      }
    }
    return pattern;
  }
}

inline void save_pattern(const std::string& path, const MapBindingPattern& pattern) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_pattern(os, pattern);
  if (!os.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

inline MapBindingPattern load_pattern(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_pattern(is);
}

}  // namespace mtq
