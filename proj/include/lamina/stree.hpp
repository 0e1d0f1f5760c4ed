#pragma once

/**
 * @file stree.hpp
 * @brief Finite trees with S-valued edge lengths.
 *
 * Distances are S-sums along the unique path, so a single higher-level edge
 * dominates everything below it. Also provides insertion of a tree at a node
 * (and the quotient that undoes it), isomorphism by canonical forms, and dual
 * trees of weighted non-crossing chord families in a disk.
 */

#include "lamina/svalue.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamina {

struct EdgeSpec {
  std::string a;
  std::string b;
  SValue length;
};

class STree {
 public:
  struct Edge {
    std::size_t a;
    std::size_t b;
    SValue length;
  };
  struct Incidence {
    std::size_t node;
    std::size_t edge;
  };

  STree() = default;

  STree(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!index_.emplace(nodes_[i], i).second)
        throw std::invalid_argument("duplicate node id '" + nodes_[i] + "'");
    if (nodes_.empty()) throw std::invalid_argument("a tree needs at least one node");
    if (edges.size() + 1 != nodes_.size())
      throw std::invalid_argument("a tree on " + std::to_string(nodes_.size()) + " nodes needs " +
                                  std::to_string(nodes_.size() - 1) + " edges");
    adjacency_.resize(nodes_.size());
    for (const auto& e : edges) {
      if (e.length.is_zero()) throw std::invalid_argument("edge lengths must be nonzero");
      std::size_t a = index_of(e.a), b = index_of(e.b);
      if (a == b) throw std::invalid_argument("self-loop at '" + e.a + "'");
      adjacency_[a].push_back({b, edges_.size()});
      adjacency_[b].push_back({a, edges_.size()});
      edges_.push_back({a, b, e.length});
    }
    // n-1 edges plus connected means acyclic
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& inc : adjacency_[v])
        if (!seen[inc.node]) {
          seen[inc.node] = true;
          ++reached;
          stack.push_back(inc.node);
        }
    }
    if (reached != nodes_.size()) throw std::invalid_argument("edges do not form a connected tree");
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& id(std::size_t i) const { return nodes_.at(i); }
  const std::vector<Incidence>& incident(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  bool contains(const std::string& id) const { return index_.contains(id); }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node '" + id + "'");
    return it->second;
  }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (const auto& e : edges_) out.push_back({nodes_[e.a], nodes_[e.b], e.length});
    return out;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::map<std::string, std::size_t> index_;
};

/// Edge indices along the unique path from x to y; empty when x == y.
inline std::vector<std::size_t> path(const STree& t, std::size_t x, std::size_t y) {
  if (x >= t.size() || y >= t.size()) throw std::out_of_range("unknown node index");
  std::vector<std::optional<STree::Incidence>> parent(t.size());
  std::vector<bool> seen(t.size(), false);
  std::vector<std::size_t> queue{x};
  seen[x] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto v = queue[head];
    if (v == y) break;
    for (const auto& inc : t.incident(v))
      if (!seen[inc.node]) {
        seen[inc.node] = true;
        parent[inc.node] = STree::Incidence{v, inc.edge};
        queue.push_back(inc.node);
      }
  }
  std::vector<std::size_t> out;
  for (auto v = y; v != x; v = parent[v]->node) out.push_back(parent[v]->edge);
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> path(const STree& t, const std::string& x, const std::string& y) {
  return path(t, t.index_of(x), t.index_of(y));
}

/// Nodes visited by path(x, y), starting with x.
inline std::vector<std::size_t> path_nodes(const STree& t, std::size_t x, std::size_t y) {
  std::vector<std::size_t> out{x};
  for (auto e : path(t, x, y)) {
    const auto& edge = t.edges()[e];
    out.push_back(edge.a == out.back() ? edge.b : edge.a);
  }
  return out;
}

inline SValue distance(const STree& t, std::size_t x, std::size_t y) {
  SValue d;
  for (auto e : path(t, x, y)) d += t.edges()[e].length;
  return d;
}

inline SValue distance(const STree& t, const std::string& x, const std::string& y) {
  return distance(t, t.index_of(x), t.index_of(y));
}

using DistanceTable = std::vector<std::vector<SValue>>;

inline DistanceTable distance_table(const STree& t) {
  DistanceTable d(t.size(), std::vector<SValue>(t.size()));
  for (std::size_t x = 0; x < t.size(); ++x)
    for (std::size_t y = 0; y < t.size(); ++y) d[x][y] = distance(t, x, y);
  return d;
}

/// S-metric axioms on a distance table: d(x,y)=0 iff x=y, symmetry, and the
/// triangle inequality d(y,z) <= d(y,x) + d(x,z) over all triples.
inline bool verify_metric(const DistanceTable& d) {
  const std::size_t n = d.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (d[x].size() != n) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (d[x][y].is_zero() != (x == y)) return false;
      if (d[x][y] != d[y][x]) return false;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (d[y][z] > d[y][x] + d[x][z]) return false;
  return true;
}

inline bool verify_metric(const STree& t) { return verify_metric(distance_table(t)); }

/// Nodes with exactly one direction.
inline std::vector<std::string> boundary_points(const STree& t) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.degree(i) == 1) out.push_back(t.id(i));
  return out;
}

/**
 * For trees with level-0 lengths only: nodes y with some neighbour x such
 * that [x,y] has infinite length, i.e. is isometric to [0,inf].
 */
inline std::vector<std::string> infinite_points(const STree& t) {
  for (const auto& e : t.edges())
    if (e.length.level() != 0) throw std::invalid_argument("infinite points need level-0 edge lengths");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& inc = t.incident(i);
    if (std::any_of(inc.begin(), inc.end(), [&](const auto& x) { return t.edges()[x.edge].length.is_infinite(); }))
      out.push_back(t.id(i));
  }
  return out;
}

/// Boundary points and infinite points coincide.
inline bool is_locally_finite(const STree& t) { return boundary_points(t) == infinite_points(t); }

/**
 * Replaces node v of t by the tree r. `attach` maps nodes of r (each of
 * degree <= 1 in r) to the neighbours of v, one per direction at v; the edge
 * that joined v to that neighbour now joins the r-node instead.
 */
inline STree insert(const STree& t, const std::string& v, const STree& r,
                    const std::map<std::string, std::string>& attach) {
  std::size_t vi = t.index_of(v);
  for (const auto& id : r.nodes())
    if (t.contains(id)) throw std::invalid_argument("inserted tree reuses node id '" + id + "'");
  if (attach.size() != t.degree(vi))
    throw std::invalid_argument("insertion needs one attaching node per direction at '" + v + "'");
  std::map<std::string, std::string> by_neighbour;
  for (const auto& [rnode, neighbour] : attach) {
    std::size_t ri = r.index_of(rnode);
    if (r.degree(ri) > 1) throw std::invalid_argument("attaching node '" + rnode + "' is not a boundary node");
    std::size_t ni = t.index_of(neighbour);
    bool adjacent = std::any_of(t.incident(vi).begin(), t.incident(vi).end(),
                                [&](const auto& inc) { return inc.node == ni; });
    if (!adjacent) throw std::invalid_argument("'" + neighbour + "' is not a direction at '" + v + "'");
    if (!by_neighbour.emplace(neighbour, rnode).second)
      throw std::invalid_argument("direction '" + neighbour + "' attached twice");
  }

  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != vi) nodes.push_back(t.id(i));
  nodes.insert(nodes.end(), r.nodes().begin(), r.nodes().end());
  std::vector<EdgeSpec> edges;
  for (const auto& e : t.edges()) {
    if (e.a == vi) edges.push_back({by_neighbour.at(t.id(e.b)), t.id(e.b), e.length});
    else if (e.b == vi) edges.push_back({t.id(e.a), by_neighbour.at(t.id(e.a)), e.length});
    else edges.push_back({t.id(e.a), t.id(e.b), e.length});
  }
  auto inner = r.edge_specs();
  edges.insert(edges.end(), inner.begin(), inner.end());
  return STree(std::move(nodes), edges);
}

/// Contracts a connected set of nodes to one node named `as`.
inline STree collapse(const STree& t, const std::vector<std::string>& group, const std::string& as) {
  if (group.empty()) throw std::invalid_argument("nothing to collapse");
  std::set<std::size_t> members;
  for (const auto& id : group) members.insert(t.index_of(id));
  // connectivity of the induced subgraph
  std::set<std::size_t> seen{*members.begin()};
  std::vector<std::size_t> stack{*members.begin()};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& inc : t.incident(v))
      if (members.contains(inc.node) && seen.insert(inc.node).second) stack.push_back(inc.node);
  }
  if (seen.size() != members.size()) throw std::invalid_argument("collapsed nodes must be connected");
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!members.contains(i) && t.id(i) == as) throw std::invalid_argument("collapse target id '" + as + "' in use");

  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!members.contains(i)) nodes.push_back(t.id(i));
  nodes.push_back(as);
  std::vector<EdgeSpec> edges;
  for (const auto& e : t.edges()) {
    bool ia = members.contains(e.a), ib = members.contains(e.b);
    if (ia && ib) continue;
    edges.push_back({ia ? as : t.id(e.a), ib ? as : t.id(e.b), e.length});
  }
  return STree(std::move(nodes), edges);
}

namespace detail {

inline std::string rooted_form(const STree& t, std::size_t v, std::optional<std::size_t> parent) {
  std::vector<std::string> children;
  for (const auto& inc : t.incident(v)) {
    if (parent && inc.node == *parent) continue;
    children.push_back(t.edges()[inc.edge].length.to_string() + ":" + rooted_form(t, inc.node, v));
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  return out + ")";
}

// one or two centres of the tree, by peeling leaves
inline std::vector<std::size_t> centres(const STree& t) {
  std::vector<std::size_t> degree(t.size());
  std::vector<std::size_t> layer;
  for (std::size_t i = 0; i < t.size(); ++i) {
    degree[i] = t.degree(i);
    if (degree[i] <= 1) layer.push_back(i);
  }
  std::size_t remaining = t.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (auto v : layer)
      for (const auto& inc : t.incident(v))
        if (--degree[inc.node] == 1) next.push_back(inc.node);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

/// Canonical form of the unlabelled tree with edge lengths; node ids ignored.
inline std::string canonical_form(const STree& t) {
  std::string best;
  bool first = true;
  for (auto c : detail::centres(t)) {
    auto form = detail::rooted_form(t, c, std::nullopt);
    if (first || form < best) best = form;
    first = false;
  }
  return best;
}

inline bool isomorphic(const STree& a, const STree& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Chord families and their dual trees

struct Chord {
  int a = 0;
  int b = 0;
  SValue weight;
};

inline bool chords_cross(const Chord& c, const Chord& d) {
  auto [a, b] = std::minmax(c.a, c.b);
  auto [x, y] = std::minmax(d.a, d.b);
  return (a < x && x < b && b < y) || (x < a && a < y && y < b);
}

/// Chords between boundary marks 1..marks of a disk, pairwise non-crossing.
class ChordFamily {
 public:
  ChordFamily() = default;
  ChordFamily(int marks, std::vector<Chord> chords) : marks_(marks), chords_(std::move(chords)) {
    if (marks_ < 0) throw std::invalid_argument("mark count must be nonnegative");
    std::set<int> used;
    for (const auto& c : chords_) {
      for (int end : {c.a, c.b}) {
        if (end < 1 || end > marks_) throw std::invalid_argument("chord end outside 1.." + std::to_string(marks_));
        if (!used.insert(end).second) throw std::invalid_argument("chord ends must be distinct");
      }
      if (c.weight.is_zero()) throw std::invalid_argument("chord weights must be nonzero");
    }
    for (std::size_t i = 0; i < chords_.size(); ++i)
      for (std::size_t j = i + 1; j < chords_.size(); ++j)
        if (chords_cross(chords_[i], chords_[j]))
          throw std::invalid_argument("chords " + std::to_string(i) + " and " + std::to_string(j) + " cross");
  }

  int marks() const { return marks_; }
  const std::vector<Chord>& chords() const { return chords_; }

  /// True when boundary arc p (from mark p to mark p+1, wrapping) lies inside chord c.
  bool arc_inside(int arc, std::size_t c) const {
    auto [lo, hi] = std::minmax(chords_[c].a, chords_[c].b);
    return lo <= arc && arc < hi;
  }

 private:
  int marks_ = 0;
  std::vector<Chord> chords_;
};

/// A complementary region: the boundary arcs it touches and the chords bounding it.
struct Region {
  std::string id;
  std::vector<int> arcs;
  std::vector<std::size_t> chords;
};

struct DualTree {
  STree tree;
  std::vector<Region> regions;
  /// edge index in `tree` for each chord
  std::vector<std::size_t> chord_edge;
};

/**
 * Regions of the disk cut by the chords become nodes, each chord an edge of
 * its weight. Arc p is inside chord (lo,hi) when lo <= p < hi, and a region is
 * a class of arcs inside the same set of chords; the two regions beside
 * chord (lo,hi) are those of arcs lo and lo-1.
 */
inline DualTree dual_tree(const ChordFamily& family) {
  const int m = family.marks();
  const auto& chords = family.chords();
  if (m < 1) throw std::invalid_argument("a chord family needs at least one mark");
  auto signature = [&](int arc) {
    std::vector<bool> sig(chords.size());
    for (std::size_t c = 0; c < chords.size(); ++c) sig[c] = family.arc_inside(arc, c);
    return sig;
  };
  std::map<std::vector<bool>, std::size_t> region_of;
  std::vector<Region> regions;
  std::vector<std::size_t> arc_region(m + 1);
  for (int arc = 1; arc <= m; ++arc) {
    auto sig = signature(arc);
    auto [it, fresh] = region_of.emplace(sig, regions.size());
    if (fresh) regions.push_back({"R" + std::to_string(regions.size()), {}, {}});
    regions[it->second].arcs.push_back(arc);
    arc_region[arc] = it->second;
  }
  std::vector<EdgeSpec> edges;
  std::vector<std::size_t> chord_edge;
  for (std::size_t c = 0; c < chords.size(); ++c) {
    int lo = std::min(chords[c].a, chords[c].b);
    int before = lo == 1 ? m : lo - 1;
    std::size_t inside = arc_region[lo], outside = arc_region[before];
    regions[inside].chords.push_back(c);
    regions[outside].chords.push_back(c);
    chord_edge.push_back(edges.size());
    edges.push_back({regions[outside].id, regions[inside].id, chords[c].weight});
  }
  std::vector<std::string> ids;
  for (const auto& r : regions) ids.push_back(r.id);
  return {STree(std::move(ids), edges), std::move(regions), std::move(chord_edge)};
}

}  // namespace lamina
