#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings for every lamina type (nlohmann/json).
 *
 *   XRat        "p/q" | "inf"           (integers accepted on input)
 *   SValue      null | {"level": k, "real": XRat}
 *   SVector     [SValue, ...]
 *   Monomial    null | {"level": l, "coeff": "p/q", "degree": d}
 *   track       {"segments": [...], "switches": [{"a": [...], "b": [...]}], "free_ends": {...}}
 *   measure     {"domain": {"intervals": [{"id", "length"}]}, "components": [...], "height_bound": H}
 *   tree        {"nodes": [...], "edges": [{"a", "b", "len"}]}
 *   chords      {"marks": 2m, "chords": [{"ends": [i, j], "weight": SValue}]}
 */

#include "lamina/measure.hpp"
#include "lamina/stree.hpp"
#include "lamina/svector.hpp"
#include "lamina/train_track.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace lamina {

using json = nlohmann::json;

// --- XRat / Rational ---------------------------------------------------------

inline json rational_json(const Rational& r) { return rational_to_string(r); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

inline void to_json(json& j, const XRat& x) { j = x.to_string(); }
inline void from_json(const json& j, XRat& x) {
  if (j.is_string() && j.get<std::string>() == "inf") x = XRat::infinity();
  else x = XRat(rational_from_json(j));
}

// --- SValue / SVector ----------------------------------------------------------

inline void to_json(json& j, const SValue& x) {
  if (x.is_zero()) j = nullptr;
  else j = json{{"level", x.level()}, {"real", x.real_part()}};
}
inline void from_json(const json& j, SValue& x) {
  if (j.is_null()) {
    x = SValue();
    return;
  }
  if (!j.is_object()) throw std::invalid_argument("expected null or an S-value object, got " + j.dump());
  auto level = j.at("level").get<std::int64_t>();
  if (level < 0) throw std::invalid_argument("levels are nonnegative");
  x = SValue(static_cast<Level>(level), j.at("real").get<XRat>());
}

// --- families ------------------------------------------------------------------

inline json family_json(const MonomialFamily& f) {
  json out = json::array();
  for (const auto& m : f) {
    if (!m) out.push_back(nullptr);
    else out.push_back({{"level", m->level}, {"coeff", rational_json(m->coeff)}, {"degree", m->degree}});
  }
  return out;
}

inline Monomial monomial_from_json(const json& j) {
  Monomial m;
  m.level = static_cast<Level>(j.value("level", 0));
  m.coeff = rational_from_json(j.at("coeff"));
  m.degree = j.at("degree").get<int>();
  return m;
}

inline MonomialFamily family_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("a family is an array of monomials");
  MonomialFamily f;
  for (const auto& e : j) {
    if (e.is_null()) f.emplace_back();
    else f.push_back(monomial_from_json(e));
  }
  check_family(f);
  return f;
}

/// Entries: null, one monomial object, or an array of monomials (their sum).
inline PolynomialFamily polynomial_family_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("a family is an array");
  PolynomialFamily f;
  for (const auto& e : j) {
    Polynomial p;
    auto add = [&](const json& mono) {
      auto m = monomial_from_json(mono);
      if (m.level != 0) throw std::invalid_argument("height filtration expects level-0 families");
      p.push_back({m.coeff, m.degree});
    };
    if (e.is_array())
      for (const auto& mono : e) add(mono);
    else if (!e.is_null())
      add(e);
    f.push_back(normalize(std::move(p)));
  }
  return f;
}

// --- train tracks --------------------------------------------------------------

inline json track_json(const TrainTrack& t) {
  json switches = json::array();
  for (const auto& sw : t.switches()) {
    json a = json::array(), b = json::array();
    for (auto i : sw.side_a) a.push_back(t.segments()[i]);
    for (auto i : sw.side_b) b.push_back(t.segments()[i]);
    switches.push_back({{"a", a}, {"b", b}});
  }
  return {{"segments", t.segments()}, {"switches", switches}, {"free_ends", t.free_ends()}};
}

inline TrainTrack track_from_json(const json& j) {
  std::vector<SwitchSpec> switches;
  for (const auto& s : j.value("switches", json::array()))
    switches.push_back({s.at("a").get<std::vector<std::string>>(), s.at("b").get<std::vector<std::string>>()});
  return TrainTrack(j.at("segments").get<std::vector<std::string>>(), switches,
                    j.value("free_ends", std::map<std::string, int>{}));
}

inline json pattern_json(const StratumPattern& p) {
  json out = json::array();
  for (const auto& e : p) {
    if (!e) out.push_back(nullptr);
    else out.push_back({{"level", e->level}, {"finite", e->finiteness == Finiteness::Finite}});
  }
  return out;
}

inline json stratum_json(const Stratum& s) {
  json out{{"pattern", pattern_json(s.pattern)}, {"feasible", s.feasible}};
  out["witness"] = s.witness ? json(*s.witness) : json(nullptr);
  return out;
}

// --- measures ------------------------------------------------------------------

inline json component_json(const MeasureComponent& c, const TransversalDomain& domain) {
  if (const auto* a = std::get_if<Atom>(&c))
    return {{"kind", "atom"},
            {"interval", domain.id(a->interval)},
            {"position", rational_json(a->position)},
            {"level", a->level},
            {"mass", a->mass}};
  const auto& d = std::get<Density>(c);
  return {{"kind", "density"},
          {"interval", domain.id(d.interval)},
          {"from", rational_json(d.from)},
          {"to", rational_json(d.to)},
          {"level", d.level},
          {"density", d.density}};
}

inline MeasureComponent component_from_json(const json& j, const TransversalDomain& domain) {
  auto kind = j.at("kind").get<std::string>();
  auto level = static_cast<Level>(j.at("level").get<std::uint32_t>());
  std::size_t iv = domain.index_of(j.at("interval").get<std::string>());
  if (kind == "atom") return Atom{iv, rational_from_json(j.at("position")), level, j.at("mass").get<XRat>()};
  if (kind == "density")
    return Density{iv, rational_from_json(j.at("from")), rational_from_json(j.at("to")), level,
                   j.at("density").get<XRat>()};
  throw std::invalid_argument("unknown component kind '" + kind + "'");
}

inline json domain_json(const TransversalDomain& d) {
  json intervals = json::array();
  for (const auto& iv : d.intervals()) intervals.push_back({{"id", iv.id}, {"length", rational_json(iv.length)}});
  return {{"intervals", intervals}};
}

inline TransversalDomain domain_from_json(const json& j) {
  std::vector<TransversalInterval> intervals;
  for (const auto& iv : j.at("intervals"))
    intervals.push_back({iv.at("id").get<std::string>(), rational_from_json(iv.at("length"))});
  return TransversalDomain(std::move(intervals));
}

inline json measure_json(const FHMeasure& mu) {
  json comps = json::array();
  for (const auto& c : mu.components()) comps.push_back(component_json(c, mu.domain()));
  return {{"domain", domain_json(mu.domain())}, {"components", comps}, {"height_bound", mu.height_bound()}};
}

inline FHMeasure measure_from_json(const json& j, Level default_height_bound = 16) {
  auto domain = domain_from_json(j.at("domain"));
  std::vector<MeasureComponent> comps;
  for (const auto& c : j.value("components", json::array())) comps.push_back(component_from_json(c, domain));
  return FHMeasure(domain, std::move(comps), j.value("height_bound", default_height_bound));
}

/// {"pieces": [{"interval", "lo", "hi", "lo_closed", "hi_closed"} | {"interval", "at"}]}
inline IntervalSet set_from_json(const json& j, const TransversalDomain& domain) {
  std::vector<Piece> pieces;
  for (const auto& p : j.at("pieces")) {
    std::size_t iv = domain.index_of(p.at("interval").get<std::string>());
    if (p.contains("at")) {
      auto at = rational_from_json(p.at("at"));
      pieces.push_back({iv, at, at, true, true});
    } else {
      pieces.push_back({iv, rational_from_json(p.at("lo")), rational_from_json(p.at("hi")),
                        p.value("lo_closed", true), p.value("hi_closed", true)});
    }
  }
  return IntervalSet::from_pieces(std::move(pieces), domain);
}

inline json set_json(const IntervalSet& s, const TransversalDomain& domain) {
  json pieces = json::array();
  for (const auto& p : s.pieces())
    pieces.push_back({{"interval", domain.id(p.interval)},
                      {"lo", rational_json(p.lo)},
                      {"hi", rational_json(p.hi)},
                      {"lo_closed", p.lo_closed},
                      {"hi_closed", p.hi_closed}});
  return {{"pieces", pieces}};
}

// --- trees ---------------------------------------------------------------------

inline json tree_json(const STree& t) {
  json edges = json::array();
  for (const auto& e : t.edge_specs()) edges.push_back({{"a", e.a}, {"b", e.b}, {"len", e.length}});
  return {{"nodes", t.nodes()}, {"edges", edges}};
}

inline STree tree_from_json(const json& j) {
  std::vector<EdgeSpec> edges;
  for (const auto& e : j.value("edges", json::array()))
    edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("len").get<SValue>()});
  return STree(j.at("nodes").get<std::vector<std::string>>(), edges);
}

inline ChordFamily chords_from_json(const json& j) {
  std::vector<Chord> chords;
  for (const auto& c : j.value("chords", json::array())) {
    auto ends = c.at("ends").get<std::vector<int>>();
    if (ends.size() != 2) throw std::invalid_argument("a chord has two ends");
    chords.push_back({ends[0], ends[1], c.at("weight").get<SValue>()});
  }
  return ChordFamily(j.at("marks").get<int>(), std::move(chords));
}

inline json chords_json(const ChordFamily& f) {
  json chords = json::array();
  for (const auto& c : f.chords()) chords.push_back({{"ends", {c.a, c.b}}, {"weight", c.weight}});
  return {{"marks", f.marks()}, {"chords", chords}};
}

inline json dual_tree_json(const DualTree& d) {
  json regions = json::array();
  for (const auto& r : d.regions) regions.push_back({{"id", r.id}, {"arcs", r.arcs}, {"chords", r.chords}});
  return {{"tree", tree_json(d.tree)}, {"regions", regions}};
}

}  // namespace lamina
