// lamina: command-line front end. One command per invocation, JSON report on stdout.

#include "lamina/lamina.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace lamina;

namespace {

struct Flags {
  Level height_bound = 16;
  std::size_t max_segments = 10;
  std::string format = "json";
};

struct Diagnostic {
  std::string severity;
  std::string message;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Reads a file and folds its bytes into the input digest (FNV-1a, 64 bit).
  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    for (unsigned char c : text) digest_ = (digest_ ^ c) * 0x100000001b3ull;
    digest_ = (digest_ ^ 0xffu) * 0x100000001b3ull;
    return json::parse(text);
  }

  void error(std::string msg) { diagnostics_.push_back({"error", std::move(msg)}); }
  void warning(std::string msg) { diagnostics_.push_back({"warning", std::move(msg)}); }
  void set_result(json r) { result_ = std::move(r); }

  bool failed() const {
    return std::any_of(diagnostics_.begin(), diagnostics_.end(), [](const auto& d) { return d.severity == "error"; });
  }

  json to_json() const {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << digest_;
    json diags = json::array();
    for (const auto& d : diagnostics_) diags.push_back({{"severity", d.severity}, {"message", d.message}});
    return {{"command", command_}, {"input_digest", hex.str()}, {"result", result_}, {"diagnostics", diags}};
  }

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string command_;
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
  json result_;
  std::vector<Diagnostic> diagnostics_;
};

// --- text rendering --------------------------------------------------------------

bool looks_like_svalue(const json& j) {
  return j.is_object() && j.size() == 2 && j.contains("level") && j.contains("real");
}

std::string render(const json& j) {
  if (j.is_null()) return "0";
  if (looks_like_svalue(j))
    return "(" + std::to_string(j["level"].get<Level>()) + "," + j["real"].get<std::string>() + ")";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + render(j[i]);
    return out + "]";
  }
  if (j.is_object()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ", ") + k + ": " + render(v);
      first = false;
    }
    return out + "}";
  }
  return j.dump();
}

void print_text(const json& report) {
  std::cout << "command: " << report["command"].get<std::string>() << "\n";
  std::cout << "input_digest: " << report["input_digest"].get<std::string>() << "\n";
  const json& r = report["result"];
  if (r.is_object()) {
    for (const auto& [k, v] : r.items()) {
      if (v.is_array() && !v.empty() && v.front().is_object() && !looks_like_svalue(v.front())) {
        std::cout << k << ":\n";
        for (const auto& e : v) std::cout << "  " << render(e) << "\n";
      } else {
        std::cout << k << ": " << render(v) << "\n";
      }
    }
  } else if (r.is_array()) {
    for (const auto& e : r) std::cout << render(e) << "\n";
  } else {
    std::cout << "result: " << render(r) << "\n";
  }
  for (const auto& d : report["diagnostics"])
    std::cout << d["severity"].get<std::string>() << ": " << d["message"].get<std::string>() << "\n";
}

// --- helpers -----------------------------------------------------------------------

json unwrap(const json& j, const char* key) { return j.is_object() && j.contains(key) ? j.at(key) : j; }

WeightVector weights_from_json(const json& j, const TrainTrack& track) {
  auto w = unwrap(j, "weights").get<WeightVector>();
  if (w.size() != track.size())
    throw std::invalid_argument("weight vector has " + std::to_string(w.size()) + " entries, track has " +
                                std::to_string(track.size()) + " segments");
  return w;
}

json names(const TrainTrack& track, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(track.segments()[i]);
  return out;
}

const char* cmp_name(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "LT";
  if (o == std::strong_ordering::greater) return "GT";
  return "EQ";
}

std::vector<SValue> svalue_args(const json& e) { return e.at("args").get<std::vector<SValue>>(); }

// --- svalue ------------------------------------------------------------------------

json eval_expression(const json& e, const Flags& flags) {
  auto op = e.at("op").get<std::string>();
  json out{{"op", op}};
  if (op == "add" || op == "sum") {
    out["value"] = sum(svalue_args(e));
  } else if (op == "mul") {
    SValue acc(0, XRat(1));
    for (const auto& x : svalue_args(e)) acc = acc * x;
    out["value"] = acc;
  } else if (op == "scale") {
    out["value"] = scale(e.at("scalar").get<XRat>(), e.at("value").get<SValue>());
  } else if (op == "cmp") {
    auto args = svalue_args(e);
    if (args.size() != 2) throw std::invalid_argument("cmp takes two arguments");
    out["value"] = cmp_name(args[0] <=> args[1]);
  } else if (op == "psi") {
    auto x = e.at("value").get<SValue>();
    auto h = e.value("height", static_cast<std::size_t>(flags.height_bound));
    auto seq = psi(x, h);
    out["value"] = seq;
    out["round_trip"] = psi_inv(seq) == x;
  } else if (op == "psi_inv") {
    auto seq = e.at("seq").get<SSeq>();
    auto x = psi_inv(seq);
    out["value"] = x;
    out["round_trip"] = psi(x, seq.size()) == seq;
  } else {
    throw std::invalid_argument("unknown operation '" + op + "'");
  }
  return out;
}

void cmd_svalue(Report& rep, const json& input, const Flags& flags) {
  json exprs = unwrap(input, "expressions");
  if (!exprs.is_array()) exprs = json::array({exprs});
  json results = json::array();
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    try {
      results.push_back(eval_expression(exprs[i], flags));
    } catch (const std::exception& ex) {
      rep.error("expression " + std::to_string(i) + ": " + ex.what());
      results.push_back(nullptr);
    }
  }
  rep.set_result(results);
}

// --- track -------------------------------------------------------------------------

void cmd_track(Report& rep, const std::string& op, const std::string& track_file, const std::string& weights_file,
               const std::string& family_file, const Flags& flags) {
  auto track = track_from_json(rep.load(track_file));
  auto need = [&](const std::string& file, const char* flag) {
    if (file.empty()) throw std::invalid_argument("track " + op + " needs " + flag);
    return rep.load(file);
  };

  if (op == "strata") {
    StrataOptions opts;
    opts.height_bound = flags.height_bound;
    opts.max_segments = flags.max_segments;
    auto strata = enumerate_strata(track, opts);
    json list = json::array();
    std::size_t feasible = 0;
    for (const auto& s : strata) {
      list.push_back(stratum_json(s));
      feasible += s.feasible;
    }
    rep.set_result({{"segments", track.segments()}, {"count", strata.size()}, {"feasible", feasible}, {"strata", list}});
    return;
  }
  if (op == "filtration") {
    auto family = polynomial_family_from_json(unwrap(need(family_file, "--family"), "family"));
    auto w = height_filtration(track, family);
    rep.set_result({{"segments", track.segments()},
                    {"weights", w},
                    {"invariant", is_invariant(track, w)},
                    {"proximal", is_proximal(w)}});
    return;
  }

  auto w = weights_from_json(need(weights_file, "--weights"), track);
  if (op == "validate") {
    json violations = json::array();
    for (const auto& v : validate(track, w)) {
      violations.push_back({{"switch", v.switch_index}, {"side_a", v.side_a}, {"side_b", v.side_b}});
      rep.error("switch " + std::to_string(v.switch_index) + ": side a sums to " + v.side_a.to_string() +
                ", side b to " + v.side_b.to_string());
    }
    rep.set_result({{"invariant", violations.empty()}, {"violations", violations}});
  } else if (op == "align") {
    auto a = align_weights(w);
    rep.set_result({{"aligned", a}, {"proximal", is_proximal(a)}, {"invariant", is_invariant(track, a)}});
  } else if (op == "adjust") {
    json list = json::array();
    for (const auto& adj : adjustments(track, w))
      list.push_back({{"raised", names(track, adj.segments)}, {"result", adj.result}});
    rep.set_result({{"count", list.size()}, {"adjustments", list}});
  } else if (op == "contiguous") {
    rep.set_result({{"proximal", is_proximal(w)}, {"contiguous", is_contiguous(track, w)}});
  } else {
    throw std::invalid_argument("unknown track operation '" + op + "'");
  }
}

// --- measure -------------------------------------------------------------------------

void cmd_measure(Report& rep, const std::string& op, const std::string& measure_file, const std::string& set_file,
                 const Flags& flags) {
  auto mu = measure_from_json(rep.load(measure_file), flags.height_bound);
  const auto& d = mu.domain();
  auto whole = IntervalSet::whole(d);

  if (op == "eval") {
    auto e = set_file.empty() ? whole : set_from_json(rep.load(set_file), d);
    json by_level = json::object();
    if (auto h = mu.height())
      for (Level k = 0; k <= *h; ++k) by_level[std::to_string(k)] = nu_k(mu, e, k);
    rep.set_result({{"set", set_json(e, d)}, {"value", evaluate(mu, e)}, {"nu_k", by_level}});
  } else if (op == "decompose") {
    auto dec = decompose(mu);
    json pieces = json::array();
    for (const auto& p : dec.pieces) pieces.push_back(component_json(p, d));
    json table = json::array();
    for (auto k : dec.levels())
      table.push_back({{"level", k}, {"nu_hat", nu_hat(mu, k, whole)}, {"support", set_json(support(mu, k), d)}});
    rep.set_result({{"pieces", pieces}, {"levels", table}, {"recovers", recover_check(mu, dec)}});
  } else if (op == "validate") {
    bool graded = is_open_graded(mu);
    json out{{"open_graded", graded}};
    if (!graded) {
      rep.error("measure is not open-graded");
    } else {
      bool finite = is_locally_finite(mu);
      bool recovers = recover_check(mu);
      out["locally_finite"] = finite;
      out["recovers"] = recovers;
      if (!finite) rep.warning("measure is not locally finite");
      if (!recovers) rep.error("level decomposition does not recover the measure");
    }
    rep.set_result(out);
  } else if (op == "align") {
    auto a = align(mu);
    rep.set_result({{"measure", measure_json(a)}, {"height", a.height() ? json(*a.height()) : json(nullptr)}});
  } else {
    throw std::invalid_argument("unknown measure operation '" + op + "'");
  }
}

// --- tree ----------------------------------------------------------------------------

struct TreeArgs {
  std::string tree_file, chords_file, insert_file, from, to, as;
  std::vector<std::string> group;
};

void cmd_tree(Report& rep, const std::string& op, const TreeArgs& a) {
  if (op == "dual") {
    if (a.chords_file.empty()) throw std::invalid_argument("tree dual needs --chords");
    auto dual = dual_tree(chords_from_json(rep.load(a.chords_file)));
    auto out = dual_tree_json(dual);
    out["metric"] = verify_metric(dual.tree);
    rep.set_result(out);
    return;
  }
  if (a.tree_file.empty()) throw std::invalid_argument("tree " + op + " needs --tree");
  auto t = tree_from_json(rep.load(a.tree_file));

  if (op == "dist") {
    if (!a.from.empty() || !a.to.empty()) {
      if (a.from.empty() || a.to.empty()) throw std::invalid_argument("--from and --to go together");
      auto x = t.index_of(a.from), y = t.index_of(a.to);
      json nodes = json::array();
      for (auto n : path_nodes(t, x, y)) nodes.push_back(t.id(n));
      rep.set_result({{"from", a.from}, {"to", a.to}, {"distance", distance(t, x, y)}, {"path", nodes}});
    } else {
      rep.set_result({{"nodes", t.nodes()}, {"table", distance_table(t)}});
    }
  } else if (op == "metric") {
    bool ok = verify_metric(t);
    if (!ok) rep.error("distance table violates the metric axioms");
    json out{{"metric", ok}, {"boundary", boundary_points(t)}};
    try {
      out["infinite"] = infinite_points(t);
      out["locally_finite"] = is_locally_finite(t);
    } catch (const std::invalid_argument& ex) {
      rep.warning(std::string("infinite points undefined: ") + ex.what());
    }
    rep.set_result(out);
  } else if (op == "insert") {
    if (a.insert_file.empty()) throw std::invalid_argument("tree insert needs --insert");
    auto spec = rep.load(a.insert_file);
    auto at = spec.at("at").get<std::string>();
    auto r = tree_from_json(spec.at("tree"));
    auto attach = spec.value("attach", std::map<std::string, std::string>{});
    auto out = insert(t, at, r, attach);
    bool round_trip = isomorphic(collapse(out, r.nodes(), at), t);
    if (!round_trip) rep.error("collapsing the inserted tree does not give back the original");
    rep.set_result({{"tree", tree_json(out)}, {"round_trip", round_trip}});
  } else if (op == "collapse") {
    if (a.group.empty() || a.as.empty()) throw std::invalid_argument("tree collapse needs --group and --as");
    rep.set_result({{"tree", tree_json(collapse(t, a.group, a.as))}});
  } else {
    throw std::invalid_argument("unknown tree operation '" + op + "'");
  }
}

// --- family --------------------------------------------------------------------------

void cmd_family(Report& rep, const std::string& op, const std::string& family_file, std::optional<std::size_t> index) {
  auto f = family_from_json(unwrap(rep.load(family_file), "family"));
  if (op == "limit") {
    if (!index) throw std::invalid_argument("family limit needs --index");
    auto lim = normalized_limit(f, *index);
    rep.set_result({{"index", *index}, {"limit", lim}, {"canonical", proj_canonical(lim)}});
  } else if (op == "limits") {
    json classes = json::array();
    for (const auto& c : limit_points(f)) classes.push_back(c.canon());
    rep.set_result({{"count", classes.size()}, {"classes", classes}});
  } else {
    throw std::invalid_argument("unknown family operation '" + op + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with S-valued weights, measures and trees"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--height-bound", flags.height_bound, "height bound H")->capture_default_str();
  app.add_option("--max-segments", flags.max_segments, "segment cap for strata enumeration")->capture_default_str();
  app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string op, file, weights, family, set, measure;
  std::optional<std::size_t> index;
  TreeArgs tree_args;

  auto* sv = app.add_subcommand("svalue", "evaluate S-value expressions");
  sv->add_option("file", file, "expression file")->required();

  auto* tr = app.add_subcommand("track", "train track weights");
  tr->add_option("op", op)->required()->check(CLI::IsMember({"validate", "align", "adjust", "contiguous", "strata", "filtration"}));
  tr->add_option("--track", file, "track file")->required();
  tr->add_option("--weights", weights, "weight vector file");
  tr->add_option("--family", family, "polynomial family file");

  auto* ms = app.add_subcommand("measure", "finite-height measures");
  ms->add_option("op", op)->required()->check(CLI::IsMember({"eval", "decompose", "validate", "align"}));
  ms->add_option("--measure", measure, "measure file")->required();
  ms->add_option("--set", set, "set to evaluate (default: whole domain)");

  auto* tt = app.add_subcommand("tree", "S-metric trees and chord diagrams");
  tt->add_option("op", op)->required()->check(CLI::IsMember({"dist", "metric", "insert", "collapse", "dual"}));
  tt->add_option("--tree", tree_args.tree_file, "tree file");
  tt->add_option("--chords", tree_args.chords_file, "chord family file");
  tt->add_option("--insert", tree_args.insert_file, "insertion file {at, tree, attach}");
  tt->add_option("--from", tree_args.from);
  tt->add_option("--to", tree_args.to);
  tt->add_option("--group", tree_args.group, "nodes to collapse")->delimiter(',');
  tt->add_option("--as", tree_args.as, "name of the collapsed node");

  auto* fm = app.add_subcommand("family", "limits of monomial families");
  fm->add_option("op", op)->required()->check(CLI::IsMember({"limit", "limits"}));
  fm->add_option("--family", family, "family file")->required();
  fm->add_option("--index", index, "normalizing entry");

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  Report rep(sub->get_name() == "svalue" ? "svalue" : sub->get_name() + " " + op);
  try {
    if (sub == sv) cmd_svalue(rep, rep.load(file), flags);
    else if (sub == tr) cmd_track(rep, op, file, weights, family, flags);
    else if (sub == ms) cmd_measure(rep, op, measure, set, flags);
    else if (sub == tt) cmd_tree(rep, op, tree_args);
    else cmd_family(rep, op, family, index);
  } catch (const json::exception& ex) {
    rep.error(std::string("malformed input: ") + ex.what());
  } catch (const std::exception& ex) {
    rep.error(ex.what());
  }

  for (const auto& d : rep.diagnostics()) std::cerr << "lamina: " << d.severity << ": " << d.message << "\n";
  auto report = rep.to_json();
  if (flags.format == "text") print_text(report);
  else std::cout << report.dump(2) << "\n";
  return rep.failed() ? 1 : 0;
}
