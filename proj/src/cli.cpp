#include "robmatch/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "robmatch/generators.hpp"
#include "robmatch/io.hpp"
#include "robmatch/near_stability.hpp"
#include "robmatch/oracle.hpp"
#include "robmatch/robustness.hpp"
#include "robmatch/rotations.hpp"
#include "robmatch/stability.hpp"

namespace robmatch::cli {

namespace {

using nlohmann::json;

json matching_json(const Profile& p, const Matching& m) {
  json arr = json::array();
  for (auto [u, w] : m.pairs()) arr.push_back({p.name(AgentId::u(u)), p.name(AgentId::w(w))});
  return arr;
}

json blocking_json(const Profile& p, const Matching& m) {
  json arr = json::array();
  for (const auto& bp : blocking_pairs(p, m)) arr.push_back({p.name(AgentId::u(bp.u)), p.name(AgentId::w(bp.w))});
  return arr;
}

json swaps_json(const Profile& p, const std::vector<SwapOp>& swaps) {
  json arr = json::array();
  for (const auto& s : swaps) {
    const Side other = opposite(s.owner.side);
    arr.push_back({{"agent", p.name(s.owner)},
                   {"pair", {p.name({other, s.first}), p.name({other, s.second})}}});
  }
  return arr;
}

json distance_json(const SwapDistance& d) {
  if (d.is_infinite()) return "inf";
  return d.value();
}

Objective parse_objective(const std::string& s) {
  if (s == "perfect") return Objective::Perfect;
  if (s == "egalitarian") return Objective::Egalitarian;
  return Objective::Any;
}

struct Options {
  std::string profile;
  std::string matching;
  int d = 0;
  bool dGiven = false;
  std::string objective = "any";
  std::optional<std::int64_t> eta;
  bool verbose = false;
  bool prune = false;
  std::string dot;
  std::string mode = "global";
  int maxD = 0;
  std::string csv;
  std::string family;
  int n = 3;
  int nw = -1;
  double density = 0.5;
  std::uint64_t seed = 1;
  int maxRadius = 3;
};

class Runner {
 public:
  Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

  Profile profile() const {
    return parse_profile(read_file(o_.profile), o_.prune ? AcceptabilityPolicy::Prune : AcceptabilityPolicy::Reject);
  }

  int emit(json j, bool ok) const {
    j["result"] = ok;
    out_ << j.dump(2) << '\n';
    return ok ? kExitFound : kExitNone;
  }

  void attach_witness(json& j, const Profile& p, const Profile& witness) const {
    j["witness_swaps"] = swaps_json(p, swap_sequence(p, witness));
    if (o_.verbose) j["witness_profile"] = serialize_profile(witness);
  }

  int check(const std::string& what, bool brute) const {
    const Profile p = profile();
    const Matching m = parse_matching(read_file(o_.matching), p);
    json j;
    j["matching"] = matching_json(p, m);
    j["blocking_pairs"] = blocking_json(p, m);
    if (what == "stable") return emit(j, is_stable(p, m));
    if (what == "robust") {
      if (brute) return emit(j, oracle::brute_is_d_robust(p, m, o_.d));
      const auto r = is_d_robust(p, m, o_.d);
      j["bound"] = o_.d;
      if (!r.robust && r.witness) {
        j["witness_swaps"] = swaps_json(p, r.witness_swaps);
        j["blocking_pairs"] = blocking_json(*r.witness, m);
        if (o_.verbose) j["witness_profile"] = serialize_profile(*r.witness);
      }
      return emit(j, r.robust);
    }
    if (what == "local") {
      if (brute) return emit(j, oracle::brute_nearly_stable(p, m, o_.d, NearMode::Local));
      const auto bound = local_instability(p, m);
      j["bound"] = distance_json(bound);
      if (bound.is_finite()) attach_witness(j, p, witness_profile_local(p, m, static_cast<int>(bound.value())));
      return emit(j, bound.within(o_.d));
    }
    if (what == "global") {
      if (brute) {
        const auto c = oracle::brute_global_cost(p, m, o_.maxRadius);
        j["cost"] = c ? json(*c) : json(nullptr);
        return emit(j, c && *c <= o_.d);
      }
      const auto c = global_stabilization_cost(p, m);
      j["cost"] = distance_json(c.cost);
      if (c.witness) {
        j["witness_swaps"] = swaps_json(p, c.swaps);
        if (o_.verbose) j["witness_profile"] = serialize_profile(*c.witness);
      }
      return emit(j, c.cost.within(o_.d));
    }
    throw Error(ErrorKind::Usage, "unknown check '" + what + "'");
  }

  int solve(const std::string& what, bool brute) const {
    const Profile p = profile();
    const Objective obj = parse_objective(o_.objective);
    json j;
    j["bound"] = o_.d;
    auto found = [&](const Matching& m, std::optional<Profile> witness) {
      j["matching"] = matching_json(p, m);
      j["cost"] = egalitarian_cost(p, m);
      if (witness) attach_witness(j, p, *witness);
      return emit(j, true);
    };
    auto none = [&]() {
      j["matching"] = nullptr;
      return emit(j, false);
    };
    if (what == "robust") {
      std::optional<Matching> m;
      if (brute) {
        std::optional<std::int64_t> best;
        for (const auto& s : oracle::enumerate_stable_bf(p)) {
          if (!oracle::brute_is_d_robust(p, s, o_.d)) continue;
          if (obj == Objective::Perfect && !is_perfect(p, s)) continue;
          const auto c = egalitarian_cost(p, s);
          if (!m || (obj == Objective::Egalitarian && c < *best)) {
            m = s;
            best = c;
          }
        }
      } else {
        m = find_d_robust_optimal(p, o_.d, obj);
      }
      return m ? found(*m, std::nullopt) : none();
    }
    const NearMode mode = what == "local-near" ? NearMode::Local : NearMode::Global;
    if (what != "global-near" && what != "local-near") throw Error(ErrorKind::Usage, "unknown solve target '" + what + "'");
    if (brute) {
      if (obj == Objective::Egalitarian && !o_.eta) {
        const auto c = oracle::brute_min_cost_near(p, o_.d, mode);
        if (!c) return none();
        j["cost"] = *c;
        return emit(j, true);
      }
      const auto r = oracle::brute_solve_near(p, o_.d, mode, obj, o_.eta);
      return r ? found(r->matching, r->witness) : none();
    }
    if (mode == NearMode::Global) {
      std::optional<NearSolution> r = obj == Objective::Egalitarian && !o_.eta
                                          ? min_cost_global_near(p, o_.d)
                                          : solve_global_near(p, o_.d, obj, o_.eta);
      return r ? found(r->matching, r->witness) : none();
    }
    std::optional<Matching> r = obj == Objective::Egalitarian && !o_.eta ? min_cost_local_near(p, o_.d)
                                                                         : solve_local_near(p, o_.d, obj, o_.eta);
    if (!r) return none();
    return found(*r, witness_profile_local(p, *r, o_.d));
  }

  int rotations() const {
    const Profile p = profile();
    const auto g = RotationDigraph::build(p);
    json j;
    json rots = json::array();
    for (int i = 0; i < g.size(); ++i) {
      json pairs = json::array();
      for (auto [u, w] : g.rotation(i).pairs) pairs.push_back({p.name(AgentId::u(u)), p.name(AgentId::w(w))});
      rots.push_back({{"index", i}, {"pairs", pairs}});
    }
    j["rotations"] = rots;
    j["arcs"] = g.arcs();
    j["matching"] = matching_json(p, g.u_optimal());
    if (!o_.dot.empty()) {
      if (o_.dot == "-") out_ << rotations_dot(p, g);
      else write_file(o_.dot, rotations_dot(p, g));
    }
    if (o_.dot != "-") out_ << j.dump(2) << '\n';
    return kExitFound;
  }

  int tradeoff() const {
    const Profile p = profile();
    const NearMode mode = o_.mode == "local" ? NearMode::Local : NearMode::Global;
    const auto curve = tradeoff_curve(p, mode, o_.maxD, parse_objective(o_.objective));
    std::ostringstream csv;
    csv << "d,value\n";
    json pts = json::array();
    for (const auto& pt : curve) {
      csv << pt.d << ',' << (pt.value ? std::to_string(*pt.value) : std::string("none")) << '\n';
      pts.push_back({pt.d, pt.value ? json(*pt.value) : json(nullptr)});
    }
    if (o_.csv == "-") {
      out_ << csv.str();
    } else {
      if (!o_.csv.empty()) write_file(o_.csv, csv.str());
      out_ << json{{"curve", pts}}.dump(2) << '\n';
    }
    return kExitFound;
  }

  int gen() const {
    Profile p;
    if (o_.family == "example2") p = gen_example2(o_.n);
    else if (o_.family == "example3") p = gen_example3();
    else if (o_.family == "cyclic") p = gen_cyclic_latin(o_.n);
    else if (o_.family == "random") p = gen_random(o_.n, o_.nw < 0 ? o_.n : o_.nw, o_.density, o_.seed);
    else if (o_.family == "example1") {
      auto f = gen_example1_fixture();
      if (!f) {
        out_ << "none\n";
        return kExitNone;
      }
      p = *f;
    } else {
      throw Error(ErrorKind::Usage, "unknown family '" + o_.family + "'");
    }
    out_ << serialize_profile(p);
    return kExitFound;
  }

 private:
  Options& o_;
  std::ostream& out_;
};

void add_common(CLI::App* cmd, Options& o, bool needMatching) {
  cmd->add_option("--profile", o.profile, "profile file")->required();
  if (needMatching) cmd->add_option("--matching", o.matching, "matching file")->required();
  cmd->add_flag("--prune", o.prune, "drop one-sided list entries instead of rejecting");
  cmd->add_flag("--verbose", o.verbose, "include full witness profiles");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"robmatch: robust and nearly stable matchings"};
  app.require_subcommand(1);

  std::string checkWhat, solveWhat, oracleCheckWhat, oracleSolveWhat;
  auto* check = app.add_subcommand("check", "check a matching");
  check->add_option("kind", checkWhat, "stable|robust|local|global")
      ->required()
      ->check(CLI::IsMember({"stable", "robust", "local", "global"}));
  add_common(check, o, true);
  check->add_option("--d", o.d, "budget")->check(CLI::NonNegativeNumber);

  auto add_solve = [&](CLI::App* parent, std::string& what) {
    auto* solve = parent->add_subcommand("solve", "find a matching");
    solve->add_option("kind", what, "robust|global-near|local-near")
        ->required()
        ->check(CLI::IsMember({"robust", "global-near", "local-near"}));
    add_common(solve, o, false);
    solve->add_option("--d", o.d, "budget")->required()->check(CLI::NonNegativeNumber);
    solve->add_option("--objective", o.objective, "any|perfect|egalitarian")
        ->check(CLI::IsMember({"any", "perfect", "egalitarian"}));
    solve->add_option("--eta", o.eta, "egalitarian cost bound");
    return solve;
  };
  auto* solve = add_solve(&app, solveWhat);

  auto* rot = app.add_subcommand("rotations", "list rotations and their precedence digraph");
  add_common(rot, o, false);
  rot->add_option("--dot", o.dot, "write DOT here ('-' for stdout)");

  auto* trade = app.add_subcommand("tradeoff", "best value per near-stability budget");
  add_common(trade, o, false);
  trade->add_option("--mode", o.mode, "global|local")->check(CLI::IsMember({"global", "local"}));
  trade->add_option("--max-d", o.maxD, "largest budget")->required()->check(CLI::NonNegativeNumber);
  trade->add_option("--objective", o.objective, "egalitarian|perfect")
      ->required()
      ->check(CLI::IsMember({"egalitarian", "perfect"}));
  trade->add_option("--csv", o.csv, "write CSV here ('-' for stdout)");

  auto* gen = app.add_subcommand("gen", "print a generated profile");
  gen->add_option("--family", o.family, "example1|example2|example3|cyclic|random")->required();
  gen->add_option("--n", o.n, "size parameter");
  gen->add_option("--nw", o.nw, "W side size for random (defaults to n)");
  gen->add_option("--density", o.density, "acceptance probability for random");
  gen->add_option("--seed", o.seed, "seed for random");

  auto* orc = app.add_subcommand("oracle", "brute-force counterparts");
  orc->require_subcommand(1);
  auto* ocheck = orc->add_subcommand("check", "check a matching by exhaustive search");
  ocheck->add_option("kind", oracleCheckWhat, "stable|robust|local|global")
      ->required()
      ->check(CLI::IsMember({"stable", "robust", "local", "global"}));
  add_common(ocheck, o, true);
  ocheck->add_option("--d", o.d, "budget")->check(CLI::NonNegativeNumber);
  ocheck->add_option("--max-radius", o.maxRadius, "largest distance searched for global cost");
  auto* osolve = add_solve(orc, oracleSolveWhat);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitFound;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    Runner r(o, out);
    if (check->parsed()) return r.check(checkWhat, false);
    if (solve->parsed()) return r.solve(solveWhat, false);
    if (rot->parsed()) return r.rotations();
    if (trade->parsed()) return r.tradeoff();
    if (gen->parsed()) return r.gen();
    if (ocheck->parsed()) return r.check(oracleCheckWhat, true);
    if (osolve->parsed()) return r.solve(oracleSolveWhat, true);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace robmatch::cli
