#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidsurf/cache.hpp"
#include "braidsurf/hash.hpp"
#include "braidsurf/json_io.hpp"
#include "braidsurf/lift.hpp"
#include "braidsurf/neretin.hpp"
#include "braidsurf/ocl.hpp"
#include "braidsurf/quotients.hpp"
#include "braidsurf/spherical.hpp"
#include "braidsurf/splittable.hpp"
#include "braidsurf/stem.hpp"
#include "braidsurf/version.hpp"

namespace braidsurf {

// One job per process. The CLI fills a JobConfig (flags or --config file),
// run_job validates it against the command schema before any computation,
// then dispatches. Exit codes: 0 done, 2 budget hit (payload flagged
// partial), 1 error. Payloads are deterministic for fixed (config, seed).
struct JobConfig {
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = kSplitSeed;
  long long node_budget = 1000000;
  int len_cap = 8;
  int threads = 0;  // 0 = all cores; modules stay deterministic regardless
  std::string out_path;
};

struct ResultRecord {
  std::string tool_version = kVersion;
  Json config_echo;
  Json fingerprints = Json::object();
  Json tolerances = Json::object();
  Json payload = Json::object();
  bool partial = false;
  double wall_seconds = 0;
  std::string cache_note;  // operational, not part of the reproducible payload
};

inline Json config_to_json(const JobConfig& c) {
  Json j;
  j["command"] = c.command;
  j["params"] = c.params;
  j["seed"] = c.seed;
  j["budgets"] = Json{{"nodes", c.node_budget}, {"len", c.len_cap}};
  j["threads"] = c.threads;
  if (!c.out_path.empty()) j["out"] = c.out_path;
  return j;
}

inline JobConfig config_from_json(const Json& j) {
  JobConfig c;
  c.command = j.value("command", "");
  if (j.contains("params")) c.params = j.at("params");
  c.seed = j.value("seed", kSplitSeed);
  if (j.contains("budgets")) {
    c.node_budget = j.at("budgets").value("nodes", c.node_budget);
    c.len_cap = j.at("budgets").value("len", c.len_cap);
  }
  c.threads = j.value("threads", 0);
  c.out_path = j.value("out", "");
  return c;
}

inline Json result_to_json(const ResultRecord& r) {
  Json j;
  j["tool_version"] = r.tool_version;
  j["config"] = r.config_echo;
  j["fingerprints"] = r.fingerprints;
  j["tolerances"] = r.tolerances;
  j["payload"] = r.payload;
  j["partial"] = r.partial;
  j["wall_seconds"] = r.wall_seconds;
  if (!r.cache_note.empty()) j["cache"] = r.cache_note;
  return j;
}

namespace detail {

[[noreturn]] inline void bad_config(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

inline void need(bool ok, const std::string& msg) {
  if (!ok) bad_config(msg);
}

inline void need_key(const Json& p, const char* key, const char* type) {
  if (!p.contains(key)) bad_config(std::string("missing required parameter '") + key + "'");
  const Json& v = p.at(key);
  std::string t = type;
  bool ok = (t == "string" && v.is_string()) || (t == "int" && v.is_number_integer()) ||
            (t == "number" && v.is_number()) || (t == "object" && v.is_object()) ||
            (t == "array" && v.is_array()) || (t == "bool" && v.is_boolean());
  if (!ok) bad_config(std::string("parameter '") + key + "' must be a " + type);
}

}  // namespace detail

// Schema check; throws std::invalid_argument before any computation runs.
inline void validate_config(const JobConfig& c) {
  using detail::bad_config;
  using detail::need;
  using detail::need_key;
  static const std::set<std::string> kCommands = {"enumerate", "orbits",  "schur",  "lift",
                                                  "spherical", "neretin", "probe"};
  if (!kCommands.count(c.command)) bad_config("unknown command '" + c.command + "'");
  need(c.params.is_object(), "params must be an object");
  need(c.node_budget > 0, "node budget must be positive");
  need(c.len_cap >= 0, "length cap must be nonnegative");
  need(c.threads >= 0, "threads must be nonnegative");
  const Json& p = c.params;

  if (c.command == "enumerate" || c.command == "orbits") {
    if (c.command == "orbits" && p.contains("monodromy")) {
      need_key(p, "monodromy", "object");
    } else {
      need_key(p, "group", "string");
      need_key(p, "g", "int");
      need(p.at("g").get<int>() >= 0, "g must be nonnegative");
      if (p.contains("m")) {
        need_key(p, "m", "int");
        need(p.at("m").get<int>() >= 0, "m must be nonnegative");
      }
    }
    if (p.contains("list")) need_key(p, "list", "bool");
    if (p.contains("use_aut")) need_key(p, "use_aut", "bool");
  } else if (c.command == "schur") {
    need_key(p, "monodromy", "object");
    need_key(p, "cover", "string");
  } else if (c.command == "lift") {
    need_key(p, "monodromy", "object");
    need_key(p, "level", "string");
    std::string level = p.at("level").get<std::string>();
    if (level != "bn1" && level.rfind("bn:len=", 0) != 0)
      bad_config("level must be 'bn1' or 'bn:len=<L>'");
    if (level.rfind("bn:len=", 0) == 0) {
      try {
        if (std::stoi(level.substr(7)) < 0) bad_config("level length must be nonnegative");
      } catch (const std::invalid_argument&) {
        bad_config("level length must be an integer");
      } catch (const std::out_of_range&) {
        bad_config("level length out of range");
      }
    }
    if (p.contains("n")) need_key(p, "n", "int");
    if (p.contains("peripheral")) need_key(p, "peripheral", "object");
    if (p.contains("report")) need_key(p, "report", "bool");
  } else if (c.command == "spherical") {
    need_key(p, "action", "string");
    std::string action = p.at("action").get<std::string>();
    if (action != "separate" && action != "wielandt")
      bad_config("spherical action must be 'separate' or 'wielandt'");
    need_key(p, "group", "string");
    if (action == "separate") {
      need_key(p, "x", "array");
      need_key(p, "y", "array");
      if (p.contains("k")) {
        need_key(p, "k", "int");
        auto k = static_cast<std::size_t>(p.at("k").get<int>());
        need(p.at("x").size() == k && p.at("y").size() == k, "x and y must have length k");
      }
      need(p.at("x").size() == p.at("y").size(), "x and y must have equal length");
      need(!p.at("x").empty(), "tuples must be nonempty");
    } else {
      need_key(p, "k", "int");
      need(p.at("k").get<int>() >= 1, "k must be at least 1");
    }
  } else if (c.command == "neretin") {
    need_key(p, "braids", "object");
    need_key(p.at("braids"), "n", "int");
    need_key(p.at("braids"), "words", "array");
    need(!p.at("braids").at("words").empty(), "braid tuple must be nonempty");
    need_key(p, "theta", "number");
    need(p.contains("x") || p.contains("X"), "missing coupling x");
    need(p.contains("y") || p.contains("Y"), "missing coupling y");
  } else if (c.command == "probe") {
    need_key(p, "word", "object");
    std::string action = p.value("action", "quotient");
    if (action == "quotient") {
      need_key(p, "quotient", "string");
    } else if (action != "splittable") {
      bad_config("probe action must be 'quotient' or 'splittable'");
    }
  }
}

namespace detail {

inline Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

inline std::string cache_dir_from_env() {
  const char* dir = std::getenv("BRAIDSURF_CACHE_DIR");
  return dir ? std::string(dir) : std::string();
}

inline std::string orbit_cache_path(const std::string& dir, const SurfaceMonodromy& t) {
  Fnv1a h;
  h.feed_u64(t.group->fingerprint);
  h.feed_u64(moveset_fingerprint(t.g, t.punctures()));
  for (int x : t.key()) h.feed_i32(x);
  return (std::filesystem::path(dir) / ("orbit-" + std::to_string(h.h) + ".json")).string();
}

// Orbit of one start tuple, consulting the cache directory when configured.
// An unreadable or mismatched cache entry is treated as a miss.
inline OrbitSummary orbit_cached(const SurfaceMonodromy& start, long long budget,
                                 std::string* note) {
  std::string dir = cache_dir_from_env();
  if (dir.empty()) return orbit(start, budget);
  std::string path = orbit_cache_path(dir, start);
  if (std::filesystem::exists(path)) {
    try {
      OrbitSummary s =
          load_orbit(path, start.group, moveset_fingerprint(start.g, start.punctures()));
      if (s.complete) {
        if (note) *note = "hit";
        return s;
      }
    } catch (const std::exception&) {
      // fall through to recompute
    }
  }
  OrbitSummary s = orbit(start, budget);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (s.complete) {
    save_orbit(s, path);
    if (note) *note = "written";
  }
  return s;
}

inline ResultRecord job_enumerate(const JobConfig& c) {
  ResultRecord r;
  GroupPtr G = group_from_spec(c.params.at("group").get<std::string>());
  int g = c.params.at("g").get<int>();
  int m = c.params.value("m", 0);
  auto all = enumerate_all(G, g, m);
  r.fingerprints["group_fp"] = G->fingerprint;
  r.payload["count"] = static_cast<long long>(all.size());
  if (c.params.value("list", false)) {
    Json items = Json::array();
    for (const auto& t : all) items.push_back(t.key());
    r.payload["items"] = std::move(items);
  }
  return r;
}

inline ResultRecord job_orbits(const JobConfig& c) {
  ResultRecord r;
  if (c.params.contains("monodromy")) {
    SurfaceMonodromy start = monodromy_from_json(c.params.at("monodromy"));
    OrbitSummary s = orbit_cached(start, c.node_budget, &r.cache_note);
    r.fingerprints["group_fp"] = s.group_fp;
    r.fingerprints["moveset_fp"] = s.moveset_fp;
    r.payload["orbit_size"] = s.size();
    r.payload["complete"] = s.complete;
    r.payload["moves_complete"] = s.moves_complete;
    if (c.params.value("list", false)) {
      Json items = Json::array();
      for (const auto& t : s.reps) items.push_back(t.key());
      r.payload["items"] = std::move(items);
    }
    r.partial = !s.complete;
    return r;
  }
  GroupPtr G = group_from_spec(c.params.at("group").get<std::string>());
  int g = c.params.at("g").get<int>();
  int m = c.params.value("m", 0);
  std::optional<std::vector<std::vector<int>>> auts;
  if (c.params.value("use_aut", false)) auts = automorphisms(*G);
  auto all = enumerate_all(G, g, m);
  std::set<std::vector<int>> seen;
  std::vector<long long> sizes;
  bool all_complete = true;
  for (const auto& t : all) {
    if (seen.count(canonical_form_aut(t, auts ? &*auts : nullptr).key())) continue;
    OrbitSummary s = orbit(t, c.node_budget, auts ? &*auts : nullptr);
    all_complete = all_complete && s.complete;
    sizes.push_back(s.size());
    for (const auto& u : s.reps) seen.insert(canonical_form_aut(u, auts ? &*auts : nullptr).key());
  }
  std::sort(sizes.begin(), sizes.end());
  r.fingerprints["group_fp"] = G->fingerprint;
  r.fingerprints["moveset_fp"] = moveset_fingerprint(g, m);
  r.payload["num_orbits"] = static_cast<long long>(sizes.size());
  r.payload["orbit_sizes"] = sizes;
  r.payload["complete"] = all_complete;
  r.partial = !all_complete;
  return r;
}

inline ResultRecord job_schur(const JobConfig& c) {
  ResultRecord r;
  SurfaceMonodromy t = monodromy_from_json(c.params.at("monodromy"));
  std::string cover = c.params.at("cover").get<std::string>();
  auto exts = builtin_extensions(t.group);
  const StemExtension* E = nullptr;
  for (const auto& e : exts)
    if (e.name == cover) E = &e;
  if (!E) {
    std::string names;
    for (const auto& e : exts) names += (names.empty() ? "" : ", ") + e.name;
    throw std::invalid_argument("unknown cover '" + cover + "' for group " + t.group->descriptor +
                                " (available: " + names + ")");
  }
  r.fingerprints["group_fp"] = t.group->fingerprint;
  r.payload["cover"] = E->name;
  r.payload["kernel_size"] = static_cast<long long>(E->kernel.size());
  if (t.punctures() == 0) {
    r.payload["invariant"] = lifting_invariant(t, *E);
    r.payload["punctures"] = 0;
  } else {
    SchurClass cls = relative_class(t, *E);
    r.payload["invariant"] = cls.value;
    r.payload["ambiguity"] = cls.ambiguity;
    r.payload["punctures"] = cls.punctures;
  }
  return r;
}

inline LiftProblem lift_problem_from_params(const Json& p) {
  SurfaceMonodromy t = monodromy_from_json(p.at("monodromy"));
  if (!t.group->has_perm_real())
    throw std::invalid_argument("lift: group has no symmetric realization");
  int n = p.value("n", t.group->perm_real[0].degree());
  std::vector<BraidWord> words;
  if (p.contains("peripheral")) {
    const Json& per = p.at("peripheral");
    int default_n = per.value("n", n);
    for (const auto& w : per.at("words")) words.push_back(braid_word_from_json(w, default_n));
  }
  if (words.empty() && t.punctures() > 0)
    throw std::invalid_argument("lift: punctured monodromy needs peripheral targets");
  if (!words.empty()) return make_lift_problem_words(std::move(t), n, std::move(words));
  return make_lift_problem(std::move(t), n, {});
}

inline ResultRecord job_lift(const JobConfig& c) {
  ResultRecord r;
  LiftProblem p = lift_problem_from_params(c.params);
  r.fingerprints["group_fp"] = p.mono.group->fingerprint;
  std::string level = c.params.at("level").get<std::string>();
  if (level == "bn1") {
    if (c.params.value("report", false)) {
      ObstructionReport rep = obstruction_report(p);
      r.payload["solvable"] = rep.solvable;
      r.payload["invariant_factors"] = rep.invariant_factors;
      r.payload["stabilized_solvable"] = rep.stabilized_solvable;
      r.payload["violations"] = rep.violations;
    } else {
      Bn1Lift lift = lift_to_bn1(p);
      r.payload["solvable"] = lift.solvable;
      r.payload["invariant_factors"] = lift.invariant_factors;
    }
    return r;
  }
  int len = std::stoi(level.substr(7));
  BnLift lift = lift_to_bn_bounded(p, len, c.node_budget);
  r.payload["found"] = lift.found;
  r.payload["swept"] = lift.swept;
  r.payload["certificates"] = lift.certificates;
  if (lift.found) {
    Json a = Json::array(), b = Json::array();
    for (const auto& w : lift.a_words) a.push_back(braid_word_to_json(w));
    for (const auto& w : lift.b_words) b.push_back(braid_word_to_json(w));
    r.payload["a_words"] = std::move(a);
    r.payload["b_words"] = std::move(b);
  }
  r.partial = !lift.found && !lift.swept;
  return r;
}

inline ResultRecord job_spherical(const JobConfig& c) {
  ResultRecord r;
  GroupPtr G = group_from_spec(c.params.at("group").get<std::string>());
  r.fingerprints["group_fp"] = G->fingerprint;
  std::string action = c.params.at("action").get<std::string>();
  if (action == "wielandt") {
    auto [orbits, msum] = wielandt_check(G, c.params.at("k").get<int>(), c.seed);
    r.payload["orbits"] = orbits;
    r.payload["multiplicity_sum"] = msum;
    r.payload["equal"] = (orbits == msum);
    r.tolerances["rounding_guard"] = 0.01;
    return r;
  }
  std::vector<int> x = elements_from_json(c.params.at("x"), *G, "spherical.x");
  std::vector<int> y = elements_from_json(c.params.at("y"), *G, "spherical.y");
  Separation s = separate_cosets(G, x, y, c.seed);
  r.payload["separated"] = s.separated;
  if (s.separated) {
    r.payload["witness_factors"] = s.witness_factors;
    r.payload["u_index"] = s.u_index;
    r.payload["v_index"] = s.v_index;
    r.payload["value_at_x"] = complex_json(s.at_x);
    r.payload["value_at_y"] = complex_json(s.at_y);
  }
  r.tolerances["witness_gap"] = 1e-8;
  r.tolerances["rep_tol"] = 1e-9;
  return r;
}

inline ResultRecord job_neretin(const JobConfig& c) {
  ResultRecord r;
  const Json& braids = c.params.at("braids");
  int n = braids.at("n").get<int>();
  std::vector<BraidWord> words;
  for (const auto& w : braids.at("words")) words.push_back(braid_word_from_json(w, n));
  int k = static_cast<int>(words.size());
  auto coupling = [&](const char* lower, const char* upper) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
    if (c.params.contains(upper)) {
      const Json& rows = c.params.at(upper);
      if (static_cast<int>(rows.size()) != k)
        throw std::invalid_argument(std::string("coupling ") + upper + " must be k x k");
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M(i, j) = rows.at(i).at(j).get<double>();
    } else {
      double v = c.params.at(lower).get<double>();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (i != j) M(i, j) = v;
    }
    return M;
  };
  Eigen::MatrixXd X = coupling("x", "X"), Y = coupling("y", "Y");
  double theta = c.params.at("theta").get<double>();
  NeretinOptions opt;
  std::complex<double> phi2 = phi2_burau(words, theta, X, Y, opt);
  r.payload["k"] = k;
  r.payload["theta"] = theta;
  r.payload["phi2"] = complex_json(phi2);
  r.tolerances["invariance"] = opt.invariance_tol;
  return r;
}

inline ResultRecord job_probe(const JobConfig& c) {
  ResultRecord r;
  BraidWord w = braid_word_from_json(c.params.at("word"));
  std::string action = c.params.value("action", "quotient");
  if (action == "splittable") {
    SplittableVerdict v = splittable_check(w);
    r.payload["kind"] = v.kind == SplitKind::CertifiedYes ? "CertifiedYes"
                        : v.kind == SplitKind::InvariantFail ? "InvariantFail"
                                                             : "Unknown";
    r.payload["reason"] = v.reason;
    r.payload["checked_quotients"] = v.checked_quotients;
    return r;
  }
  std::string spec = c.params.at("quotient").get<std::string>();
  QuotientProbe probe = make_probe(w.n, spec);
  r.payload["quotient"] = spec;
  r.payload["value"] = quotient_probe(w, probe);
  return r;
}

}  // namespace detail

inline ResultRecord run_job(const JobConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();
  ResultRecord r;
  if (cfg.command == "enumerate")
    r = detail::job_enumerate(cfg);
  else if (cfg.command == "orbits")
    r = detail::job_orbits(cfg);
  else if (cfg.command == "schur")
    r = detail::job_schur(cfg);
  else if (cfg.command == "lift")
    r = detail::job_lift(cfg);
  else if (cfg.command == "spherical")
    r = detail::job_spherical(cfg);
  else if (cfg.command == "neretin")
    r = detail::job_neretin(cfg);
  else
    r = detail::job_probe(cfg);
  r.config_echo = config_to_json(cfg);
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace braidsurf
