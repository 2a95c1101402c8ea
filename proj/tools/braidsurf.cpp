// Command-line front end. One job per invocation; exit 0 on success, 2 when
// a budget was exhausted (partial payload), 1 on any error. The output file
// is only written on success, so a failed run leaves no artifact behind.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "braidsurf/jobs.hpp"

namespace {

using braidsurf::JobConfig;
using braidsurf::Json;

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

// Elements on the command line may be indices or label strings; keep them
// as-is and let the job layer resolve against the group.
Json element_list(const std::vector<std::string>& xs) {
  Json arr = Json::array();
  for (const auto& s : xs) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used == s.size()) {
        arr.push_back(v);
        continue;
      }
    } catch (const std::exception&) {
    }
    arr.push_back(s);
  }
  return arr;
}

int run(const JobConfig& cfg) {
  braidsurf::ResultRecord rec = braidsurf::run_job(cfg);
  Json out = braidsurf::result_to_json(rec);
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_path);
    f << out.dump(2) << "\n";
  }
  std::cout << out.dump(2) << "\n";
  return rec.partial ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braided-surface monodromy toolkit"};
  app.require_subcommand(0, 1);

  std::string config_path, out_path;
  std::uint64_t seed = braidsurf::kSplitSeed;
  long long budget = 1000000;
  int len_cap = 8;
  int threads = 0;
  app.add_option("--config", config_path, "load full job config from JSON, superseding flags");
  app.add_option("--seed", seed, "rng seed for numeric modules");
  app.add_option("--out", out_path, "write the result record to this path");
  app.add_option("--budget", budget, "node budget for searches");
  app.add_option("--len", len_cap, "word-length cap for bounded lifts");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string group, monodromy_path, peripheral_path, cover, level = "bn1";
  std::string sph_action, braids_path, word_path, quotient;
  std::vector<std::string> xs, ys;
  int g = 0, m = 0, k = 0, degree = 0;
  double theta = 0, xval = 0, yval = 0;
  bool list = false, use_aut = false, report = false, want_split = false;

  auto* cmd_enum = app.add_subcommand("enumerate", "count closed monodromies for (G, g, m)");
  cmd_enum->add_option("--group", group)->required();
  cmd_enum->add_option("--g", g)->required();
  cmd_enum->add_option("--m", m);
  cmd_enum->add_flag("--list", list, "include the tuples themselves");

  auto* cmd_orbits = app.add_subcommand("orbits", "mapping-class orbits of monodromies");
  cmd_orbits->add_option("--group", group);
  cmd_orbits->add_option("--g", g);
  cmd_orbits->add_option("--m", m);
  cmd_orbits->add_option("--monodromy", monodromy_path, "orbit of one start tuple (JSON file)");
  cmd_orbits->add_flag("--use-aut", use_aut, "quotient by group automorphisms");
  cmd_orbits->add_flag("--list", list);

  auto* cmd_schur = app.add_subcommand("schur", "lifting invariant relative to a stem cover");
  cmd_schur->add_option("--monodromy", monodromy_path)->required();
  cmd_schur->add_option("--cover", cover)->required();

  auto* cmd_lift = app.add_subcommand("lift", "lift a monodromy through the braid tower");
  cmd_lift->add_option("--monodromy", monodromy_path)->required();
  cmd_lift->add_option("--level", level, "bn1 or bn:len=<L>");
  cmd_lift->add_option("--peripheral", peripheral_path, "peripheral braid targets (JSON file)");
  cmd_lift->add_option("--n", degree, "strand count of the symmetric quotient");
  cmd_lift->add_flag("--report", report, "full obstruction report with stabilization probe");

  auto* cmd_sph = app.add_subcommand("spherical", "double-coset separation and Wielandt counts");
  cmd_sph->add_option("action", sph_action, "separate | wielandt")->required();
  cmd_sph->add_option("--group", group)->required();
  cmd_sph->add_option("--k", k);
  cmd_sph->add_option("--x", xs)->delimiter(',');
  cmd_sph->add_option("--y", ys)->delimiter(',');

  auto* cmd_ner = app.add_subcommand("neretin", "determinant form on braid tuples");
  cmd_ner->add_option("--braids", braids_path, "braid tuple JSON file")->required();
  cmd_ner->add_option("--theta", theta)->required();
  cmd_ner->add_option("--x", xval, "off-diagonal coupling for X");
  cmd_ner->add_option("--y", yval, "off-diagonal coupling for Y");

  auto* cmd_probe = app.add_subcommand("probe", "finite quotient probes of a braid word");
  cmd_probe->add_option("--word", word_path, "braid word JSON file")->required();
  cmd_probe->add_option("--quotient", quotient, "sym | burau:p=..,k=.. | ab:N=..");
  cmd_probe->add_flag("--splittable", want_split, "run the splittability check instead");

  // Global flags remain usable after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    JobConfig cfg;
    if (!config_path.empty()) {
      cfg = braidsurf::config_from_json(load_json_file(config_path));
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help() << "\n";
        return 1;
      }
      CLI::App* sub = app.get_subcommands().front();
      cfg.command = sub->get_name();
      cfg.seed = seed;
      cfg.node_budget = budget;
      cfg.len_cap = len_cap;
      cfg.threads = threads;
      cfg.out_path = out_path;
      Json& p = cfg.params;
      if (sub == cmd_enum) {
        p["group"] = group;
        p["g"] = g;
        p["m"] = m;
        if (list) p["list"] = true;
      } else if (sub == cmd_orbits) {
        if (!monodromy_path.empty()) {
          p["monodromy"] = load_json_file(monodromy_path);
        } else {
          p["group"] = group;
          p["g"] = g;
          p["m"] = m;
        }
        if (use_aut) p["use_aut"] = true;
        if (list) p["list"] = true;
      } else if (sub == cmd_schur) {
        p["monodromy"] = load_json_file(monodromy_path);
        p["cover"] = cover;
      } else if (sub == cmd_lift) {
        p["monodromy"] = load_json_file(monodromy_path);
        p["level"] = level;
        if (!peripheral_path.empty()) p["peripheral"] = load_json_file(peripheral_path);
        if (degree > 0) p["n"] = degree;
        if (report) p["report"] = true;
      } else if (sub == cmd_sph) {
        p["action"] = sph_action;
        p["group"] = group;
        if (k > 0) p["k"] = k;
        if (!xs.empty()) p["x"] = element_list(xs);
        if (!ys.empty()) p["y"] = element_list(ys);
      } else if (sub == cmd_ner) {
        p["braids"] = load_json_file(braids_path);
        p["theta"] = theta;
        p["x"] = xval;
        p["y"] = yval;
      } else if (sub == cmd_probe) {
        p["word"] = load_json_file(word_path);
        if (want_split)
          p["action"] = "splittable";
        else
          p["quotient"] = quotient;
      }
    }
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
