#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidsurf/bn1.hpp"
#include "braidsurf/braid.hpp"
#include "braidsurf/monodromy.hpp"
#include "braidsurf/orbit.hpp"

namespace braidsurf {

using Json = nlohmann::json;

inline Json monodromy_to_json(const SurfaceMonodromy& t) {
  Json j;
  j["group"] = t.group->descriptor;
  j["group_fp"] = t.group->fingerprint;
  j["g"] = t.g;
  j["a"] = t.a;
  j["b"] = t.b;
  j["c"] = t.c;
  return j;
}

// Elements may be given as indices or as label strings.
inline std::vector<int> elements_from_json(const Json& arr, const FiniteGroup& G,
                                           const char* what) {
  std::vector<int> out;
  for (const auto& e : arr) {
    if (e.is_number_integer()) {
      out.push_back(e.get<int>());
    } else if (e.is_string()) {
      auto idx = G.find_label(e.get<std::string>());
      if (!idx)
        throw std::invalid_argument(std::string(what) + ": unknown element label " +
                                    e.get<std::string>());
      out.push_back(*idx);
    } else {
      throw std::invalid_argument(std::string(what) + ": element must be index or label");
    }
  }
  return out;
}

inline SurfaceMonodromy monodromy_from_json(const Json& j, GroupPtr group = nullptr) {
  if (!group) {
    if (!j.contains("group")) throw std::invalid_argument("monodromy: missing group");
    group = group_from_spec(j.at("group").get<std::string>());
  }
  if (j.contains("group_fp") && j.at("group_fp").get<std::uint64_t>() != group->fingerprint)
    throw std::invalid_argument("monodromy: group fingerprint mismatch");
  return make_monodromy(group, j.at("g").get<int>(),
                        elements_from_json(j.value("a", Json::array()), *group, "monodromy.a"),
                        elements_from_json(j.value("b", Json::array()), *group, "monodromy.b"),
                        elements_from_json(j.value("c", Json::array()), *group, "monodromy.c"));
}

inline Json braid_word_to_json(const BraidWord& w) {
  Json j;
  j["n"] = w.n;
  j["word"] = w.letters;
  return j;
}

inline BraidWord braid_word_from_json(const Json& j, int default_n = 0) {
  int n = j.is_object() ? j.at("n").get<int>() : default_n;
  if (n <= 0) throw std::invalid_argument("braid word: missing strand count");
  const Json& letters = j.is_object() ? j.at("word") : j;
  Word w;
  for (const auto& l : letters) w.push_back(l.get<int>());
  return BraidWord(n, w);
}

inline Json ab_braid_to_json(const AbBraid& x) {
  Json j;
  j["n"] = x.n;
  j["perm"] = x.perm.images();
  j["lk"] = x.lk;
  return j;
}

inline Json orbit_to_json(const OrbitSummary& s) {
  if (s.reps.empty()) throw std::invalid_argument("orbit_to_json: empty summary");
  const SurfaceMonodromy& head = s.reps.front();
  Json j;
  j["format"] = 1;
  j["group"] = head.group->descriptor;
  j["group_fp"] = s.group_fp;
  j["moveset_fp"] = s.moveset_fp;
  j["move_names"] = s.move_names;
  j["complete"] = s.complete;
  j["moves_complete"] = s.moves_complete;
  j["g"] = head.g;
  j["m"] = head.punctures();
  Json reps = Json::array();
  for (const auto& r : s.reps) reps.push_back(r.key());
  j["reps"] = std::move(reps);
  return j;
}

inline OrbitSummary orbit_from_json(const Json& j, const GroupPtr& group) {
  OrbitSummary s;
  s.group_fp = j.at("group_fp").get<std::uint64_t>();
  s.moveset_fp = j.at("moveset_fp").get<std::uint64_t>();
  s.complete = j.at("complete").get<bool>();
  s.moves_complete = j.at("moves_complete").get<bool>();
  for (const auto& n : j.at("move_names")) s.move_names.push_back(n.get<std::string>());
  int g = j.at("g").get<int>(), m = j.at("m").get<int>();
  for (const auto& key : j.at("reps")) {
    std::vector<int> flat = key.get<std::vector<int>>();
    if (static_cast<int>(flat.size()) != 2 * g + m)
      throw std::invalid_argument("orbit_from_json: rep key has wrong length");
    std::vector<int> a(g), b(g), c(m);
    for (int i = 0; i < g; ++i) {
      a[i] = flat[2 * i];
      b[i] = flat[2 * i + 1];
    }
    for (int i = 0; i < m; ++i) c[i] = flat[2 * g + i];
    s.reps.push_back(make_monodromy(group, g, std::move(a), std::move(b), std::move(c)));
  }
  return s;
}

}  // namespace braidsurf
