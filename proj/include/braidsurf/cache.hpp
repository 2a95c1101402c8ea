#pragma once

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "braidsurf/json_io.hpp"

namespace braidsurf {

struct FingerprintMismatch : std::runtime_error {
  explicit FingerprintMismatch(const std::string& what)
      : std::runtime_error("cache fingerprint mismatch: " + what) {}
};

struct CorruptCache : std::runtime_error {
  explicit CorruptCache(const std::string& what)
      : std::runtime_error("corrupt cache file: " + what) {}
};

// Files above this size are written gzip-compressed; readers sniff the
// gzip magic, so both forms load transparently.
inline constexpr std::size_t kGzipThreshold = 4096;

namespace detail {

inline void write_maybe_gzip(const std::string& path, const std::string& text) {
  if (text.size() > kGzipThreshold) {
    gzFile f = gzopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cache: cannot open for write: " + path);
    int n = gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
    if (n != static_cast<int>(text.size()))
      throw std::runtime_error("cache: short gzip write: " + path);
  } else {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot open for write: " + path);
    out << text;
    if (!out) throw std::runtime_error("cache: short write: " + path);
  }
}

inline std::string read_maybe_gzip(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cache: cannot open: " + path);
  std::ostringstream raw;
  raw << in.rdbuf();
  std::string text = raw.str();
  if (text.size() >= 2 && static_cast<unsigned char>(text[0]) == 0x1f &&
      static_cast<unsigned char>(text[1]) == 0x8b) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw CorruptCache(path + ": gzip open failed");
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
    int err = Z_OK;
    gzerror(f, &err);
    bool eof = gzeof(f) != 0;
    gzclose(f);
    if (n < 0 || err != Z_OK || !eof) throw CorruptCache(path + ": gzip stream damaged");
    return out;
  }
  return text;
}

}  // namespace detail

inline void save_orbit(const OrbitSummary& s, const std::string& path) {
  detail::write_maybe_gzip(path, orbit_to_json(s).dump());
}

inline OrbitSummary load_orbit(const std::string& path, const GroupPtr& group,
                               std::optional<std::uint64_t> expect_moveset = std::nullopt) {
  std::string text = detail::read_maybe_gzip(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw CorruptCache(path + ": " + e.what());
  }
  try {
    if (j.at("format").get<int>() != 1) throw CorruptCache(path + ": unknown format version");
    if (j.at("group_fp").get<std::uint64_t>() != group->fingerprint)
      throw FingerprintMismatch("group differs from " + path);
    if (expect_moveset && j.at("moveset_fp").get<std::uint64_t>() != *expect_moveset)
      throw FingerprintMismatch("move set differs from " + path);
    return orbit_from_json(j, group);
  } catch (const FingerprintMismatch&) {
    throw;
  } catch (const CorruptCache&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptCache(path + ": " + e.what());
  }
}

// Write-then-read identity, fingerprints verified on the way back in.
inline OrbitSummary cache_roundtrip(const OrbitSummary& s, const std::string& path) {
  if (s.reps.empty()) throw std::invalid_argument("cache_roundtrip: empty summary");
  save_orbit(s, path);
  return load_orbit(path, s.reps.front().group, s.moveset_fp);
}

}  // namespace braidsurf
