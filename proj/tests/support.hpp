#pragma once

#include "alphad/parser.hpp"
#include "alphad/preference_model.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace alphad::test {

inline std::filesystem::path problems_dir() { return ALPHAD_PROBLEMS_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Problem load(const std::string& name) {
  return parse_problem(read_file(problems_dir() / (name + ".admp")));
}

/// Every corpus file, sorted by name.
inline std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(problems_dir())) {
    if (entry.path().extension() == ".admp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

/// Seeded generator so property runs are reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Positive rational p/q with 1 <= p, q <= max.
  Rational positive_rational(int max) { return Rational(integer(1, max)) / Rational(integer(1, max)); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// x[i] / x[j] for a generated positive vector.
inline Problem consistent_ratio_problem(Gen& gen, std::size_t n, std::vector<Rational>* weights = nullptr) {
  std::vector<std::string> names;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i + 1));
    w.push_back(gen.positive_rational(9));
  }
  std::vector<Preference> prefs;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    prefs.push_back(RatioPreference{i, j, w[i] / w[j]});
  }
  if (weights) *weights = w;
  return Problem(CriteriaSet(names), prefs);
}

}  // namespace alphad::test
