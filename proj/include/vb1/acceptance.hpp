#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vb1/cover.hpp"
#include "vb1/free_aut.hpp"
#include "vb1/rng.hpp"

namespace vb1 {

struct SelftestOptions {
  std::uint64_t seed = 7;
  unsigned threads = 1;
  // Smallest triangle quotient accepted for the n = 3 run.
  std::size_t case2_min_order = 50;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool certified = false;  // the mathematical content held
  std::string detail;
  Json data = Json::object();
  double seconds = 0;
  double limit_seconds = 0;

  bool within_time() const { return seconds <= limit_seconds; }
  bool passed() const { return certified && within_time(); }
  // "[PASS] 3 formula vs oracle: 50/50 (1.2 s, limit 120 s)"
  std::string line() const;
};

// Criteria 1 to 9.  Each result is handed to on_result as soon as it is
// known.
std::vector<CriterionResult> run_selftest(const SelftestOptions& options,
                                          const std::function<void(const CriterionResult&)>& on_result = {});
// Timings are left out so that equal seeds give byte-identical output.
Json selftest_json(const SelftestOptions& options, const std::vector<CriterionResult>& results);
// Criterion 10: one more single-threaded run compared byte for byte with
// the JSON of an earlier run.
CriterionResult determinism_criterion(const SelftestOptions& options, const Json& reference);

// ---- Random instances shared with the property tests --------------------

// A transitive cover of the punctured torus of degree 2..max_degree.  With
// fill_order set, every unwrapping degree divides it.
PermCover random_torus_cover(Rng& rng, std::size_t max_degree, unsigned fill_order = 0);
// A word of 1..max_length letters in Dx, Dy and their inverses.
std::string random_twist_word(Rng& rng, std::size_t max_length, bool with_b = false);
// A uniformly random element of the centralizer of p.
Perm random_centralizer_element(Rng& rng, const Perm& p);
Perm random_perm(Rng& rng, std::size_t degree);
// sigma_1..sigma_4 of degree <= max_degree with each prefix product
// commuting with the next factor and total product 1, generating a
// transitive group.
std::array<Perm, 4> random_lifting_tuple(Rng& rng, std::size_t max_degree);

}  // namespace vb1
