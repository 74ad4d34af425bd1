#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vb1/cover.hpp"
#include "vb1/free_aut.hpp"
#include "vb1/homology.hpp"
#include "vb1/triangle.hpp"

namespace vb1 {

inline constexpr const char* kReportSchema = "vb1.report/1";

// A monodromy of the k-punctured torus with the text it was given as.
struct Monodromy {
  std::string description;
  FreeAut aut;
  std::size_t punctures = 1;

  // Word in Dx, Dy, B, Aj (see parse_twist_word).
  static Monodromy twist_word(std::string_view text, std::size_t k = 1);
  // "x -> x; y -> y x" lines over surface_alphabet(k).
  static Monodromy automorphism(std::string_view text, std::size_t k = 1);
  static Monodromy from_aut(FreeAut f, std::size_t k, std::string description);
};

struct PipelineOptions {
  unsigned power_bound = 64;
  std::size_t length_cap = kDefaultWordLengthCap;
  unsigned threads = 1;
  // Every lift gets the presentation oracle while H1 has at most this
  // dimension; above it only the best lift does.
  std::size_t oracle_all_limit = 200;
  TriangleSearch search{20000, 7, 2000, 13};
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct LiftRecord {
  Perm lift;
  std::size_t fixed_dimension = 0;
  std::size_t betti = 0;
  std::optional<std::size_t> oracle;
  bool canonical = false;
  bool fixes_certificate = false;  // fixes the certified classes, when any
};

struct BettiReport {
  std::string kind;
  Json input = Json::object();
  unsigned power = 1;
  std::optional<std::size_t> base_betti;
  std::optional<std::size_t> base_oracle;
  std::vector<LiftRecord> lifts;
  std::optional<std::size_t> cover_betti;  // maximum over lifts
  std::optional<std::size_t> cover_oracle; // oracle at a maximizing lift
  Json covers = Json::array();
  Json certificates = Json::object();
  std::vector<Check> checks;

  bool passed() const;
  const Check* check(std::string_view name) const;
  Json to_json() const;
};

// Human-readable summary derived from the JSON form only.
std::string render_text(const Json& report);

// The 16-sheet cover, the fixed pair, and f^m for the least power m that
// lifts with a lift fixing the pair.
BettiReport run_case1(const Monodromy& f, const PipelineOptions& options = {});
// Triangle quotient, its grid cover and the bound 2 + N(1 - 2/n).
BettiReport run_case2(unsigned n, const Monodromy& f, const PipelineOptions& options = {});
// Fiber product of the k pulled-back Case 1 covers of the k-punctured torus.
BettiReport run_multik(std::size_t k, const Monodromy& f, const PipelineOptions& options = {});
// Mapping torus of f with cone orders on the k punctures, and its quotient
// by filling all punctures except `puncture` (0-based).  With feed set the
// induced monodromy is passed on to run_case1 (order 2) or run_case2.
BettiReport run_reduction(const Monodromy& f, const std::vector<unsigned>& cone_orders, std::size_t puncture,
                          const PipelineOptions& options = {}, bool feed = false);
// b1 of the mapping tori of every lift of the least lifting power of f to c.
BettiReport run_betti(const PermCover& c, const Monodromy& f, unsigned n, const PipelineOptions& options = {});

}  // namespace vb1
