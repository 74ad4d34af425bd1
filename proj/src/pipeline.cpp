#include "vb1/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "vb1/error.hpp"
#include "vb1/fp_group.hpp"

namespace vb1 {

Monodromy Monodromy::twist_word(std::string_view text, std::size_t k) {
  return Monodromy{std::string(text), parse_twist_word(text, k), k};
}

Monodromy Monodromy::automorphism(std::string_view text, std::size_t k) {
  return Monodromy{std::string(text), parse_automorphism(text, surface_alphabet(k)), k};
}

Monodromy Monodromy::from_aut(FreeAut f, std::size_t k, std::string description) {
  if (f.rank() != k + 1) throw InvalidArgument("automorphism rank does not match " + std::to_string(k) + " punctures");
  return Monodromy{std::move(description), std::move(f), k};
}

namespace {

// Runs fn(0..count-1) on up to `threads` workers.  Results are written by
// index, so the outcome does not depend on scheduling; the exception of the
// lowest failing index is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Json conventions_json() {
  return Json{{"composition", "right to left: in f g the right factor acts first"},
              {"Dx", "x -> x, y -> y x"},
              {"Dy", "x -> x Y, y -> y"},
              {"B", "z_j -> c z_j C with c = x y X Y"},
              {"Aj", "z_j -> w z_j W, z_{j+1} -> w z_{j+1} W with w = z_j z_{j+1}"},
              {"permutations", "1-based cycles; sheets are acted on from the right"}};
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

std::vector<std::size_t> cycle_type(const Perm& p) {
  std::vector<std::size_t> out;
  for (const auto& c : p.cycles()) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Why no power lifts: the first generator whose pulled-back cycle type
// differs from the cover's, or the plain statement that no intertwiner
// exists within the bound.
[[noreturn]] void throw_no_lifting_power(const PermCover& c, const FreeAut& f, unsigned bound) {
  std::vector<Perm> rho = f.pull_back(c.perms());
  std::string detail;
  for (std::size_t g = 0; g < c.rank(); ++g) {
    if (cycle_type(rho[g]) != cycle_type(c.perms()[g])) {
      detail = "; the pulled-back action of generator " + c.base().names().name(g) + " has cycle type [" +
               join_sizes(cycle_type(rho[g])) + "] against [" + join_sizes(cycle_type(c.perms()[g])) +
               "], so f moves the cover's conjugacy class";
      break;
    }
  }
  if (detail.empty()) detail = "; f^m carries the cover's subgroup outside its conjugacy class for every m tried";
  throw ComputationError("no power f^m with m <= " + std::to_string(bound) + " lifts to the degree " +
                         std::to_string(c.degree()) + " cover" + detail);
}

PermCover trivial_cover(const FatSurface& base) {
  return PermCover(base, std::vector<Perm>(base.rank(), Perm::identity(1)), 0);
}

struct Evaluated {
  unsigned power = 0;  // multiple of the least lifting power
  FreeAut fm;
  std::vector<LiftRecord> records;
  bool accepted = false;
};

// Fixed dimensions and certificate fixing for every lift of f^m.
std::vector<LiftRecord> evaluate_lifts(const H1Basis& basis, const FreeAut& fm, const std::vector<Perm>& lifts,
                                       const std::vector<RatVector>& classes, unsigned n,
                                       const PipelineOptions& options) {
  std::vector<LiftRecord> records(lifts.size());
  parallel_for(lifts.size(), options.threads, [&](std::size_t i) {
    HomologyAction a(basis, fm, lifts[i]);
    LiftRecord& r = records[i];
    r.lift = lifts[i];
    r.fixed_dimension = a.fixed_dimension();
    r.betti = betti_mapping_torus(a, n);
    r.fixes_certificate = !classes.empty() && std::all_of(classes.begin(), classes.end(),
                                                          [&](const RatVector& z) { return a.fixes(z); });
  });
  return records;
}

// The least lifting power m0, then its multiples up to the bound, until
// some lift fixes every class in `classes`.  Falls back to m0 (accepted =
// false) when none does.
Evaluated choose_power(const H1Basis& basis, const FreeAut& f, const std::vector<RatVector>& classes, unsigned n,
                       const PipelineOptions& options) {
  const PermCover& c = basis.cover();
  auto m0 = minimal_lifting_power(c, f, options.power_bound);
  if (!m0) throw_no_lifting_power(c, f, options.power_bound);
  Evaluated first;
  for (unsigned m = *m0; m <= options.power_bound; m += *m0) {
    Evaluated e;
    e.power = m;
    e.fm = f.power(m, options.length_cap);
    e.records = evaluate_lifts(basis, e.fm, find_lifts(c, e.fm), classes, n, options);
    e.accepted = classes.empty() || std::any_of(e.records.begin(), e.records.end(),
                                                [](const LiftRecord& r) { return r.fixes_certificate; });
    if (e.accepted) return e;
    if (m == *m0) first = std::move(e);
  }
  return first;
}

std::size_t best_index(const std::vector<LiftRecord>& records) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].betti > records[best].betti) best = i;
  }
  return best;
}

// Oracle values for every lift of small covers, else for the best lift,
// plus the symplectic check on the same lifts.
struct OracleSummary {
  bool agree = true;
  bool symplectic = true;
  std::size_t checked = 0;
};

OracleSummary run_oracles(const H1Basis& basis, const FreeAut& fm, std::vector<LiftRecord>& records, unsigned n,
                          const PipelineOptions& options) {
  OracleSummary out;
  if (records.empty()) return out;
  const bool all = basis.dimension() <= options.oracle_all_limit;
  std::vector<std::size_t> which;
  if (all) {
    for (std::size_t i = 0; i < records.size(); ++i) which.push_back(i);
  } else {
    which.push_back(best_index(records));
  }
  std::vector<char> symplectic(which.size(), 1);
  parallel_for(which.size(), options.threads, [&](std::size_t k) {
    LiftRecord& r = records[which[k]];
    r.oracle = betti_oracle(basis.cover(), fm, r.lift, n, options.length_cap).betti;
    symplectic[k] = HomologyAction(basis, fm, r.lift).is_symplectic() ? 1 : 0;
  });
  for (std::size_t k = 0; k < which.size(); ++k) {
    const LiftRecord& r = records[which[k]];
    out.agree = out.agree && r.oracle == r.betti;
    out.symplectic = out.symplectic && symplectic[k];
  }
  out.checked = which.size();
  return out;
}

struct BaseValues {
  std::size_t betti = 0;
  std::size_t oracle = 0;
};

BaseValues base_values(const FatSurface& surface, const FreeAut& fm, unsigned n, const PipelineOptions& options) {
  H1Basis basis(trivial_cover(surface));
  Perm id = Perm::identity(1);
  HomologyAction a(basis, fm, id);
  return {betti_mapping_torus(a, n), betti_oracle(basis.cover(), fm, id, n, options.length_cap).betti};
}

void add_check(BettiReport& r, std::string name, bool passed, std::string detail) {
  r.checks.push_back(Check{std::move(name), passed, std::move(detail)});
}

// Fills power, base, lifts and the checks every cover report shares.
void record_lifts(BettiReport& report, const H1Basis& basis, const FatSurface& surface, Evaluated& e, unsigned n,
                  const PipelineOptions& options) {
  report.power = e.power;
  BaseValues base = base_values(surface, e.fm, n, options);
  report.base_betti = base.betti;
  report.base_oracle = base.oracle;
  OracleSummary oracle = run_oracles(basis, e.fm, e.records, n, options);
  report.lifts = e.records;
  if (report.lifts.empty()) throw CertificateError("lifting power found but no lift was enumerated");
  const LiftRecord& best = report.lifts[best_index(report.lifts)];
  report.cover_betti = best.betti;
  report.cover_oracle = best.oracle;

  add_check(report, "base_formula_equals_oracle", base.betti == base.oracle,
            "formula " + std::to_string(base.betti) + ", oracle " + std::to_string(base.oracle));
  add_check(report, "cover_formula_equals_oracle", oracle.agree,
            std::to_string(oracle.checked) + " of " + std::to_string(report.lifts.size()) + " lifts checked");
  add_check(report, "symplectic_action", oracle.symplectic,
            "A^T J A = J on " + std::to_string(oracle.checked) + " lifts");
  bool monotone = std::all_of(report.lifts.begin(), report.lifts.end(),
                              [&](const LiftRecord& r) { return r.betti >= base.betti; });
  add_check(report, "cover_betti_at_least_base", monotone, "every lift has b1 >= " + std::to_string(base.betti));
}

Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(q.get_str());
  return a;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

void pair_checks(BettiReport& report, const FixedPairCertificate& pair) {
  add_check(report, "fixed_pair_intersection_nonzero", sgn(pair.pairing) != 0,
            "I(delta, delta*) = " + pair.pairing.get_str());
  add_check(report, "fixed_pair_y_intersections_zero", all_zero(pair.y_pairings),
            std::to_string(pair.y_pairings.size()) + " lifts of y");
  add_check(report, "fixed_pair_fixed_by_twist_lifts", pair.fixed_by_twist_x && pair.fixed_by_twist_y4,
            std::string("D_x lift ") + (pair.fixed_by_twist_x ? "fixes" : "moves") + " the pair, D_y^4 lift " +
                (pair.fixed_by_twist_y4 ? "fixes" : "moves") + " it");
}

void require_rank(const Monodromy& f, std::size_t k) {
  if (f.aut.rank() != k + 1) {
    throw InvalidArgument("monodromy acts on rank " + std::to_string(f.aut.rank()) + ", expected " +
                          std::to_string(k + 1) + " for " + std::to_string(k) + " punctures");
  }
  if (!f.aut.certified()) throw InvalidArgument("monodromy has no certified inverse");
}

Json input_json(const Monodromy& f) {
  return Json{{"monodromy", f.description},
              {"automorphism", format_automorphism(f.aut, surface_alphabet(f.punctures))},
              {"punctures", f.punctures}};
}

bool fixes_each_puncture(const FreeAut& f, std::size_t k) {
  auto action = puncture_action(f, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!action[j] || action[j]->puncture != j) return false;
  }
  return true;
}

// Least m with f^m mapping every boundary word to a conjugate of itself or
// its inverse.
unsigned puncture_power(const FreeAut& f, std::size_t k, const PipelineOptions& options) {
  FreeAut g = f;
  for (unsigned m = 1; m <= options.power_bound; ++m) {
    if (fixes_each_puncture(g, k)) return m;
    g = compose(f, g, options.length_cap);
  }
  throw ComputationError("no power f^m with m <= " + std::to_string(options.power_bound) +
                         " fixes every puncture up to conjugacy");
}

}  // namespace

bool BettiReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* BettiReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Json BettiReport::to_json() const {
  auto optional = [](const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); };
  Json lift_list = Json::array();
  for (const auto& l : lifts) {
    lift_list.push_back(Json{{"lift", l.lift.to_string()},
                             {"fixed_dimension", l.fixed_dimension},
                             {"betti", l.betti},
                             {"oracle", l.oracle ? Json(*l.oracle) : Json(nullptr)},
                             {"canonical", l.canonical},
                             {"fixes_certificate", l.fixes_certificate}});
  }
  Json check_list = Json::array();
  for (const auto& c : checks) check_list.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"schema", kReportSchema},
              {"kind", kind},
              {"conventions", conventions_json()},
              {"input", input},
              {"power", power},
              {"base", Json{{"betti", optional(base_betti)}, {"oracle", optional(base_oracle)}}},
              {"cover", Json{{"betti", optional(cover_betti)}, {"oracle", optional(cover_oracle)}}},
              {"covers", covers},
              {"lifts", lift_list},
              {"certificates", certificates},
              {"checks", check_list},
              {"passed", passed()}};
}

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ';');
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += s[i];
    if (s[i] == ';' && i + 1 < s.size()) out += ' ';
  }
  return out;
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  auto value = [](const Json& v) { return v.is_null() ? std::string("-") : v.dump(); };
  out << report.value("kind", "report");
  if (report.contains("input") && report["input"].contains("monodromy")) {
    out << ": f = " << report["input"]["monodromy"].get<std::string>();
  }
  out << " (power " << report.value("power", 1) << ")\n";
  for (const auto& c : report["covers"]) {
    out << "  cover: degree " << c["degree"] << ", genus " << c["genus"] << ", " << c["punctures"].size()
        << " puncture lifts\n";
  }
  if (!report["base"]["betti"].is_null()) {
    out << "  base b1 = " << value(report["base"]["betti"]) << " (oracle " << value(report["base"]["oracle"])
        << ")\n";
  }
  if (!report["lifts"].empty()) {
    std::vector<std::size_t> dims;
    for (const auto& l : report["lifts"]) dims.push_back(l["fixed_dimension"].get<std::size_t>());
    out << "  lifts: " << dims.size() << ", fixed dimensions " << join_sizes(dims) << "\n";
  }
  if (!report["cover"]["betti"].is_null()) {
    out << "  cover b1 = " << value(report["cover"]["betti"]) << " (oracle " << value(report["cover"]["oracle"])
        << ")\n";
  }
  if (report["kind"] == "reduction") {
    const Json& cert = report["certificates"];
    out << "  b1(Gamma) = " << cert["gamma"]["betti"] << ", b1(Delta) = " << cert["delta"]["betti"]
        << ", theta: " << one_line(cert["delta"]["theta"].get<std::string>()) << "\n";
  }
  for (const auto& c : report["checks"]) {
    out << "  [" << (c["passed"].get<bool>() ? "pass" : "FAIL") << "] " << c["name"].get<std::string>();
    const std::string detail = c["detail"].get<std::string>();
    if (!detail.empty()) out << ": " << detail;
    out << "\n";
  }
  out << "  result: " << (report.value("passed", false) ? "PASS" : "FAIL") << "\n";
  return out.str();
}

BettiReport run_case1(const Monodromy& f, const PipelineOptions& options) {
  require_rank(f, 1);
  BettiReport report;
  report.kind = "case1";
  report.input = input_json(f);
  report.input["cone_order"] = 2;
  report.input["power_bound"] = options.power_bound;

  H1Basis basis(figure_two_cover());
  const PermCover& c = basis.cover();
  report.covers.push_back(cover_descriptor(c));
  OrbifoldFill fill = orbifold_fill(c, 2);
  add_check(report, "fills_at_order_2", fill.manifold(), "every unwrapping degree divides 2");

  FixedPairCertificate pair = fixed_pair_search(basis);
  report.certificates["fixed_pair"] = pair.to_json(c);
  pair_checks(report, pair);

  Evaluated e = choose_power(basis, f.aut, {pair.delta.coords, pair.delta_star.coords}, 2, options);
  Perm canonical = canonical_twist_x_lift(c);
  for (auto& r : e.records) r.canonical = r.lift == canonical;
  add_check(report, "pair_fixed_by_a_lift", e.accepted,
            "some lift of f^" + std::to_string(e.power) + " fixes delta and delta*");
  record_lifts(report, basis, c.base(), e, 2, options);

  std::size_t best_dim = 0;
  for (const auto& r : report.lifts) best_dim = std::max(best_dim, r.fixed_dimension);
  add_check(report, "fixed_dimension_at_least_2", best_dim >= 2, "maximum " + std::to_string(best_dim));
  add_check(report, "cover_betti_exceeds_base", *report.cover_betti > *report.base_betti,
            std::to_string(*report.cover_betti) + " > " + std::to_string(*report.base_betti));
  return report;
}

BettiReport run_case2(unsigned n, const Monodromy& f, const PipelineOptions& options) {
  if (n < 3) throw InvalidArgument("case 2 needs n >= 3");
  require_rank(f, 1);
  BettiReport report;
  report.kind = "case2";
  report.input = input_json(f);
  report.input["cone_order"] = n;
  report.input["power_bound"] = options.power_bound;
  report.input["search"] = Json{{"budget", options.search.budget},
                                {"seed", options.search.seed},
                                {"cap", options.search.cap},
                                {"min_order", options.search.min_order}};

  QuotientCertificate quotient = find_triangle_quotient(n, options.search);
  report.certificates["quotient"] = quotient.to_json();
  add_check(report, "quotient_verified", quotient.verify(),
            "orders (" + std::to_string(2 * n) + "," + std::to_string(2 * n) + "," + std::to_string(n) +
                ") in a group of order " + std::to_string(quotient.order()));
  Case2Certificates counts = case2_certificates(quotient);
  report.certificates["counts"] = counts.to_json();
  add_check(report, "cycle_counts", counts.counts_match,
            "cycles " + std::to_string(counts.cycles_sigma1) + ", " + std::to_string(counts.cycles_sigma3) + ", " +
                std::to_string(counts.cycles_product));

  H1Basis basis(case2_cover(quotient));
  const PermCover& c = basis.cover();
  report.covers.push_back(cover_descriptor(c));
  OrbifoldFill fill = orbifold_fill(c, n);
  add_check(report, "fills_at_order_n", fill.manifold(), "every unwrapping degree divides " + std::to_string(n));

  FixedPairCertificate pair = fixed_pair_search(basis);
  report.certificates["fixed_pair"] = pair.to_json(c);
  pair_checks(report, pair);
  add_check(report, "row2_family_rank", pair.family_rank >= 2 * counts.genus_row2,
            std::to_string(pair.family_rank) + " >= 2 * " + std::to_string(counts.genus_row2));

  Evaluated e = choose_power(basis, f.aut, {pair.delta.coords, pair.delta_star.coords}, n, options);
  Perm canonical = canonical_twist_x_lift(c);
  for (auto& r : e.records) r.canonical = r.lift == canonical;
  add_check(report, "pair_fixed_by_a_lift", e.accepted,
            "some lift of f^" + std::to_string(e.power) + " fixes delta and delta*");
  record_lifts(report, basis, c.base(), e, n, options);

  std::size_t best_dim = 0;
  for (const auto& r : report.lifts) best_dim = std::max(best_dim, r.fixed_dimension);
  report.certificates["achieved_fixed_dimension"] = best_dim;
  add_check(report, "fixed_dimension_meets_bound", Rational(static_cast<long>(best_dim)) >= counts.bound,
            std::to_string(best_dim) + " >= " + counts.bound.get_str());
  return report;
}

BettiReport run_multik(std::size_t k, const Monodromy& f, const PipelineOptions& options) {
  if (k < 2) throw InvalidArgument("multi-puncture construction needs k >= 2");
  require_rank(f, k);
  BettiReport report;
  report.kind = "multik";
  report.input = input_json(f);
  report.input["cone_order"] = 2;
  report.input["power_bound"] = options.power_bound;

  const unsigned p = puncture_power(f.aut, k, options);
  const FreeAut g = f.aut.power(p, options.length_cap);
  report.certificates["puncture_power"] = p;

  // The once-punctured stage: the Case 1 cover and its fixed pair.
  H1Basis plus(figure_two_cover());
  const PermCover& c_plus = plus.cover();
  FixedPairCertificate pair = fixed_pair_search(plus);
  report.certificates["fixed_pair"] = pair.to_json(c_plus);
  pair_checks(report, pair);

  const FatSurface surface = FatSurface::k_punctured_torus(k);
  const std::vector<FreeWord> section = filling_section(k);
  std::vector<PermCover> factors;
  Json stages = Json::array();
  for (std::size_t i = 0; i < k; ++i) {
    FreeAut th = theta(g, i, k);
    auto m = minimal_lifting_power(c_plus, th, options.power_bound);
    if (!m) throw_no_lifting_power(c_plus, th, options.power_bound);
    factors.push_back(pull_back_cover(c_plus, surface, filling_quotient(i, k)));
    stages.push_back(Json{{"puncture", i + 1},
                          {"theta", format_automorphism(th, surface_alphabet(1))},
                          {"theta_lifting_power", *m},
                          {"cover", cover_descriptor(factors.back())}});
  }
  report.certificates["stages"] = stages;

  FiberProduct fp = fiber_product(factors);
  H1Basis basis(fp.cover);
  report.covers.push_back(cover_descriptor(fp.cover));
  OrbifoldFill fill = orbifold_fill(fp.cover, 2);
  add_check(report, "fills_at_order_2", fill.manifold(), "every unwrapping degree divides 2");

  // Pull delta, delta* back to each factor loop by loop, then transfer to
  // the fiber product as the full preimage.
  std::vector<RatVector> classes;
  std::vector<std::set<std::size_t>> supports(k);
  bool chains_consistent = true;
  Json pulled = Json::array();
  for (std::size_t i = 0; i < k; ++i) {
    const PermCover& ci = factors[i];
    const std::vector<FreeWord> quotient = filling_quotient(i, k);
    for (const CycleClass* z : {&pair.delta, &pair.delta_star}) {
      RatVector chain(ci.graph().edge_count());
      Json loops = Json::array();
      for (std::size_t l = 0; l < z->loops.size(); ++l) {
        CoverLoop alpha = pullback_class(c_plus, z->loops[l], ci, quotient, section);
        std::vector<long long> lc = loop_chain(ci, alpha);
        for (std::size_t e = 0; e < lc.size(); ++e) {
          if (lc[e] != 0) chain[e] += z->multiplicities[l] * static_cast<long>(lc[e]);
        }
        Json lj = loop_json(ci, alpha);
        lj["multiplicity"] = z->multiplicities[l].get_str();
        loops.push_back(std::move(lj));
      }
      chains_consistent = chains_consistent && chain == pullback_chain(c_plus, plus.chain(z->coords), ci, section);
      for (std::size_t e = 0; e < chain.size(); ++e) {
        if (sgn(chain[e]) != 0) supports[i].insert(ci.graph().edge_generator(e));
      }
      RatVector lifted(fp.cover.graph().edge_count());
      for (Perm::Point s = 0; s < fp.cover.degree(); ++s) {
        for (std::size_t gen = 0; gen < fp.cover.rank(); ++gen) {
          lifted[fp.cover.graph().edge(s, gen)] = chain[ci.graph().edge(fp.projections[i][s], gen)];
        }
      }
      classes.push_back(basis.coordinates(lifted));
      pulled.push_back(Json{{"puncture", i + 1}, {"class", z == &pair.delta ? "delta" : "delta*"}, {"loops", loops}});
    }
  }
  report.certificates["pulled_back_classes"] = pulled;
  add_check(report, "pullback_chains_consistent", chains_consistent,
            "loop-by-loop and chain pull-backs agree on every factor");

  RationalSubspace span = basis.boundary_span();
  std::size_t rank = 0;
  for (const auto& z : classes) {
    if (span.add(z)) ++rank;
  }
  add_check(report, "independent_fixed_classes", rank == 2 * k,
            "rank " + std::to_string(rank) + " modulo boundary, expected " + std::to_string(2 * k));

  std::vector<std::vector<Rational>> pairing(classes.size(), std::vector<Rational>(classes.size()));
  for (std::size_t a = 0; a < classes.size(); ++a) {
    RatVector fa = basis.functional(classes[a]);
    for (std::size_t b = 0; b < classes.size(); ++b) {
      RatVector cb = basis.chain(classes[b]);
      Rational s = 0;
      for (std::size_t e = 0; e < fa.size(); ++e) {
        if (sgn(fa[e]) != 0 && sgn(cb[e]) != 0) s += fa[e] * cb[e];
      }
      pairing[a][b] = s;
    }
  }
  Json pairing_json = Json::array();
  for (const auto& row : pairing) pairing_json.push_back(rationals_json(row));
  report.certificates["intersections"] = pairing_json;

  bool own_pairs = true;
  bool cross_zero = true;
  for (std::size_t i = 0; i < k; ++i) {
    own_pairs = own_pairs && sgn(pairing[2 * i][2 * i + 1]) != 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) cross_zero = cross_zero && sgn(pairing[2 * i + a][2 * j + b]) == 0;
    }
  }
  bool disjoint = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t gen : supports[i]) disjoint = disjoint && !supports[j].count(gen);
  report.certificates["disjoint_projections"] = disjoint;
  report.certificates["cross_intersections_zero"] = cross_zero;
  add_check(report, "pairs_intersect", own_pairs, "I(delta_i, delta_i*) != 0 for every i");
  add_check(report, "separated_pairs", disjoint || cross_zero,
            disjoint ? "projections to the base are edge-disjoint"
                     : (cross_zero ? "projections share base edges; cross intersections are 0"
                                   : "projections share base edges and some cross intersection is nonzero"));

  Evaluated e = choose_power(basis, g, classes, 2, options);
  e.power *= p;
  add_check(report, "classes_fixed_by_a_lift", e.accepted,
            "some lift of f^" + std::to_string(e.power) + " fixes all " + std::to_string(2 * k) + " classes");
  record_lifts(report, basis, surface, e, 2, options);

  // The bound is claimed for a lift that fixes every pulled-back class.
  const LiftRecord* certified = nullptr;
  for (const auto& r : report.lifts) {
    if (r.fixes_certificate && (!certified || r.betti > certified->betti)) certified = &r;
  }
  const std::size_t target = 2 * k + 1;
  const bool meets = certified && certified->betti >= target && (!certified->oracle || *certified->oracle >= target);
  add_check(report, "betti_at_least_2k_plus_1", meets,
            certified ? "lift " + certified->lift.to_string() + ": formula " + std::to_string(certified->betti) +
                            ", oracle " + (certified->oracle ? std::to_string(*certified->oracle) : "-") + " >= " +
                            std::to_string(target)
                      : "no lift fixes the classes");
  report.certificates["certified_lift_betti"] = certified ? Json(certified->betti) : Json(nullptr);
  return report;
}

BettiReport run_reduction(const Monodromy& f, const std::vector<unsigned>& cone_orders, std::size_t puncture,
                          const PipelineOptions& options, bool feed) {
  const std::size_t k = f.punctures;
  require_rank(f, k);
  if (cone_orders.size() != k) {
    throw InvalidArgument("need one cone order per puncture (" + std::to_string(k) + ")");
  }
  for (unsigned n : cone_orders) {
    if (n < 2) throw InvalidArgument("cone order " + std::to_string(n) + " is below 2");
  }
  if (puncture >= k) throw InvalidArgument("puncture index out of range");

  BettiReport report;
  report.kind = "reduction";
  report.input = input_json(f);
  report.input["cone_orders"] = cone_orders;
  report.input["kept_puncture"] = puncture + 1;

  const unsigned m = puncture_power(f.aut, k, options);
  const FreeAut fm = f.aut.power(m, options.length_cap);
  report.power = m;

  const Alphabet names = surface_alphabet(k);
  const std::vector<FreeWord> boundary = surface_boundary_words(k);
  std::vector<Cone> cones;
  for (std::size_t j = 0; j < k; ++j) cones.push_back(Cone{boundary[j], cone_orders[j]});
  FPGroup gamma = mapping_torus_presentation(fm, names, cones);

  FreeAut th = theta(fm, puncture, k);
  const FreeWord c = FreeWord::commutator(FreeWord::generator(0), FreeWord::generator(1));
  FPGroup delta = mapping_torus_presentation(th, surface_alphabet(1), {Cone{c, cone_orders[puncture]}});

  // Kill every z except the kept one, then send the kept z to [x, y].
  std::vector<std::size_t> killed;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (j != puncture) killed.push_back(2 + j);
  }
  FPGroup reduced = kill_generators(gamma, killed);
  std::vector<FreeWord> images{FreeWord::generator(0), FreeWord::generator(1)};
  if (puncture + 1 < k) images.push_back(c);
  images.push_back(FreeWord::generator(2));

  std::set<FreeWord> delta_relators(delta.relators().begin(), delta.relators().end());
  std::set<FreeWord> hit;
  std::size_t literal = 0, trivial = 0, consequence = 0, unexplained = 0;
  for (const auto& r : reduced.relators()) {
    FreeWord w(substitute(images, r.letters()));
    if (w.empty()) {
      ++trivial;
    } else if (delta_relators.count(w)) {
      ++literal;
      hit.insert(w);
    } else if (trivial_in_mapping_torus(w.letters(), th)) {
      ++consequence;
    } else {
      ++unexplained;
    }
  }
  const bool onto = hit.size() == delta_relators.size();
  add_check(report, "relators_map_into_quotient", unexplained == 0,
            std::to_string(literal) + " literal, " + std::to_string(trivial) + " trivial, " +
                std::to_string(consequence) + " consequences, " + std::to_string(unexplained) + " unexplained");
  add_check(report, "quotient_relators_all_arise", onto,
            std::to_string(hit.size()) + " of " + std::to_string(delta_relators.size()) +
                " quotient relators are images");

  Abelianization ab_gamma = abelianization(gamma);
  Abelianization ab_delta = abelianization(delta);
  auto torsion_json = [](const Abelianization& a) {
    Json t = Json::array();
    for (const auto& d : a.torsion) t.push_back(d.get_str());
    return t;
  };
  report.certificates["gamma"] = Json{{"presentation", gamma.to_string()},
                                      {"betti", ab_gamma.betti},
                                      {"torsion", torsion_json(ab_gamma)}};
  report.certificates["delta"] = Json{{"theta", format_automorphism(th, surface_alphabet(1))},
                                      {"presentation", delta.to_string()},
                                      {"betti", ab_delta.betti},
                                      {"torsion", torsion_json(ab_delta)}};
  report.certificates["killed_generators"] = Json::array();
  for (std::size_t idx : killed) report.certificates["killed_generators"].push_back(names.name(idx));
  add_check(report, "betti_monotone", ab_gamma.betti >= ab_delta.betti,
            std::to_string(ab_gamma.betti) + " >= " + std::to_string(ab_delta.betti));
  add_check(report, "rank_agrees_with_smith_form",
            abelianization_rank(gamma) == ab_gamma.betti && abelianization_rank(delta) == ab_delta.betti,
            "exact rank and Smith form give the same b1");

  if (feed) {
    Monodromy next = Monodromy::from_aut(th, 1, "theta_" + std::to_string(puncture + 1) + "(f^" + std::to_string(m) + ")");
    BettiReport sub = cone_orders[puncture] == 2 ? run_case1(next, options)
                                                 : run_case2(cone_orders[puncture], next, options);
    report.certificates["fed"] = sub.to_json();
    add_check(report, "fed_report_passes", sub.passed(), sub.kind + " on the induced monodromy");
  }
  return report;
}

BettiReport run_betti(const PermCover& c, const Monodromy& f, unsigned n, const PipelineOptions& options) {
  if (f.aut.rank() != c.rank()) throw InvalidArgument("automorphism rank differs from the cover's base");
  if (!f.aut.certified()) throw InvalidArgument("monodromy has no certified inverse");
  BettiReport report;
  report.kind = "betti";
  report.input = Json{{"monodromy", f.description},
                      {"automorphism", format_automorphism(f.aut, c.base().names())},
                      {"cone_order", n},
                      {"power_bound", options.power_bound}};
  H1Basis basis(c);
  report.covers.push_back(cover_descriptor(c));
  OrbifoldFill fill = orbifold_fill(c, n);
  add_check(report, "fills_at_order_n", fill.manifold(), "every unwrapping degree divides " + std::to_string(n));
  Evaluated e = choose_power(basis, f.aut, {}, n, options);
  record_lifts(report, basis, c.base(), e, n, options);
  return report;
}

}  // namespace vb1
