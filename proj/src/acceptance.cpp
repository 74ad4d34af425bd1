#include "vb1/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>

#include "vb1/error.hpp"
#include "vb1/fp_group.hpp"
#include "vb1/homology.hpp"
#include "vb1/pipeline.hpp"

namespace vb1 {

std::string CriterionResult::line() const {
  char timing[96];
  std::snprintf(timing, sizeof timing, " (%.1f s, limit %.0f s)", seconds, limit_seconds);
  std::string verdict = passed() ? "[PASS] " : "[FAIL] ";
  std::string note = certified && !within_time() ? " [over time]" : "";
  return verdict + std::to_string(id) + " " + name + ": " + detail + timing + note;
}

Perm random_perm(Rng& rng, std::size_t degree) {
  std::vector<Perm::Point> images(degree);
  std::iota(images.begin(), images.end(), 0);
  for (std::size_t i = degree; i > 1; --i) std::swap(images[i - 1], images[rng.below(i)]);
  return Perm(std::move(images));
}

Perm random_centralizer_element(Rng& rng, const Perm& p) {
  // Cycles of equal length are permuted among themselves, each landing
  // with a random rotation.
  std::map<std::size_t, std::vector<std::vector<Perm::Point>>> by_length;
  for (auto& c : p.cycles()) by_length[c.size()].push_back(c);
  std::vector<Perm::Point> images(p.degree());
  for (auto& [len, cycles] : by_length) {
    std::vector<std::size_t> order(cycles.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t a = 0; a < cycles.size(); ++a) {
      const auto& from = cycles[a];
      const auto& to = cycles[order[a]];
      std::size_t shift = rng.below(len);
      for (std::size_t t = 0; t < len; ++t) images[from[t]] = to[(t + shift) % len];
    }
  }
  return Perm(std::move(images));
}

PermCover random_torus_cover(Rng& rng, std::size_t max_degree, unsigned fill_order) {
  if (max_degree < 2) throw InvalidArgument("random covers need degree at least 2");
  const FatSurface base = FatSurface::punctured_torus();
  for (;;) {
    std::size_t d = 2 + rng.below(max_degree - 1);
    Perm x = random_perm(rng, d);
    Perm y = random_perm(rng, d);
    if (orbits({x, y}, d).size() != 1) continue;
    PermCover c(base, {x, y}, 0);
    if (fill_order != 0 && !std::all_of(c.punctures().begin(), c.punctures().end(),
                                        [&](const PunctureLift& p) { return fill_order % p.degree == 0; })) {
      continue;
    }
    return c;
  }
}

std::string random_twist_word(Rng& rng, std::size_t max_length, bool with_b) {
  static const char* const kLetters[] = {"Dx", "Dy", "Dx^-1", "Dy^-1", "B", "B^-1"};
  const std::size_t choices = with_b ? 6 : 4;
  std::size_t len = 1 + rng.below(max_length);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += (i ? " " : "") + std::string(kLetters[rng.below(choices)]);
  return out;
}

std::array<Perm, 4> random_lifting_tuple(Rng& rng, std::size_t max_degree) {
  for (;;) {
    std::size_t r = 1 + rng.below(max_degree);
    Perm s1 = random_perm(rng, r);
    Perm s2 = random_centralizer_element(rng, s1);
    Perm s3 = random_centralizer_element(rng, s1 * s2);
    Perm s4 = (s1 * s2 * s3).inverse();
    if (orbits({s1, s2, s3, s4}, r).size() == 1) return {s1, s2, s3, s4};
  }
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Body>
CriterionResult timed(int id, std::string name, double limit, Body body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.limit_seconds = limit;
  auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.certified = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

CriterionResult figure_two(const SelftestOptions&) {
  return timed(1, "figure-two cover", 1, [](CriterionResult& r) {
    Perm s = Perm::parse("(1 2 3 4)");
    PermCover c = grid_cover(4, {s, s.inverse(), s, s.inverse()});
    H1Basis basis(c);
    bool degrees = std::all_of(c.punctures().begin(), c.punctures().end(),
                               [](const PunctureLift& p) { return p.degree == 2; });
    r.data = Json{{"degree", c.degree()},
                  {"boundary_lifts", c.punctures().size()},
                  {"all_unwrapping_degree_2", degrees},
                  {"genus", c.genus()},
                  {"h1", basis.dimension()},
                  {"filled", basis.filled_dimension()}};
    r.certified = c.degree() == 16 && c.punctures().size() == 8 && degrees && c.genus() == 5 &&
                  basis.dimension() == 17 && basis.filled_dimension() == 10;
    r.detail = "degree " + std::to_string(c.degree()) + ", " + std::to_string(c.punctures().size()) +
               " lifts, genus " + std::to_string(c.genus()) + ", h1 " + std::to_string(basis.dimension()) +
               ", filled " + std::to_string(basis.filled_dimension());
  });
}

CriterionResult case1_headline(const SelftestOptions& o) {
  return timed(2, "case 1 headline", 10, [&](CriterionResult& r) {
    PipelineOptions po;
    po.threads = o.threads;
    Monodromy f = Monodromy::twist_word("Dx Dy^4");
    BettiReport report = run_case1(f, po);
    auto m0 = minimal_lifting_power(figure_two_cover(), f.aut, po.power_bound);
    Json pair = report.certificates["fixed_pair"];
    const std::string pairing = pair["intersection"].get<std::string>();
    r.data = Json{{"power", report.power},
                  {"minimal_power", m0 ? Json(*m0) : Json(nullptr)},
                  {"base_betti", *report.base_betti},
                  {"cover_betti", *report.cover_betti},
                  {"cover_oracle", *report.cover_oracle},
                  {"pairing", pairing},
                  {"report_passed", report.passed()}};
    r.certified = m0 && report.power == *m0 && *report.base_betti == 1 && *report.cover_betti >= 3 &&
                  report.cover_oracle == report.cover_betti && pairing == "2" && report.passed();
    r.detail = "m = " + std::to_string(report.power) + ", base b1 " + std::to_string(*report.base_betti) +
               ", cover b1 " + std::to_string(*report.cover_betti) + ", I(delta, delta*) = " + pairing;
  });
}

CriterionResult formula_vs_oracle(const SelftestOptions& o) {
  return timed(3, "formula vs presentation oracle", 120, [&](CriterionResult& r) {
    Rng rng(o.seed * 1000 + 3);
    std::size_t agree = 0, total = 0, rejected = 0;
    Json samples = Json::array();
    while (total < 50) {
      PermCover c = random_torus_cover(rng, 8, 2);
      std::string word = random_twist_word(rng, 6);
      FreeAut f = parse_twist_word(word);
      auto m = minimal_lifting_power(c, f, 64);
      if (!m) {
        ++rejected;
        continue;
      }
      FreeAut fm;
      try {
        fm = f.power(*m, 200000);
      } catch (const ComputationError&) {
        ++rejected;
        continue;
      }
      std::vector<Perm> lifts = find_lifts(c, fm);
      const Perm& lambda = lifts[rng.below(lifts.size())];
      H1Basis basis(c);
      std::size_t formula = betti_mapping_torus(HomologyAction(basis, fm, lambda), 2);
      std::size_t oracle = betti_oracle(c, fm, lambda, 2).betti;
      ++total;
      if (formula == oracle) ++agree;
      samples.push_back(Json{{"degree", c.degree()},
                             {"word", word},
                             {"power", *m},
                             {"formula", formula},
                             {"oracle", oracle}});
    }
    r.data = Json{{"agree", agree}, {"total", total}, {"rejected", rejected}, {"samples", samples}};
    r.certified = agree == 50;
    r.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(rejected) +
               " instances skipped: no lifting power or word too long)";
  });
}

CriterionResult lemma_lift(const SelftestOptions& o) {
  return timed(4, "D_x lifts under the prefix conditions", 120, [&](CriterionResult& r) {
    Rng rng(o.seed * 1000 + 4);
    std::size_t lifted = 0, rows_match = 0;
    for (std::size_t trial = 0; trial < 100; ++trial) {
      std::array<Perm, 4> sigma = random_lifting_tuple(rng, 8);
      if (!check_lift_conditions({sigma.begin(), sigma.end()}, 2).lemma_lift) {
        throw CertificateError("sampled tuple violates the prefix conditions");
      }
      const std::uint32_t rr = static_cast<std::uint32_t>(sigma[0].degree());
      PermCover c = grid_cover(rr, sigma);
      std::vector<Perm> lifts = find_lifts(c, twist_x());
      if (!lifts.empty()) ++lifted;
      Perm canonical = canonical_twist_x_lift(c);
      bool ok = is_lift(c, twist_x(), canonical) && std::find(lifts.begin(), lifts.end(), canonical) != lifts.end();
      Perm tau = Perm::identity(rr);
      for (std::uint32_t i = 0; i < 4 && ok; ++i) {
        tau = tau * sigma[i];
        for (std::uint32_t j = 0; j < rr; ++j) ok = ok && canonical(i * rr + j) == i * rr + tau(j);
      }
      if (ok) ++rows_match;
    }
    r.data = Json{{"lifted", lifted}, {"canonical_rows_match", rows_match}, {"trials", 100}};
    r.certified = lifted == 100 && rows_match == 100;
    r.detail = std::to_string(lifted) + "/100 lift, canonical rows " + std::to_string(rows_match) + "/100";
  });
}

CriterionResult case2(const SelftestOptions& o) {
  return timed(5, "case 2 at n = 3", 300, [&](CriterionResult& r) {
    PipelineOptions po;
    po.threads = o.threads;
    po.search.seed = o.seed;
    po.search.min_order = o.case2_min_order;
    BettiReport report = run_case2(3, Monodromy::twist_word("Dx Dy^4"), po);
    const Json& q = report.certificates["quotient"];
    const Json& counts = report.certificates["counts"];
    const std::size_t order = q["group_order"].get<std::size_t>();
    const std::size_t achieved = report.certificates["achieved_fixed_dimension"].get<std::size_t>();
    Rational bound = Rational(2) + Rational(static_cast<long>(order), 3);
    bound.canonicalize();
    const auto cycles = counts["cycles"];
    bool counts_ok = cycles[0] == order / 6 && cycles[1] == order / 6 && cycles[2] == order / 3;
    r.data = Json{{"group_order", order},
                  {"cover_degree", 4 * order},
                  {"bound", bound.get_str()},
                  {"achieved", achieved},
                  {"cycles", cycles},
                  {"cover_betti", *report.cover_betti},
                  {"cover_oracle", *report.cover_oracle},
                  {"report_passed", report.passed()}};
    r.certified = q["verified"].get<bool>() && order <= po.search.cap && counts_ok &&
                  Rational(static_cast<long>(achieved)) >= bound && report.passed();
    r.detail = "N = " + std::to_string(order) + ", fixed dimension " + std::to_string(achieved) +
               " >= " + bound.get_str() + ", cycles " + cycles.dump();
  });
}

CriterionResult multik(const SelftestOptions& o) {
  return timed(6, "multi-puncture fiber product", 600, [&](CriterionResult& r) {
    PipelineOptions po;
    po.threads = o.threads;
    BettiReport k2 = run_multik(2, Monodromy::twist_word("Dx Dy^4", 2), po);
    BettiReport k3 = run_multik(3, Monodromy::twist_word("Dx Dy^4", 3), po);
    const Check* rank2 = k2.check("independent_fixed_classes");
    r.data = Json{{"k2", Json{{"degree", k2.covers[0]["degree"]},
                              {"betti", *k2.cover_betti},
                              {"oracle", *k2.cover_oracle},
                              {"rank", rank2 ? rank2->detail : ""},
                              {"passed", k2.passed()}}},
                  {"k3", Json{{"degree", k3.covers[0]["degree"]},
                              {"betti", *k3.cover_betti},
                              {"oracle", *k3.cover_oracle},
                              {"passed", k3.passed()}}}};
    r.certified = rank2 && rank2->passed && *k2.cover_betti >= 5 && *k2.cover_oracle >= 5 && k2.passed() &&
                  *k3.cover_betti >= 7 && *k3.cover_oracle >= 7 && k3.passed();
    r.detail = "k = 2: b1 " + std::to_string(*k2.cover_betti) + " (" + (rank2 ? rank2->detail : "no rank") +
               "); k = 3: b1 " + std::to_string(*k3.cover_betti) + " at degree " +
               k3.covers[0]["degree"].dump();
  });
}

CriterionResult symplectic(const SelftestOptions& o) {
  return timed(7, "symplectic lifted actions", 120, [&](CriterionResult& r) {
    Rng rng(o.seed * 1000 + 7);
    std::size_t ok = 0, total = 0;
    while (total < 100) {
      PermCover c = random_torus_cover(rng, 8);
      FreeAut f = parse_twist_word(random_twist_word(rng, 6));
      auto m = minimal_lifting_power(c, f, 64);
      if (!m) continue;
      FreeAut fm;
      try {
        fm = f.power(*m, 200000);
      } catch (const ComputationError&) {
        continue;
      }
      std::vector<Perm> lifts = find_lifts(c, fm);
      H1Basis basis(c);
      HomologyAction a(basis, fm, lifts[rng.below(lifts.size())]);
      ++total;
      if (a.is_symplectic() && a.preserves_boundary()) ++ok;
    }
    r.data = Json{{"symplectic", ok}, {"total", total}};
    r.certified = ok == 100;
    r.detail = std::to_string(ok) + "/" + std::to_string(total) + " satisfy A^T J A = J";
  });
}

CriterionResult transfer(const SelftestOptions& o) {
  return timed(8, "b1 grows in finite-index subgroups", 120, [&](CriterionResult& r) {
    Rng rng(o.seed * 1000 + 8);
    std::size_t ok = 0;
    Json samples = Json::array();
    for (std::size_t trial = 0; trial < 25; ++trial) {
      const std::size_t gens = 2 + rng.below(2);
      std::vector<Perm> rep;
      std::size_t d = 0;
      do {
        d = 2 + rng.below(11);
        rep.clear();
        for (std::size_t g = 0; g < gens; ++g) rep.push_back(random_perm(rng, d));
      } while (orbits(rep, d).size() != 1);
      // Relators w^order(w) hold in the permutation quotient by construction.
      std::vector<FreeWord> rels;
      const std::size_t count = 1 + rng.below(gens + 1);
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<Letter> w;
        const std::size_t len = 1 + rng.below(5);
        for (std::size_t k = 0; k < len; ++k) {
          Letter l = gen_letter(rng.below(gens));
          w.push_back(rng.coin() ? l : -l);
        }
        FreeWord word(free_reduce(w));
        if (word.empty()) continue;
        long long order = word_permutation(rep, word.letters(), d).order().get_si();
        rels.push_back(word.pow(order));
      }
      FPGroup g(Alphabet::numbered("a", gens), rels);
      SubgroupPresentation sub = subgroup_presentation(g, rep);
      std::size_t b_group = abelianization(g).betti;
      std::size_t b_sub = abelianization(sub.group).betti;
      if (b_sub >= b_group) ++ok;
      samples.push_back(Json{{"index", d}, {"group", b_group}, {"subgroup", b_sub}});
    }
    r.data = Json{{"holds", ok}, {"total", 25}, {"samples", samples}};
    r.certified = ok == 25;
    r.detail = std::to_string(ok) + "/25 with b1(subgroup) >= b1(group)";
  });
}

CriterionResult reduction(const SelftestOptions& o) {
  return timed(9, "reduction surjections", 120, [&](CriterionResult& r) {
    Rng rng(o.seed * 1000 + 9);
    std::size_t ok = 0;
    Json samples = Json::array();
    for (std::size_t trial = 0; trial < 25; ++trial) {
      std::string word = random_twist_word(rng, 6, true);
      std::vector<unsigned> cones{static_cast<unsigned>(2 + rng.below(3)), static_cast<unsigned>(2 + rng.below(3))};
      std::size_t kept = rng.below(2);
      BettiReport report = run_reduction(Monodromy::twist_word(word, 2), cones, kept);
      if (report.passed()) ++ok;
      samples.push_back(Json{{"word", word},
                             {"cones", cones},
                             {"kept", kept + 1},
                             {"gamma", report.certificates["gamma"]["betti"]},
                             {"delta", report.certificates["delta"]["betti"]},
                             {"passed", report.passed()}});
    }
    r.data = Json{{"verified", ok}, {"total", 25}, {"samples", samples}};
    r.certified = ok == 25;
    r.detail = std::to_string(ok) + "/25 surjections verified with b1(Gamma) >= b1(Delta)";
  });
}

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& options,
                                          const std::function<void(const CriterionResult&)>& on_result) {
  using Runner = CriterionResult (*)(const SelftestOptions&);
  const Runner runners[] = {figure_two, case1_headline, formula_vs_oracle, lemma_lift, case2,
                            multik,     symplectic,     transfer,          reduction};
  std::vector<CriterionResult> out;
  for (Runner run : runners) {
    out.push_back(run(options));
    if (on_result) on_result(out.back());
  }
  return out;
}

Json selftest_json(const SelftestOptions& options, const std::vector<CriterionResult>& results) {
  Json criteria = Json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back(Json{{"id", r.id}, {"name", r.name}, {"certified", r.certified}, {"detail", r.detail},
                            {"data", r.data}});
    all = all && r.certified;
  }
  return Json{{"schema", "vb1.selftest/1"},
              {"seed", options.seed},
              {"case2_min_order", options.case2_min_order},
              {"criteria", criteria},
              {"certified", all}};
}

CriterionResult determinism_criterion(const SelftestOptions& options, const Json& reference) {
  CriterionResult r;
  r.id = 10;
  r.name = "determinism";
  r.limit_seconds = 1200;
  auto start = Clock::now();
  try {
    SelftestOptions single = options;
    single.threads = 1;
    const std::string a = selftest_json(single, run_selftest(single)).dump(2);
    const std::string b = reference.dump(2);
    r.certified = a == b;
    r.data = Json{{"bytes", a.size()}, {"identical", a == b}};
    r.detail = a == b ? "two runs give byte-identical JSON (" + std::to_string(a.size()) + " bytes)"
                      : "JSON differs between runs";
  } catch (const std::exception& e) {
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace vb1
