// Command-line front end: covers, lifts, Betti reports and the self-test.
//
// Exit codes: 0 success, 1 usage or malformed input, 2 a computation did
// not succeed within its bounds, 3 a certificate failed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vb1/acceptance.hpp"
#include "vb1/cover.hpp"
#include "vb1/error.hpp"
#include "vb1/homology.hpp"
#include "vb1/pipeline.hpp"
#include "vb1/triangle.hpp"

namespace {

using vb1::Json;

enum Exit { kOk = 0, kUsage = 1, kComputation = 2, kCertificate = 3 };

struct Output {
  std::string format = "json";
  std::string out;
  std::string json;
  std::string dot;
};

std::filesystem::path resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("VB1_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p = resolve(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw vb1::InvalidArgument("cannot write " + p.string());
  f << text;
}

// Emits the JSON document (and DOT when given) in the requested places.
void emit(const Output& o, const Json& doc, const std::string& text, const std::string& dot = "") {
  std::string primary;
  if (o.format == "json") {
    primary = doc.dump(2) + "\n";
  } else if (o.format == "text") {
    primary = text;
  } else {
    if (dot.empty()) throw vb1::InvalidArgument("this command has no DOT output");
    primary = dot;
  }
  if (o.out.empty()) {
    std::cout << primary;
  } else {
    write_file(o.out, primary);
  }
  if (!o.json.empty()) write_file(o.json, doc.dump(2) + "\n");
  if (!o.dot.empty()) {
    if (dot.empty()) throw vb1::InvalidArgument("this command has no DOT output");
    write_file(o.dot, dot);
  }
}

void add_output_flags(CLI::App* app, Output& o, bool with_dot) {
  std::vector<std::string> formats{"json", "text"};
  if (with_dot) formats.push_back("dot");
  app->add_option("--format", o.format, "Output format on stdout or --out")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  app->add_option("--out", o.out, "Write the primary output to this file");
  app->add_option("--json", o.json, "Also write JSON to this file");
  if (with_dot) app->add_option("--dot", o.dot, "Also write the Schreier graph as DOT");
}

struct MonodromyInput {
  std::string word;
  std::string aut;
};

void add_monodromy_flags(CLI::App* app, MonodromyInput& m) {
  auto* f = app->add_option("--f", m.word, "Monodromy as a twist word, e.g. \"Dx Dy^4\"");
  auto* a = app->add_option("--aut", m.aut, "Monodromy as generator images, e.g. \"x -> x; y -> y x\"");
  f->excludes(a);
}

vb1::Monodromy monodromy(const MonodromyInput& m, std::size_t k) {
  if (!m.aut.empty()) return vb1::Monodromy::automorphism(m.aut, k);
  return vb1::Monodromy::twist_word(m.word.empty() ? "id" : m.word, k);
}

std::vector<vb1::Perm> parse_perms(const std::vector<std::string>& texts, std::size_t degree) {
  std::vector<vb1::Perm> out;
  for (const auto& t : texts) out.push_back(vb1::Perm::parse(t, degree));
  return out;
}

// Degree from an explicit flag or the largest point mentioned anywhere.
std::size_t common_degree(const std::vector<std::string>& texts, std::size_t degree) {
  if (degree != 0) return degree;
  std::size_t d = 1;
  for (const auto& t : texts) d = std::max(d, vb1::Perm::parse(t).degree());
  return d;
}

int report_exit(const vb1::BettiReport& r) { return r.passed() ? kOk : kCertificate; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covers of punctured-torus bundles and their first Betti numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  vb1::PipelineOptions po;
  app.add_option("--threads", po.threads, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--power-bound", po.power_bound, "Largest power m tried for f^m")
      ->check(CLI::Range(1u, 100000u))
      ->capture_default_str();

  Output out;
  int code = kOk;
  std::function<int()> action;

  // cover grid / cover boundary
  auto* cover = app.add_subcommand("cover", "Build covers of the punctured torus");
  cover->require_subcommand(1);
  std::uint32_t grid_r = 0;
  std::vector<std::string> sigma;
  auto* grid = cover->add_subcommand("grid", "Four-row grid cover from sigma_1..sigma_4");
  grid->add_option("--r", grid_r, "Sheets per row")->required()->check(CLI::Range(1u, 100000u));
  grid->add_option("--sigma", sigma,
                   "Row permutations sigma_1..sigma_4 in cycle notation; two values give sigma_1, sigma_3 "
                   "with sigma_2, sigma_4 their inverses")
      ->required();
  add_output_flags(grid, out, true);
  grid->callback([&] {
    action = [&] {
      if (sigma.size() != 2 && sigma.size() != 4) throw vb1::InvalidArgument("--sigma needs 2 or 4 permutations");
      std::vector<vb1::Perm> s = parse_perms(sigma, grid_r);
      if (s.size() == 2) s = {s[0], s[0].inverse(), s[1], s[1].inverse()};
      vb1::PermCover c = vb1::grid_cover(grid_r, {s[0], s[1], s[2], s[3]});
      Json doc = vb1::cover_descriptor(c);
      auto cond = vb1::check_lift_conditions(s, 2);
      doc["lift_conditions"] = Json{{"prefix_commutation", cond.lemma_lift}, {"condition_I", cond.condition_I}};
      std::ostringstream text;
      text << "grid cover: degree " << c.degree() << ", genus " << c.genus() << ", " << c.punctures().size()
           << " puncture lifts\n";
      emit(out, doc, text.str(), vb1::schreier_dot(c));
      return kOk;
    };
  });

  std::string px, py;
  std::size_t degree = 0;
  unsigned fill_n = 0;
  auto* boundary = cover->add_subcommand("boundary", "Puncture lifts of the cover given by phi(x), phi(y)");
  boundary->add_option("--x", px, "phi(x) in cycle notation")->required();
  boundary->add_option("--y", py, "phi(y) in cycle notation")->required();
  boundary->add_option("--degree", degree, "Number of sheets (default: largest point)");
  boundary->add_option("--n", fill_n, "Also report the orbifold fill at cone order n")->check(CLI::Range(1u, 100000u));
  add_output_flags(boundary, out, true);
  boundary->callback([&] {
    action = [&] {
      std::size_t d = common_degree({px, py}, degree);
      vb1::PermCover c(vb1::FatSurface::punctured_torus(), parse_perms({px, py}, d), 0);
      Json doc = vb1::cover_descriptor(c);
      std::ostringstream text;
      text << "cover: degree " << c.degree() << ", genus " << c.genus() << "\n";
      for (const auto& p : c.punctures()) text << "  puncture lift at sheet " << p.cycle[0] + 1 << ", degree " << p.degree << "\n";
      if (fill_n != 0) {
        try {
          auto fill = vb1::orbifold_fill(c, fill_n);
          doc["fill"] = Json{{"n", fill_n}, {"cone_orders", fill.cone_orders}, {"manifold", fill.manifold()}};
        } catch (const vb1::ComputationError& e) {
          doc["fill"] = Json{{"n", fill_n}, {"error", e.what()}};
        }
        text << "  fill at " << fill_n << ": " << doc["fill"].dump() << "\n";
      }
      emit(out, doc, text.str(), vb1::schreier_dot(c));
      return kOk;
    };
  });

  // lift check
  auto* lift = app.add_subcommand("lift", "Lifting of monodromies to covers");
  lift->require_subcommand(1);
  MonodromyInput lift_m;
  auto* lift_check = lift->add_subcommand("check", "Least lifting power and all lifts of f^m");
  lift_check->add_option("--x", px, "phi(x) in cycle notation")->required();
  lift_check->add_option("--y", py, "phi(y) in cycle notation")->required();
  lift_check->add_option("--degree", degree, "Number of sheets (default: largest point)");
  add_monodromy_flags(lift_check, lift_m);
  add_output_flags(lift_check, out, false);
  lift_check->callback([&] {
    action = [&] {
      std::size_t d = common_degree({px, py}, degree);
      vb1::PermCover c(vb1::FatSurface::punctured_torus(), parse_perms({px, py}, d), 0);
      vb1::Monodromy f = monodromy(lift_m, 1);
      auto m = vb1::minimal_lifting_power(c, f.aut, po.power_bound);
      Json doc{{"monodromy", f.description}, {"degree", c.degree()}, {"power_bound", po.power_bound}};
      std::ostringstream text;
      if (!m) {
        doc["power"] = nullptr;
        text << "no power f^m with m <= " << po.power_bound << " lifts\n";
        emit(out, doc, text.str());
        return kComputation;
      }
      vb1::FreeAut fm = f.aut.power(*m, po.length_cap);
      Json lifts = Json::array();
      for (const auto& l : vb1::find_lifts(c, fm)) lifts.push_back(l.to_string());
      doc["power"] = *m;
      doc["lifts"] = lifts;
      text << "f^" << *m << " lifts; " << lifts.size() << " lifts\n";
      for (const auto& l : lifts) text << "  " << l.get<std::string>() << "\n";
      emit(out, doc, text.str());
      return kOk;
    };
  });

  // betti
  MonodromyInput betti_m;
  unsigned betti_n = 2;
  auto* betti = app.add_subcommand("betti", "b1 of the mapping tori of all lifts of f^m");
  betti->add_option("--x", px, "phi(x) in cycle notation")->required();
  betti->add_option("--y", py, "phi(y) in cycle notation")->required();
  betti->add_option("--degree", degree, "Number of sheets (default: largest point)");
  betti->add_option("--n", betti_n, "Cone order at the puncture")->check(CLI::Range(1u, 100000u))->capture_default_str();
  add_monodromy_flags(betti, betti_m);
  add_output_flags(betti, out, false);
  betti->callback([&] {
    action = [&] {
      std::size_t d = common_degree({px, py}, degree);
      vb1::PermCover c(vb1::FatSurface::punctured_torus(), parse_perms({px, py}, d), 0);
      vb1::BettiReport r = vb1::run_betti(c, monodromy(betti_m, 1), betti_n, po);
      Json doc = r.to_json();
      emit(out, doc, vb1::render_text(doc));
      return report_exit(r);
    };
  });

  // case1
  MonodromyInput case1_m;
  auto* case1 = app.add_subcommand("case1", "The 16-sheet cover at cone order 2");
  add_monodromy_flags(case1, case1_m);
  add_output_flags(case1, out, false);
  case1->callback([&] {
    action = [&] {
      vb1::BettiReport r = vb1::run_case1(monodromy(case1_m, 1), po);
      Json doc = r.to_json();
      emit(out, doc, vb1::render_text(doc));
      return report_exit(r);
    };
  });

  // case2 and quotient share the search flags
  auto add_search = [&](CLI::App* a) {
    a->add_option("--seed", po.search.seed, "Seed of the quotient search")->capture_default_str();
    a->add_option("--cap", po.search.cap, "Largest group order built")->check(CLI::Range(1, 1000000))->capture_default_str();
    a->add_option("--min-order", po.search.min_order, "Skip smaller quotients")->capture_default_str();
    a->add_option("--budget", po.search.budget, "Random pairs per prime")->check(CLI::Range(1, 100000000))->capture_default_str();
  };
  MonodromyInput case2_m;
  unsigned case2_n = 3;
  auto* case2 = app.add_subcommand("case2", "Triangle-group quotient cover at cone order n >= 3");
  case2->add_option("--n", case2_n, "Cone order")->check(CLI::Range(3u, 1000u))->capture_default_str();
  add_monodromy_flags(case2, case2_m);
  add_search(case2);
  add_output_flags(case2, out, false);
  case2->callback([&] {
    action = [&] {
      vb1::BettiReport r = vb1::run_case2(case2_n, monodromy(case2_m, 1), po);
      Json doc = r.to_json();
      emit(out, doc, vb1::render_text(doc));
      return report_exit(r);
    };
  });

  unsigned quotient_n = 3;
  auto* quotient = app.add_subcommand("quotient", "Find a (2n,2n,n) triangle group quotient");
  quotient->add_option("--n", quotient_n, "n")->check(CLI::Range(2u, 1000u))->capture_default_str();
  add_search(quotient);
  add_output_flags(quotient, out, false);
  quotient->callback([&] {
    action = [&] {
      vb1::QuotientCertificate cert = vb1::find_triangle_quotient(quotient_n, po.search);
      Json doc = cert.to_json();
      doc["counts"] = vb1::case2_certificates(cert).to_json();
      std::ostringstream text;
      text << "quotient of order " << cert.order() << " from " << cert.source << ", orders " << doc["orders"].dump()
           << "\n";
      emit(out, doc, text.str());
      return cert.verify() ? kOk : kCertificate;
    };
  });

  // multik
  MonodromyInput multik_m;
  std::size_t multik_k = 2;
  auto* multik = app.add_subcommand("multik", "Fiber product over the k-punctured torus");
  multik->add_option("--k", multik_k, "Number of punctures")->check(CLI::Range(2, 8))->capture_default_str();
  add_monodromy_flags(multik, multik_m);
  add_output_flags(multik, out, false);
  multik->callback([&] {
    action = [&] {
      vb1::BettiReport r = vb1::run_multik(multik_k, monodromy(multik_m, multik_k), po);
      Json doc = r.to_json();
      emit(out, doc, vb1::render_text(doc));
      return report_exit(r);
    };
  });

  // reduce
  MonodromyInput reduce_m;
  std::size_t reduce_k = 2;
  std::vector<unsigned> cones;
  std::size_t keep = 1;
  bool feed = false;
  auto* reduce = app.add_subcommand("reduce", "Fill all punctures but one and compare b1");
  reduce->add_option("--k", reduce_k, "Number of punctures")->check(CLI::Range(1, 16))->capture_default_str();
  reduce->add_option("--cones", cones, "Cone order per puncture")->required()->delimiter(',');
  reduce->add_option("--keep", keep, "Puncture kept (1-based)")->check(CLI::PositiveNumber)->capture_default_str();
  reduce->add_flag("--feed", feed, "Pass the induced monodromy to case1 or case2");
  add_monodromy_flags(reduce, reduce_m);
  add_output_flags(reduce, out, false);
  reduce->callback([&] {
    action = [&] {
      vb1::BettiReport r = vb1::run_reduction(monodromy(reduce_m, reduce_k), cones, keep - 1, po, feed);
      Json doc = r.to_json();
      emit(out, doc, vb1::render_text(doc));
      return report_exit(r);
    };
  });

  // selftest
  vb1::SelftestOptions so;
  bool determinism = false;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_option("--seed", so.seed, "Seed of every randomized suite")->capture_default_str();
  selftest->add_option("--min-order", so.case2_min_order, "Smallest quotient for the n = 3 run")->capture_default_str();
  selftest->add_flag("--determinism", determinism, "Also rerun everything and compare the JSON");
  add_output_flags(selftest, out, false);
  selftest->callback([&] {
    action = [&] {
      so.threads = po.threads;
      bool all = true;
      auto results = vb1::run_selftest(so, [&](const vb1::CriterionResult& r) {
        std::cerr << r.line() << std::endl;
        all = all && r.passed();
      });
      Json doc = vb1::selftest_json(so, results);
      if (determinism) {
        vb1::CriterionResult d = vb1::determinism_criterion(so, doc);
        std::cerr << d.line() << std::endl;
        all = all && d.passed();
      }
      std::ostringstream text;
      for (const auto& r : results) text << r.line() << "\n";
      emit(out, doc, text.str());
      return all ? kOk : kCertificate;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    code = action ? action() : kUsage;
  } catch (const vb1::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const vb1::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const vb1::ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kComputation;
  } catch (const vb1::CertificateError& e) {
    std::cerr << "certificate violation: " << e.what() << "\n";
    return kCertificate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return code;
}
