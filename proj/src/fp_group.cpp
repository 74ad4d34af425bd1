#include "vb1/fp_group.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "vb1/error.hpp"

namespace vb1 {

FPGroup::FPGroup(Alphabet generators, std::vector<FreeWord> relators) : generators_(std::move(generators)) {
  for (auto& r : relators) {
    if (r.rank_used() > generators_.size()) throw InvalidArgument("relator uses a generator outside the alphabet");
    if (!r.empty()) relators_.push_back(std::move(r));
  }
}

IntMatrix FPGroup::relation_matrix() const {
  IntMatrix m(relators_.size(), rank());
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    std::vector<long long> sums = relators_[i].exponent_sums(rank());
    for (std::size_t j = 0; j < rank(); ++j) m(i, j) = Integer(static_cast<long>(sums[j]));
  }
  return m;
}

FPGroup FPGroup::parse(std::string_view text) {
  std::size_t gpos = text.find("gens:");
  std::size_t rpos = text.find("rels:");
  if (gpos == std::string_view::npos) throw ParseError("presentation: missing \"gens:\"");
  std::size_t gend = text.find(';', gpos);
  if (rpos != std::string_view::npos && (gend == std::string_view::npos || gend > rpos)) gend = rpos;
  if (gend == std::string_view::npos) gend = text.size();
  Alphabet gens;
  try {
    gens = Alphabet::of(text.substr(gpos + 5, gend - gpos - 5));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("presentation generators: ") + e.what());
  }
  std::vector<FreeWord> rels;
  if (rpos != std::string_view::npos) {
    std::string_view body = text.substr(rpos + 5);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t end = body.find(',', pos);
      if (end == std::string_view::npos) end = body.size();
      std::string_view piece = body.substr(pos, end - pos);
      if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) rels.push_back(parse_word(piece, gens));
      pos = end + 1;
    }
  }
  return FPGroup(std::move(gens), std::move(rels));
}

std::string FPGroup::to_string() const {
  std::string out = "gens:";
  for (const auto& n : generators_.names()) out += ' ' + n;
  out += " ; rels:";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += format_word(relators_[i], generators_);
  }
  return out;
}

Abelianization abelianization(const FPGroup& g) {
  Abelianization out;
  if (g.relators().empty()) {
    out.betti = g.rank();
    return out;
  }
  SmithForm snf = smith_normal_form(g.relation_matrix());
  out.betti = g.rank() - snf.rank;
  for (const auto& d : snf.diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

std::size_t abelianization_rank(const FPGroup& g) {
  if (g.relators().empty()) return g.rank();
  return g.rank() - rank(g.relation_matrix());
}

FPGroup mapping_torus_presentation(const FreeAut& f, const Alphabet& names, const std::vector<Cone>& cones) {
  if (names.size() != f.rank()) throw InvalidArgument("alphabet size differs from automorphism rank");
  std::string stable = names.find("t") ? "t_" : "t";
  Alphabet gens = names.with(stable);
  const Letter t = gen_letter(f.rank());
  std::vector<FreeWord> rels;
  for (std::size_t g = 0; g < f.rank(); ++g) {
    std::vector<Letter> w{t, gen_letter(g), -t};
    std::vector<Letter> img = inverse_letters(f.image(g).letters());
    w.insert(w.end(), img.begin(), img.end());
    rels.emplace_back(w);
  }
  for (const auto& c : cones) {
    if (c.order < 1) throw InvalidArgument("cone order must be positive");
    if (c.loop.rank_used() > f.rank()) throw InvalidArgument("cone loop uses a generator outside the surface");
    rels.push_back(c.loop.pow(c.order));
  }
  return FPGroup(std::move(gens), std::move(rels));
}

FPGroup mapping_torus_presentation(const FreeAut& f, const Alphabet& names,
                                   const std::vector<std::pair<std::size_t, unsigned>>& cone_generators) {
  std::vector<Cone> cones;
  for (const auto& [g, order] : cone_generators) {
    if (order < 2) throw InvalidArgument("cone order " + std::to_string(order) + " is below 2");
    if (g >= f.rank()) throw InvalidArgument("cone generator index " + std::to_string(g) + " out of range");
    cones.push_back(Cone{FreeWord::generator(g), order});
  }
  return mapping_torus_presentation(f, names, cones);
}

FPGroup kill_generators(const FPGroup& g, const std::vector<std::size_t>& idxs) {
  std::vector<bool> killed(g.rank(), false);
  for (std::size_t i : idxs) {
    if (i >= g.rank()) throw InvalidArgument("kill_generators: index " + std::to_string(i) + " out of range");
    killed[i] = true;
  }
  std::vector<std::string> names;
  std::vector<Letter> relabel(g.rank(), 0);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (killed[i]) continue;
    names.push_back(g.generators().name(i));
    relabel[i] = static_cast<Letter>(names.size());
  }
  std::vector<FreeWord> rels;
  for (const auto& r : g.relators()) {
    std::vector<Letter> w;
    for (Letter l : r.letters()) {
      Letter m = relabel[letter_gen(l)];
      if (m != 0) w.push_back(l > 0 ? m : -m);
    }
    rels.emplace_back(w);
  }
  return FPGroup(Alphabet(std::move(names)), std::move(rels));
}

std::vector<Letter> substitute(const std::vector<FreeWord>& images, const std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (Letter l : w) {
    std::size_t g = letter_gen(l);
    if (g >= images.size()) throw InvalidArgument("substitute: generator outside the domain");
    const auto& img = images[g].letters();
    const std::size_t n = img.size();
    for (std::size_t k = 0; k < n; ++k) {
      Letter m = l > 0 ? img[k] : -img[n - 1 - k];
      if (!out.empty() && out.back() == -m) {
        out.pop_back();
      } else {
        out.push_back(m);
      }
    }
  }
  return out;
}

std::vector<FreeWord> filling_quotient(std::size_t puncture, std::size_t k) {
  if (puncture >= k) throw InvalidArgument("puncture index out of range");
  std::vector<FreeWord> images{FreeWord::generator(0), FreeWord::generator(1)};
  for (std::size_t j = 0; j + 1 < k; ++j) {
    images.push_back(j == puncture ? FreeWord::commutator(FreeWord::generator(0), FreeWord::generator(1))
                                   : FreeWord());
  }
  return images;
}

std::vector<FreeWord> filling_section(std::size_t k) {
  (void)k;
  return {FreeWord::generator(0), FreeWord::generator(1)};
}

FreeAut theta(const FreeAut& f, std::size_t puncture, std::size_t k) {
  if (puncture >= k) throw InvalidArgument("theta: puncture index out of range");
  auto action = puncture_action(f, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!action[j] || action[j]->puncture != j) {
      throw InvalidArgument("theta: the automorphism does not fix puncture " + std::to_string(j + 1) +
                            " up to conjugacy; pass to a power first");
    }
  }
  std::vector<FreeWord> q = filling_quotient(puncture, k);
  auto project = [&](const FreeAut& a) {
    return std::vector<FreeWord>{FreeWord(substitute(q, a.image(0).letters())),
                                 FreeWord(substitute(q, a.image(1).letters()))};
  };
  std::vector<FreeWord> images = project(f);
  if (f.certified()) {
    std::vector<FreeWord> inverse = project(f.inverse());
    try {
      return FreeAut(images, inverse);
    } catch (const InvalidArgument&) {
      throw ComputationError("theta: induced map on F(x,y) is not an automorphism");
    }
  }
  auto certified = certify_automorphism(FreeAut(images));
  if (!certified) throw ComputationError("theta: induced map on F(x,y) is not an automorphism");
  return *certified;
}

SubgroupPresentation subgroup_presentation(const FPGroup& g, const std::vector<Perm>& rep, Perm::Point base) {
  if (rep.size() != g.rank()) {
    throw InvalidArgument("representation has " + std::to_string(rep.size()) + " permutations for " +
                          std::to_string(g.rank()) + " generators");
  }
  SchreierGraph graph(rep, base);
  for (const auto& r : g.relators()) {
    if (!word_permutation(rep, r.letters(), graph.degree()).is_identity()) {
      throw InvalidArgument("relator " + format_word(r, g.generators()) + " is not satisfied by the representation");
    }
  }
  Alphabet names = Alphabet::numbered("s", graph.nontree_edges().size());
  std::vector<FreeWord> rels;
  for (Perm::Point v = 0; v < graph.degree(); ++v) {
    for (const auto& r : g.relators()) {
      FreeWord w(graph.rewrite(v, r.letters()));
      if (!w.empty()) rels.push_back(std::move(w));
    }
  }
  return SubgroupPresentation{FPGroup(std::move(names), std::move(rels)), std::move(graph)};
}

bool trivial_in_mapping_torus(const std::vector<Letter>& w, const FreeAut& f) {
  const std::size_t t = f.rank();
  std::map<long long, FreeAut> powers;
  powers.emplace(0, FreeAut::identity(f.rank()));
  auto power = [&](long long n) -> const FreeAut& {
    auto it = powers.find(n);
    if (it != powers.end()) return it->second;
    return powers.emplace(n, f.power(n)).first->second;
  };
  std::vector<Letter> u;
  long long n = 0;
  for (Letter l : w) {
    std::size_t g = letter_gen(l);
    if (g == t) {
      n += l > 0 ? 1 : -1;
      continue;
    }
    if (g > t) throw InvalidArgument("word uses a generator beyond the stable letter");
    // u t^n g^{+-1} = u f^n(g^{+-1}) t^n
    const FreeAut& fn = power(n);
    std::vector<Letter> img = fn.image(g).letters();
    if (l < 0) img = inverse_letters(img);
    for (Letter m : img) {
      if (!u.empty() && u.back() == -m) {
        u.pop_back();
      } else {
        u.push_back(m);
      }
    }
  }
  return u.empty() && n == 0;
}

}  // namespace vb1
