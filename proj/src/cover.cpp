#include "vb1/cover.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "vb1/error.hpp"

namespace vb1 {

PermCover::PermCover(FatSurface base, std::vector<Perm> perms, Perm::Point basepoint) : base_(std::move(base)) {
  if (perms.size() != base_.rank()) {
    throw InvalidArgument("cover needs one permutation per generator: got " + std::to_string(perms.size()) +
                          " for rank " + std::to_string(base_.rank()));
  }
  graph_ = SchreierGraph(std::move(perms), basepoint);
  for (std::size_t j = 0; j < base_.boundary_words().size(); ++j) {
    Perm p = word_perm(base_.boundary_words()[j].letters());
    for (auto& cycle : p.cycles()) {
      auto degree = static_cast<std::uint32_t>(cycle.size());
      punctures_.push_back(PunctureLift{j, std::move(cycle), degree});
    }
  }
  long twice_genus = 2 - euler_characteristic() - static_cast<long>(punctures_.size());
  if (twice_genus < 0 || twice_genus % 2 != 0) throw CertificateError("cover Euler characteristic is inconsistent");
  genus_ = static_cast<std::size_t>(twice_genus / 2);
}

Perm PermCover::word_perm(const std::vector<Letter>& w) const { return word_permutation(perms(), w, degree()); }

bool PermCover::is_closed(const CoverLoop& loop) const {
  if (loop.start >= degree()) return false;
  for (Letter l : loop.letters) {
    if (l == 0 || letter_gen(l) >= rank()) return false;
  }
  return graph_.walk(loop.start, loop.letters) == loop.start;
}

std::size_t PermCover::half_edge_edge(Perm::Point v, std::uint32_t h) const {
  std::size_t g = h / 2;
  return h % 2 == 0 ? graph_.edge(v, g) : graph_.edge(graph_.generator_inverse(g)(v), g);
}

PermCover build_cover(const FatSurface& base, std::vector<Perm> perms, Perm::Point basepoint) {
  return PermCover(base, std::move(perms), basepoint);
}

PermCover grid_cover(std::uint32_t r, const std::array<Perm, 4>& sigma) {
  if (r == 0) throw InvalidArgument("grid cover needs r >= 1");
  for (const auto& s : sigma) {
    if (s.degree() != r) {
      throw InvalidArgument("grid cover: sigma has degree " + std::to_string(s.degree()) + ", expected " +
                            std::to_string(r));
    }
  }
  const std::size_t d = 4 * static_cast<std::size_t>(r);
  std::vector<Perm::Point> px(d), py(d);
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < r; ++j) {
      px[i * r + j] = i * r + sigma[i](j);
      py[i * r + j] = ((i + 1) % 4) * r + j;
    }
  }
  PermCover c(FatSurface::punctured_torus(), {Perm(std::move(px)), Perm(std::move(py))}, 0);
  c.grid_ = GridData{r, sigma};
  return c;
}

PermCover figure_two_cover() {
  Perm s = Perm::parse("(1 2 3 4)", 4);
  return grid_cover(4, {s, s.inverse(), s, s.inverse()});
}

std::vector<PunctureLift> boundary_lifts(const PermCover& c) { return c.punctures(); }

bool OrbifoldFill::manifold() const {
  for (unsigned o : cone_orders) {
    if (o != 1) return false;
  }
  return true;
}

OrbifoldFill orbifold_fill(const PermCover& c, const std::vector<unsigned>& base_orders) {
  if (base_orders.size() != c.base().punctures()) throw InvalidArgument("one cone order per base puncture expected");
  OrbifoldFill out;
  out.n = base_orders.empty() ? 0 : base_orders[0];
  for (const auto& p : c.punctures()) {
    unsigned n = base_orders[p.boundary];
    if (n < 1) throw InvalidArgument("cone order must be positive");
    if (n % p.degree != 0) {
      throw ComputationError("puncture lift over boundary " + std::to_string(p.boundary + 1) + " unwraps " +
                             std::to_string(p.degree) + " times, which does not divide " + std::to_string(n) +
                             "; the cover does not induce an orbifold cover");
    }
    out.cone_orders.push_back(n / p.degree);
  }
  return out;
}

OrbifoldFill orbifold_fill(const PermCover& c, unsigned n) {
  if (n < 2) throw InvalidArgument("cone order must be at least 2");
  return orbifold_fill(c, std::vector<unsigned>(c.base().punctures(), n));
}

LiftConditions check_lift_conditions(const std::vector<Perm>& sigma, unsigned n) {
  LiftConditions out;
  out.n = n;
  if (sigma.empty()) {
    out.lemma_lift = out.condition_II = true;
    return out;
  }
  const std::size_t r = sigma[0].degree();
  for (const auto& s : sigma) {
    if (s.degree() != r) throw InvalidArgument("lift conditions need permutations of equal degree");
  }
  bool lemma = true;
  Perm prefix = Perm::identity(r);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    prefix = prefix * sigma[i];
    if (i + 1 < sigma.size() && !prefix.commutes_with(sigma[i + 1])) lemma = false;
  }
  out.lemma_lift = lemma && prefix.is_identity();
  out.condition_I = sigma.size() == 4 && sigma[1] == sigma[0].inverse() && sigma[3] == sigma[2].inverse();
  bool two = true;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Perm m = sigma[i] * sigma[(i + 1) % sigma.size()].inverse();
    if (!m.pow(n).is_identity()) two = false;
  }
  out.condition_II = two;
  return out;
}

std::vector<Perm> find_intertwiners(const SchreierGraph& graph, const std::vector<Perm>& rho) {
  const std::size_t d = graph.degree();
  const std::size_t r = graph.rank();
  if (rho.size() != r) throw InvalidArgument("target action has the wrong number of generators");
  std::vector<Perm> rho_inv;
  for (const auto& p : rho) {
    if (p.degree() != d) throw InvalidArgument("target action has the wrong degree");
    rho_inv.push_back(p.inverse());
  }
  const Perm::Point none = UINT32_MAX;
  std::vector<Perm> out;
  std::vector<Perm::Point> lambda(d);
  std::vector<Perm::Point> queue;
  std::vector<bool> used(d);
  for (Perm::Point t = 0; t < d; ++t) {
    std::fill(lambda.begin(), lambda.end(), none);
    lambda[graph.base()] = t;
    queue.assign(1, graph.base());
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      Perm::Point v = queue[head];
      for (std::size_t g = 0; g < r && ok; ++g) {
        const std::pair<Perm::Point, Perm::Point> moves[2] = {{graph.generator(g)(v), rho[g](lambda[v])},
                                                              {graph.generator_inverse(g)(v), rho_inv[g](lambda[v])}};
        for (const auto& [w, image] : moves) {
          if (lambda[w] == none) {
            lambda[w] = image;
            queue.push_back(w);
          } else if (lambda[w] != image) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    std::fill(used.begin(), used.end(), false);
    for (Perm::Point v = 0; v < d && ok; ++v) {
      if (used[lambda[v]]) ok = false;
      used[lambda[v]] = true;
    }
    if (ok) out.emplace_back(lambda);
  }
  return out;
}

std::vector<Perm> find_lifts(const PermCover& c, const FreeAut& f) {
  if (!f.certified()) throw InvalidArgument("find_lifts: the automorphism lacks a certified inverse");
  if (f.rank() != c.rank()) throw InvalidArgument("find_lifts: automorphism rank differs from the surface rank");
  return find_intertwiners(c.graph(), f.pull_back(c.perms()));
}

bool is_lift(const PermCover& c, const FreeAut& f, const Perm& lambda) {
  if (lambda.degree() != c.degree() || f.rank() != c.rank()) return false;
  std::vector<Perm> rho = f.pull_back(c.perms());
  for (std::size_t g = 0; g < c.rank(); ++g) {
    // lambda(s . g) = lambda(s) . f(g)  <=>  phi(g) * lambda = lambda * rho(g)
    if (c.perms()[g] * lambda != lambda * rho[g]) return false;
  }
  return true;
}

std::optional<unsigned> minimal_lifting_power(const PermCover& c, const FreeAut& f, unsigned bound) {
  if (!f.certified()) throw InvalidArgument("minimal_lifting_power: the automorphism lacks a certified inverse");
  if (f.rank() != c.rank()) throw InvalidArgument("automorphism rank differs from the surface rank");
  std::vector<Perm> rho = c.perms();
  for (unsigned m = 1; m <= bound; ++m) {
    rho = f.pull_back(rho);
    if (!find_intertwiners(c.graph(), rho).empty()) return m;
  }
  return std::nullopt;
}

Perm canonical_twist_x_lift(const PermCover& c) {
  if (!c.grid()) throw InvalidArgument("canonical D_x lift is defined for grid covers only");
  const GridData& g = *c.grid();
  std::vector<Perm::Point> images(c.degree());
  Perm tau = Perm::identity(g.r);
  for (std::uint32_t i = 0; i < 4; ++i) {
    tau = tau * g.sigma[i];
    for (std::uint32_t j = 0; j < g.r; ++j) images[i * g.r + j] = i * g.r + tau(j);
  }
  return Perm(std::move(images));
}

FiberProduct fiber_product(const std::vector<PermCover>& factors) {
  if (factors.empty()) throw InvalidArgument("fiber product of no covers");
  const FatSurface& base = factors[0].base();
  for (const auto& f : factors) {
    if (!(f.base() == base)) throw InvalidArgument("fiber product: covers have different bases");
  }
  const std::size_t k = factors.size();
  const std::size_t r = base.rank();
  std::map<std::vector<Perm::Point>, Perm::Point> index;
  std::vector<std::vector<Perm::Point>> tuples;
  std::vector<Perm::Point> start;
  for (const auto& f : factors) start.push_back(f.basepoint());
  index.emplace(start, 0);
  tuples.push_back(start);
  std::vector<std::vector<Perm::Point>> images(r);
  for (std::size_t head = 0; head < tuples.size(); ++head) {
    for (std::size_t g = 0; g < r; ++g) {
      std::vector<Perm::Point> next(k);
      for (std::size_t i = 0; i < k; ++i) next[i] = factors[i].perms()[g](tuples[head][i]);
      auto [it, inserted] = index.emplace(next, static_cast<Perm::Point>(tuples.size()));
      if (inserted) tuples.push_back(next);
      images[g].push_back(it->second);
    }
  }
  std::vector<Perm> perms;
  for (auto& im : images) perms.emplace_back(std::move(im));
  FiberProduct out{PermCover(base, std::move(perms), 0), {}};
  out.projections.assign(k, std::vector<Perm::Point>(tuples.size()));
  for (std::size_t s = 0; s < tuples.size(); ++s)
    for (std::size_t i = 0; i < k; ++i) out.projections[i][s] = tuples[s][i];
  return out;
}

namespace {

void require_closed(const PermCover& c, const CoverLoop& a) {
  if (!c.is_closed(a)) throw InvalidArgument("edge path is not a closed loop in the cover");
}

}  // namespace

std::vector<long long> loop_chain(const PermCover& c, const CoverLoop& a) {
  require_closed(c, a);
  std::vector<long long> chain(c.graph().edge_count(), 0);
  Perm::Point v = a.start;
  for (Letter l : a.letters) {
    chain[c.graph().step_edge(v, l)] += l > 0 ? 1 : -1;
    v = c.graph().step(v, l);
  }
  return chain;
}

std::vector<long long> intersection_functional(const PermCover& c, const CoverLoop& a) {
  require_closed(c, a);
  std::vector<long long> f(c.graph().edge_count(), 0);
  const auto& w = a.letters;
  const std::size_t n = w.size();
  Perm::Point v = a.start;
  const FatSurface& base = c.base();
  for (std::size_t i = 0; i < n; ++i) {
    v = c.graph().step(v, w[i]);
    std::uint32_t in = FatSurface::arrival(w[i]);
    std::uint32_t out = FatSurface::departure(w[(i + 1) % n]);
    for (std::uint32_t h = base.next_half_edge(in); h != out; h = base.next_half_edge(h)) {
      f[c.half_edge_edge(v, h)] += h % 2 == 0 ? 1 : -1;
    }
  }
  return f;
}

long long intersection_number(const PermCover& c, const CoverLoop& a, const CoverLoop& b) {
  std::vector<long long> f = intersection_functional(c, a);
  std::vector<long long> chain = loop_chain(c, b);
  long long total = 0;
  for (std::size_t e = 0; e < f.size(); ++e) total += f[e] * chain[e];
  return total;
}

Json loop_json(const PermCover& c, const CoverLoop& a) {
  Json path = Json::array();
  Perm::Point v = a.start;
  for (Letter l : a.letters) {
    path.push_back(Json::array({v + 1, c.base().names().letter_name(l)}));
    v = c.graph().step(v, l);
  }
  return Json{{"start", a.start + 1}, {"word", format_letters(a.letters, c.base().names())}, {"path", path}};
}

Json cover_descriptor(const PermCover& c) {
  const FatSurface& b = c.base();
  Json base{{"generators", b.names().names()}, {"boundary_words", Json::array()}, {"genus", b.genus()}};
  for (const auto& w : b.boundary_words()) base["boundary_words"].push_back(format_word(w, b.names()));
  Json perms = Json::object();
  for (std::size_t g = 0; g < c.rank(); ++g) perms[b.names().name(g)] = c.perms()[g].to_string();
  Json punctures = Json::array();
  for (const auto& p : c.punctures()) {
    Json cycle = Json::array();
    for (auto s : p.cycle) cycle.push_back(s + 1);
    punctures.push_back(Json{{"word", format_word(b.boundary_words()[p.boundary], b.names())},
                             {"boundary", p.boundary + 1},
                             {"cycle", cycle},
                             {"degree", p.degree}});
  }
  Json out{{"base", base},
           {"degree", c.degree()},
           {"basepoint", c.basepoint() + 1},
           {"perms", perms},
           {"euler_characteristic", c.euler_characteristic()},
           {"genus", c.genus()},
           {"punctures", punctures}};
  if (c.grid()) {
    Json sigma = Json::array();
    for (const auto& s : c.grid()->sigma) sigma.push_back(s.to_string());
    out["grid"] = Json{{"r", c.grid()->r}, {"sigma", sigma}};
  }
  return out;
}

std::string schreier_dot(const PermCover& c) {
  static const char* colors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "gray"};
  std::ostringstream out;
  const FatSurface& b = c.base();
  out << "digraph schreier {\n";
  out << "  // degree " << c.degree() << ", genus " << c.genus() << ", " << c.punctures().size() << " punctures\n";
  for (const auto& p : c.punctures()) {
    out << "  // puncture over " << format_word(b.boundary_words()[p.boundary], b.names()) << ": cycle (";
    for (std::size_t i = 0; i < p.cycle.size(); ++i) out << (i ? " " : "") << p.cycle[i] + 1;
    out << "), unwrapping degree " << p.degree << "\n";
  }
  std::vector<std::string> notes(c.degree());
  for (std::size_t k = 0; k < c.punctures().size(); ++k) {
    for (auto s : c.punctures()[k].cycle) notes[s] += (notes[s].empty() ? "p" : ",p") + std::to_string(k + 1);
  }
  for (std::size_t s = 0; s < c.degree(); ++s) {
    out << "  " << s + 1 << " [label=\"";
    if (c.grid()) {
      out << "(" << s / c.grid()->r + 1 << "," << s % c.grid()->r + 1 << ")";
    } else {
      out << s + 1;
    }
    out << "\"";
    if (!notes[s].empty()) out << ", xlabel=\"" << notes[s] << "\"";
    if (s == c.basepoint()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t g = 0; g < c.rank(); ++g) {
    const char* color = colors[g % (sizeof(colors) / sizeof(colors[0]))];
    for (Perm::Point s = 0; s < c.degree(); ++s) {
      out << "  " << s + 1 << " -> " << c.perms()[g](s) + 1 << " [label=\"" << b.names().name(g) << "\", color=" << color
          << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace vb1
