#include "vb1/homology.hpp"

#include <algorithm>

#include "vb1/error.hpp"

namespace vb1 {

namespace {

using SparseChain = std::vector<std::pair<std::size_t, long long>>;

SparseChain sparse_chain(const PermCover& c, const CoverLoop& a) {
  SparseChain out;
  Perm::Point v = a.start;
  for (Letter l : a.letters) {
    out.emplace_back(c.graph().step_edge(v, l), l > 0 ? 1 : -1);
    v = c.graph().step(v, l);
  }
  return out;
}

long long apply_functional(const std::vector<long long>& f, const SparseChain& chain) {
  long long total = 0;
  for (const auto& [e, k] : chain) total += f[e] * k;
  return total;
}

std::vector<Letter> loop_word(const SchreierGraph& g, std::size_t edge) {
  std::vector<Letter> w = g.tree_word(g.edge_source(edge));
  w.push_back(gen_letter(g.edge_generator(edge)));
  std::vector<Letter> back = inverse_letters(g.tree_word(g.edge_target(edge)));
  w.insert(w.end(), back.begin(), back.end());
  return w;
}

std::vector<Letter> repeat(const std::vector<Letter>& w, std::size_t times) {
  std::vector<Letter> out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

H1Basis::H1Basis(PermCover cover) : cover_(std::move(cover)), boundary_span_(dimension()) {
  for (const auto& p : cover_.punctures()) {
    CoverLoop loop{p.cycle[0], repeat(cover_.base().boundary_words()[p.boundary].letters(), p.degree)};
    boundary_.push_back(coordinates(loop));
    boundary_span_.add(to_rational(boundary_.back()));
  }
}

IntVector H1Basis::coordinates(const std::vector<long long>& chain) const {
  const auto& nontree = cover_.graph().nontree_edges();
  IntVector out(nontree.size());
  for (std::size_t i = 0; i < nontree.size(); ++i) out[i] = Integer(static_cast<long>(chain[nontree[i]]));
  return out;
}

IntVector H1Basis::coordinates(const CoverLoop& loop) const {
  if (!cover_.is_closed(loop)) throw InvalidArgument("edge path is not a closed loop in the cover");
  IntVector out(dimension());
  for (auto& x : out) x = 0;
  Perm::Point v = loop.start;
  for (Letter l : loop.letters) {
    std::ptrdiff_t k = cover_.graph().nontree_index(cover_.graph().step_edge(v, l));
    if (k >= 0) out[static_cast<std::size_t>(k)] += l > 0 ? 1 : -1;
    v = cover_.graph().step(v, l);
  }
  return out;
}

RatVector H1Basis::coordinates(const RatVector& chain) const {
  const auto& nontree = cover_.graph().nontree_edges();
  RatVector out(nontree.size());
  for (std::size_t i = 0; i < nontree.size(); ++i) out[i] = chain[nontree[i]];
  return out;
}

CoverLoop H1Basis::basis_loop(std::size_t i) const {
  const auto& g = cover_.graph();
  return CoverLoop{g.base(), loop_word(g, g.nontree_edges().at(i))};
}

IntMatrix H1Basis::intersection_form() const {
  const std::size_t h = dimension();
  std::vector<SparseChain> chains;
  chains.reserve(h);
  for (std::size_t j = 0; j < h; ++j) chains.push_back(sparse_chain(cover_, basis_loop(j)));
  IntMatrix omega(h, h);
  for (std::size_t i = 0; i < h; ++i) {
    std::vector<long long> f = intersection_functional(cover_, basis_loop(i));
    for (std::size_t j = 0; j < h; ++j) omega(i, j) = Integer(static_cast<long>(apply_functional(f, chains[j])));
  }
  return omega;
}

RatVector H1Basis::functional(const RatVector& coords) const {
  RatVector out(cover_.graph().edge_count());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    std::vector<long long> f = intersection_functional(cover_, basis_loop(i));
    for (std::size_t e = 0; e < f.size(); ++e) {
      if (f[e] != 0) out[e] += coords[i] * static_cast<long>(f[e]);
    }
  }
  return out;
}

RatVector H1Basis::chain(const RatVector& coords) const {
  RatVector out(cover_.graph().edge_count());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    for (const auto& [e, k] : sparse_chain(cover_, basis_loop(i))) out[e] += coords[i] * static_cast<long>(k);
  }
  return out;
}

Rational H1Basis::pairing(const RatVector& a, const RatVector& b) const {
  if (a.size() != dimension() || b.size() != dimension()) throw InvalidArgument("class has the wrong dimension");
  RatVector f = functional(a);
  RatVector c = chain(b);
  Rational total = 0;
  for (std::size_t e = 0; e < f.size(); ++e) {
    if (sgn(f[e]) != 0 && sgn(c[e]) != 0) total += f[e] * c[e];
  }
  return total;
}

HomologyAction::HomologyAction(const H1Basis& basis, const FreeAut& f, const Perm& lambda)
    : basis_(&basis), lift_(lambda) {
  const PermCover& c = basis.cover();
  if (!is_lift(c, f, lambda)) throw InvalidArgument("sheet map is not a lift of the automorphism to this cover");
  const SchreierGraph& g = c.graph();
  const std::size_t h = basis.dimension();
  matrix_ = IntMatrix(h, h);
  std::vector<long long> column(h);
  for (std::size_t j = 0; j < h; ++j) {
    std::fill(column.begin(), column.end(), 0);
    Perm::Point v = lambda(g.base());
    for (Letter l : loop_word(g, g.nontree_edges()[j])) {
      const auto& img = f.image(letter_gen(l)).letters();
      const std::size_t n = img.size();
      for (std::size_t k = 0; k < n; ++k) {
        Letter m = l > 0 ? img[k] : -img[n - 1 - k];
        std::ptrdiff_t idx = g.nontree_index(g.step_edge(v, m));
        if (idx >= 0) column[static_cast<std::size_t>(idx)] += m > 0 ? 1 : -1;
        v = g.step(v, m);
      }
    }
    for (std::size_t i = 0; i < h; ++i) matrix_(i, j) = Integer(static_cast<long>(column[i]));
  }
  const auto& boundary = basis.boundary_classes();
  IntMatrix m(h, h + boundary.size());
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) m(i, j) = matrix_(i, j) - (i == j ? 1 : 0);
    for (std::size_t b = 0; b < boundary.size(); ++b) m(i, h + b) = boundary[b][i];
  }
  fixed_dimension_ = h - rank(m);
}

bool HomologyAction::fixes(const RatVector& coords) const {
  const std::size_t h = matrix_.rows();
  if (coords.size() != h) throw InvalidArgument("class has the wrong dimension");
  RatVector diff(h);
  for (std::size_t i = 0; i < h; ++i) {
    Rational s = -coords[i];
    for (std::size_t j = 0; j < h; ++j) {
      if (sgn(coords[j]) != 0 && sgn(matrix_(i, j)) != 0) s += Rational(matrix_(i, j)) * coords[j];
    }
    diff[i] = s;
  }
  return basis_->boundary_span().contains(diff);
}

RatMatrix HomologyAction::filled_action() const {
  const auto& span = basis_->boundary_span();
  std::vector<std::size_t> free = span.free_coordinates();
  RatMatrix out(free.size(), free.size());
  for (std::size_t jj = 0; jj < free.size(); ++jj) {
    RatVector col(matrix_.rows());
    for (std::size_t i = 0; i < matrix_.rows(); ++i) col[i] = matrix_(i, free[jj]);
    col = span.reduce(std::move(col));
    for (std::size_t ii = 0; ii < free.size(); ++ii) out(ii, jj) = col[free[ii]];
  }
  return out;
}

RatMatrix HomologyAction::filled_form() const {
  std::vector<std::size_t> free = basis_->boundary_span().free_coordinates();
  IntMatrix omega = basis_->intersection_form();
  RatMatrix out(free.size(), free.size());
  for (std::size_t i = 0; i < free.size(); ++i)
    for (std::size_t j = 0; j < free.size(); ++j) out(i, j) = omega(free[i], free[j]);
  return out;
}

bool HomologyAction::is_symplectic() const {
  RatMatrix a = filled_action();
  RatMatrix j = filled_form();
  return a.transpose() * j * a == j;
}

bool HomologyAction::preserves_boundary() const {
  for (const auto& b : basis_->boundary_classes()) {
    RatVector image(matrix_.rows());
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < matrix_.cols(); ++j) s += matrix_(i, j) * b[j];
      image[i] = s;
    }
    if (!basis_->boundary_span().contains(image)) return false;
  }
  return true;
}

HomologyAction h1_action(const H1Basis& basis, const FreeAut& f, const Perm& lambda) {
  return HomologyAction(basis, f, lambda);
}

std::size_t betti_mapping_torus(const HomologyAction& a, unsigned n) {
  (void)orbifold_fill(a.basis().cover(), n);
  return 1 + a.fixed_dimension();
}

OracleResult betti_oracle(const PermCover& c, const FreeAut& f, const Perm& lambda, unsigned n,
                          std::size_t length_cap) {
  OrbifoldFill fill = orbifold_fill(c, n);
  if (!is_lift(c, f, lambda)) throw InvalidArgument("sheet map is not a lift of the automorphism to this cover");
  const SchreierGraph& g = c.graph();
  const std::size_t h = g.nontree_edges().size();
  std::vector<FreeWord> images;
  images.reserve(h);
  std::size_t total = 0;
  for (std::size_t k = 0; k < h; ++k) {
    images.emplace_back(g.rewrite(lambda(g.base()), f.apply_letters(loop_word(g, g.nontree_edges()[k]))));
    total += images.back().length();
    if (total > length_cap) throw ComputationError("lifted automorphism exceeds " + std::to_string(length_cap) + " letters");
  }
  std::vector<Cone> cones;
  for (std::size_t p = 0; p < c.punctures().size(); ++p) {
    const auto& lift = c.punctures()[p];
    std::vector<Letter> w = repeat(c.base().boundary_words()[lift.boundary].letters(), lift.degree);
    cones.push_back(Cone{FreeWord(g.rewrite(lift.cycle[0], w)), fill.cone_orders[p]});
  }
  FPGroup torus = mapping_torus_presentation(FreeAut(std::move(images)), Alphabet::numbered("s", h), cones);
  OracleResult out{abelianization_rank(torus), {}, torus.rank(), torus.relators().size()};
  if (torus.rank() <= kOracleTorsionLimit) out.torsion = abelianization(torus).torsion;
  return out;
}

PermCover pull_back_cover(const PermCover& filled, const FatSurface& base, const std::vector<FreeWord>& quotient) {
  if (quotient.size() != base.rank()) throw InvalidArgument("quotient needs one image per generator");
  std::vector<Perm> perms;
  for (const auto& w : quotient) {
    if (w.rank_used() > filled.rank()) throw InvalidArgument("quotient image uses a generator outside the filled surface");
    perms.push_back(filled.word_perm(w.letters()));
  }
  return PermCover(base, std::move(perms), filled.basepoint());
}

namespace {

void require_pulled_back(const PermCover& c_plus, const PermCover& c, const std::vector<FreeWord>& quotient) {
  if (c.degree() != c_plus.degree() || c.basepoint() != c_plus.basepoint() || quotient.size() != c.rank()) {
    throw InvalidArgument("covers do not correspond under the filling map");
  }
  for (std::size_t g = 0; g < c.rank(); ++g) {
    if (c.perms()[g] != c_plus.word_perm(quotient[g].letters())) {
      throw InvalidArgument("covers do not correspond under the filling map at generator " + c.base().names().name(g));
    }
  }
}

}  // namespace

CoverLoop pullback_class(const PermCover& c_plus, const CoverLoop& alpha_plus, const PermCover& c,
                         const std::vector<FreeWord>& quotient, const std::vector<FreeWord>& section) {
  require_pulled_back(c_plus, c, quotient);
  if (section.size() != c_plus.rank()) throw InvalidArgument("section needs one image per filled generator");
  if (!c_plus.is_closed(alpha_plus)) throw InvalidArgument("edge path is not a closed loop in the filled cover");
  CoverLoop alpha{alpha_plus.start, substitute(section, alpha_plus.letters)};
  if (!c.is_closed(alpha)) throw CertificateError("pulled-back path does not close up");
  if (substitute(quotient, alpha.letters) != free_reduce(alpha_plus.letters)) {
    throw CertificateError("pulled-back loop does not project to the original");
  }
  return alpha;
}

RatVector pullback_chain(const PermCover& c_plus, const RatVector& chain, const PermCover& c,
                         const std::vector<FreeWord>& section) {
  if (c.degree() != c_plus.degree()) throw InvalidArgument("covers have different degrees");
  if (section.size() != c_plus.rank() || chain.size() != c_plus.graph().edge_count()) {
    throw InvalidArgument("chain or section does not match the filled cover");
  }
  std::vector<std::size_t> target(c_plus.rank());
  for (std::size_t g = 0; g < c_plus.rank(); ++g) {
    if (section[g].length() != 1 || section[g].letters()[0] < 0) {
      throw InvalidArgument("chain pull-back needs a section sending generators to generators");
    }
    target[g] = letter_gen(section[g].letters()[0]);
    if (target[g] >= c.rank()) throw InvalidArgument("section names a generator outside the cover");
  }
  RatVector out(c.graph().edge_count());
  for (std::size_t e = 0; e < chain.size(); ++e) {
    if (sgn(chain[e]) == 0) continue;
    std::size_t g = c_plus.graph().edge_generator(e);
    out[c.graph().edge(c_plus.graph().edge_source(e), target[g])] += chain[e];
  }
  return out;
}

Json cycle_class_json(const PermCover& c, const CycleClass& z) {
  Json loops = Json::array();
  for (std::size_t i = 0; i < z.loops.size(); ++i) {
    Json l = loop_json(c, z.loops[i]);
    l["multiplicity"] = rational_string(z.multiplicities[i]);
    loops.push_back(std::move(l));
  }
  Json coords = Json::object();
  for (std::size_t i = 0; i < z.coords.size(); ++i) {
    if (sgn(z.coords[i]) != 0) coords[std::to_string(i + 1)] = rational_string(z.coords[i]);
  }
  return Json{{"loops", loops}, {"coordinates", coords}};
}

Json FixedPairCertificate::to_json(const PermCover& c) const {
  auto strings = [](const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational_string(q));
    return a;
  };
  Json pairing_matrix = Json::array();
  for (const auto& row : family_pairing) pairing_matrix.push_back(strings(row));
  return Json{{"delta", cycle_class_json(c, delta)},
              {"delta_star", cycle_class_json(c, delta_star)},
              {"intersection", rational_string(pairing)},
              {"y_intersections_delta", strings(y_pairings_delta)},
              {"y_intersections_delta_star", strings(y_pairings_delta_star)},
              {"y_intersections_union", strings(y_pairings)},
              {"fixed_by_twist_x_lift", fixed_by_twist_x},
              {"fixed_by_twist_y4_lift", fixed_by_twist_y4},
              {"row2_cycle_rank", row2_cycle_rank},
              {"family_size", family.size()},
              {"family_rank", family_rank},
              {"family_intersections", pairing_matrix}};
}

namespace {

// Fundamental cycles of the graph on one row of a grid cover whose edges
// are the x-edges and the paths y x Y.
std::vector<CoverLoop> row_cycles(const PermCover& c, std::uint32_t row) {
  const std::uint32_t r = c.grid()->r;
  const std::vector<Letter> x_edge{1};
  const std::vector<Letter> u_edge{2, 1, -2};
  struct Edge {
    Perm::Point from, to;
    const std::vector<Letter>* word;
  };
  std::vector<Edge> edges;
  for (std::uint32_t j = 0; j < r; ++j) {
    Perm::Point v = row * r + j;
    edges.push_back({v, c.graph().walk(v, x_edge), &x_edge});
    edges.push_back({v, c.graph().walk(v, u_edge), &u_edge});
  }
  const Perm::Point root = row * r;
  std::vector<std::vector<Letter>> path(r);
  std::vector<bool> seen(r, false);
  std::vector<bool> tree(edges.size(), false);
  seen[0] = true;
  std::vector<Perm::Point> queue{root};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Perm::Point v = queue[head];
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge& e = edges[k];
      if (e.from == v && !seen[e.to - root]) {
        seen[e.to - root] = true;
        tree[k] = true;
        path[e.to - root] = path[v - root];
        path[e.to - root].insert(path[e.to - root].end(), e.word->begin(), e.word->end());
        queue.push_back(e.to);
      } else if (e.to == v && !seen[e.from - root]) {
        seen[e.from - root] = true;
        tree[k] = true;
        path[e.from - root] = path[v - root];
        std::vector<Letter> back = inverse_letters(*e.word);
        path[e.from - root].insert(path[e.from - root].end(), back.begin(), back.end());
        queue.push_back(e.from);
      }
    }
  }
  if (queue.size() != r) throw ComputationError("row graph is disconnected");
  std::vector<CoverLoop> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (tree[k]) continue;
    const Edge& e = edges[k];
    std::vector<Letter> w = path[e.from - root];
    w.insert(w.end(), e.word->begin(), e.word->end());
    std::vector<Letter> back = inverse_letters(path[e.to - root]);
    w.insert(w.end(), back.begin(), back.end());
    out.push_back(CoverLoop{root, std::move(w)});
  }
  return out;
}

}  // namespace

FixedPairCertificate fixed_pair_search(const H1Basis& basis) {
  const PermCover& c = basis.cover();
  if (!c.grid()) throw InvalidArgument("fixed pair search needs a grid cover");
  const auto& sigma = c.grid()->sigma;
  if (!check_lift_conditions({sigma.begin(), sigma.end()}, 2).condition_I) {
    throw InvalidArgument("fixed pair search needs sigma_2 = sigma_1^-1 and sigma_4 = sigma_3^-1");
  }
  std::vector<CoverLoop> row2 = row_cycles(c, 1);
  std::vector<CoverLoop> row4 = row_cycles(c, 3);
  std::vector<CoverLoop> ycycles;
  for (const auto& cyc : c.perms()[1].cycles()) ycycles.push_back(CoverLoop{cyc[0], std::vector<Letter>(cyc.size(), 2)});

  // Pairings between all row loops and the y-cycles, from edge functionals.
  std::vector<CoverLoop> loops = row2;
  loops.insert(loops.end(), row4.begin(), row4.end());
  std::vector<std::vector<long long>> functionals;
  std::vector<SparseChain> chains;
  for (const auto& l : loops) {
    functionals.push_back(intersection_functional(c, l));
    chains.push_back(sparse_chain(c, l));
  }
  std::vector<SparseChain> ychains;
  for (const auto& y : ycycles) ychains.push_back(sparse_chain(c, y));
  auto loop_pairing = [&](std::size_t a, std::size_t b) { return apply_functional(functionals[a], chains[b]); };
  auto y_pairing = [&](std::size_t a, std::size_t k) { return apply_functional(functionals[a], ychains[k]); };

  const std::size_t n2 = row2.size();
  const std::size_t n4 = row4.size();
  RatMatrix m(ycycles.size(), n4);
  for (std::size_t k = 0; k < ycycles.size(); ++k)
    for (std::size_t b = 0; b < n4; ++b) m(k, b) = static_cast<long>(y_pairing(n2 + b, k));

  FixedPairCertificate cert;
  cert.row2_cycle_rank = n2;
  std::vector<std::vector<Rational>> weights;  // per family member, over all loops
  for (std::size_t a = 0; a < n2; ++a) {
    RatVector t(ycycles.size());
    for (std::size_t k = 0; k < ycycles.size(); ++k) t[k] = -static_cast<long>(y_pairing(a, k));
    std::optional<RatVector> x = solve(m, t);
    if (!x) throw ComputationError("row-2 loop " + std::to_string(a + 1) + " has no row-4 companion");
    std::vector<Rational> w(loops.size());
    w[a] = 1;
    for (std::size_t b = 0; b < n4; ++b) w[n2 + b] = (*x)[b];
    CycleClass z;
    z.coords = RatVector(basis.dimension());
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (sgn(w[i]) == 0) continue;
      z.loops.push_back(loops[i]);
      z.multiplicities.push_back(w[i]);
      IntVector lc = basis.coordinates(loops[i]);
      for (std::size_t j = 0; j < lc.size(); ++j) {
        if (sgn(lc[j]) != 0) z.coords[j] += w[i] * Rational(lc[j]);
      }
    }
    weights.push_back(std::move(w));
    cert.family.push_back(std::move(z));
  }

  auto class_pairing = [&](std::size_t i, std::size_t j) {
    Rational s = 0;
    for (std::size_t a = 0; a < loops.size(); ++a) {
      if (sgn(weights[i][a]) == 0) continue;
      for (std::size_t b = 0; b < loops.size(); ++b) {
        if (sgn(weights[j][b]) != 0) s += weights[i][a] * weights[j][b] * static_cast<long>(loop_pairing(a, b));
      }
    }
    return s;
  };
  auto class_y_pairing = [&](std::size_t i, std::size_t k) {
    Rational s = 0;
    for (std::size_t a = 0; a < loops.size(); ++a) {
      if (sgn(weights[i][a]) != 0) s += weights[i][a] * static_cast<long>(y_pairing(a, k));
    }
    return s;
  };

  RationalSubspace span = basis.boundary_span();
  for (const auto& z : cert.family) {
    if (span.add(z.coords)) ++cert.family_rank;
  }
  cert.family_pairing.assign(n2, std::vector<Rational>(n2));
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) cert.family_pairing[i][j] = class_pairing(i, j);

  std::optional<std::pair<std::size_t, std::size_t>> chosen;
  for (std::size_t i = 0; i < n2 && !chosen; ++i) {
    if (basis.is_peripheral(cert.family[i].coords)) continue;
    for (std::size_t j = i + 1; j < n2 && !chosen; ++j) {
      if (basis.is_peripheral(cert.family[j].coords)) continue;
      if (sgn(cert.family_pairing[i][j]) != 0) chosen = {i, j};
    }
  }
  if (!chosen) throw ComputationError("no pair of row-2 classes with nonzero intersection");
  auto [i, j] = *chosen;
  if (sgn(cert.family_pairing[i][j]) < 0) std::swap(i, j);
  cert.delta = cert.family[i];
  cert.delta_star = cert.family[j];
  cert.pairing = cert.family_pairing[i][j];
  for (std::size_t k = 0; k < ycycles.size(); ++k) {
    cert.y_pairings_delta.push_back(class_y_pairing(i, k));
    cert.y_pairings_delta_star.push_back(class_y_pairing(j, k));
    cert.y_pairings.push_back(cert.y_pairings_delta.back() + cert.y_pairings_delta_star.back());
  }

  HomologyAction tx(basis, twist_x(1), canonical_twist_x_lift(c));
  cert.fixed_by_twist_x = tx.fixes(cert.delta.coords) && tx.fixes(cert.delta_star.coords);
  FreeAut y4 = twist_y(1).power(4);
  std::vector<Perm> y4_lifts = find_lifts(c, y4);
  Perm id = Perm::identity(static_cast<std::uint32_t>(c.degree()));
  if (std::find(y4_lifts.begin(), y4_lifts.end(), id) != y4_lifts.end()) {
    HomologyAction ty(basis, y4, id);
    cert.fixed_by_twist_y4 = ty.fixes(cert.delta.coords) && ty.fixes(cert.delta_star.coords);
  }
  return cert;
}

}  // namespace vb1
