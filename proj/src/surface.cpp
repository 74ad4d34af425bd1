#include "vb1/surface.hpp"

#include "vb1/error.hpp"
#include "vb1/free_aut.hpp"

namespace vb1 {

FatSurface::FatSurface(Alphabet names, std::vector<FreeWord> boundary_words)
    : names_(std::move(names)), boundary_(std::move(boundary_words)) {
  const std::size_t halves = 2 * rank();
  if (rank() == 0) throw InvalidArgument("surface needs at least one generator");
  const std::uint32_t unset = UINT32_MAX;
  next_.assign(halves, unset);
  for (const auto& w : boundary_) {
    const auto& l = w.letters();
    if (l.empty()) throw InvalidArgument("empty boundary word");
    if (w.rank_used() > rank()) throw InvalidArgument("boundary word uses a generator outside the surface");
    for (std::size_t i = 0; i < l.size(); ++i) {
      std::uint32_t a = arrival(l[i]);
      std::uint32_t d = departure(l[(i + 1) % l.size()]);
      if (next_[a] != unset) {
        throw InvalidArgument("boundary words pass the corner after " + names_.letter_name(l[i]) + " twice");
      }
      next_[a] = d;
    }
  }
  std::vector<bool> hit(halves, false);
  for (std::uint32_t h = 0; h < halves; ++h) {
    if (next_[h] == unset) throw InvalidArgument("boundary words miss a corner of the ribbon graph");
    if (hit[next_[h]]) throw InvalidArgument("boundary words do not define a cyclic order");
    hit[next_[h]] = true;
  }
  std::size_t cycle = 0;
  std::uint32_t h = 0;
  do {
    h = next_[h];
    ++cycle;
  } while (h != 0);
  if (cycle != halves) throw InvalidArgument("ribbon graph from these boundary words has more than one vertex");
  long twice_genus = 2 - euler_characteristic() - static_cast<long>(punctures());
  if (twice_genus < 0 || twice_genus % 2 != 0) throw InvalidArgument("Euler characteristic is inconsistent");
  genus_ = static_cast<std::size_t>(twice_genus / 2);
}

FatSurface FatSurface::punctured_torus() { return k_punctured_torus(1); }

FatSurface FatSurface::k_punctured_torus(std::size_t k) {
  return FatSurface(surface_alphabet(k), surface_boundary_words(k));
}

std::vector<std::uint32_t> FatSurface::cyclic_order() const {
  std::vector<std::uint32_t> out;
  std::uint32_t h = 0;
  do {
    out.push_back(h);
    h = next_[h];
  } while (h != 0);
  return out;
}

std::vector<std::vector<Letter>> FatSurface::trace_boundary() const {
  const std::size_t halves = next_.size();
  std::vector<bool> used(halves, false);
  std::vector<std::vector<Letter>> out;
  for (std::uint32_t start = 0; start < halves; ++start) {
    // start is an arrival end; follow corners until it recurs
    if (used[start]) continue;
    std::vector<Letter> face;
    std::uint32_t a = start;
    while (!used[a]) {
      used[a] = true;
      std::uint32_t d = next_[a];
      Letter l = static_cast<Letter>(d / 2 + 1);
      if (d % 2 == 1) l = -l;
      face.push_back(l);
      a = arrival(l);
    }
    out.push_back(std::move(face));
  }
  return out;
}

}  // namespace vb1
