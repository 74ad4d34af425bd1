#include "vb1/schreier.hpp"

#include <algorithm>

#include "vb1/error.hpp"

namespace vb1 {

SchreierGraph::SchreierGraph(std::vector<Perm> generators, Point base) : base_(base), gens_(std::move(generators)) {
  if (gens_.empty()) throw InvalidArgument("Schreier graph needs at least one generator");
  degree_ = gens_[0].degree();
  for (const auto& g : gens_) {
    if (g.degree() != degree_) {
      throw InvalidArgument("generator permutations have different degrees (" + std::to_string(degree_) + " and " +
                            std::to_string(g.degree()) + ")");
    }
  }
  if (base_ >= degree_) throw InvalidArgument("base point outside the permutation domain");
  for (const auto& g : gens_) inverses_.push_back(g.inverse());

  const std::size_t r = gens_.size();
  parent_.assign(degree_, 0);
  parent_letter_.assign(degree_, 0);
  depth_.assign(degree_, 0);
  std::vector<bool> seen(degree_, false);
  std::vector<bool> tree(degree_ * r, false);
  std::vector<Point> queue{base_};
  seen[base_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point v = queue[head];
    for (std::size_t g = 0; g < r; ++g) {
      for (Letter l : {gen_letter(g), -gen_letter(g)}) {
        Point w = step(v, l);
        if (seen[w]) continue;
        seen[w] = true;
        parent_[w] = v;
        parent_letter_[w] = l;
        depth_[w] = depth_[v] + 1;
        tree[step_edge(v, l)] = true;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != degree_) {
    std::string parts;
    for (const auto& orbit : orbits(gens_, degree_)) {
      parts += '{';
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (i != 0) parts += ' ';
        parts += std::to_string(orbit[i] + 1);
      }
      parts += '}';
    }
    throw InvalidArgument("permutation representation is not transitive; orbits " + parts);
  }
  nontree_index_.assign(degree_ * r, -1);
  for (std::size_t e = 0; e < degree_ * r; ++e) {
    if (!tree[e]) {
      nontree_index_[e] = static_cast<std::ptrdiff_t>(nontree_.size());
      nontree_.push_back(e);
    }
  }
}

SchreierGraph::Point SchreierGraph::walk(Point v, const std::vector<Letter>& w) const {
  for (Letter l : w) {
    if (letter_gen(l) >= gens_.size()) throw InvalidArgument("word uses a generator outside the graph");
    v = step(v, l);
  }
  return v;
}

std::vector<Letter> SchreierGraph::tree_word(Point v) const {
  std::vector<Letter> out;
  while (v != base_) {
    out.push_back(parent_letter_[v]);
    v = parent_[v];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Letter> SchreierGraph::rewrite(Point v, const std::vector<Letter>& w) const {
  std::vector<Letter> out;
  for (Letter l : w) {
    if (letter_gen(l) >= gens_.size()) throw InvalidArgument("word uses a generator outside the graph");
    std::size_t e = step_edge(v, l);
    std::ptrdiff_t k = nontree_index_[e];
    if (k >= 0) {
      Letter s = static_cast<Letter>(k + 1);
      if (l < 0) s = -s;
      if (!out.empty() && out.back() == -s) {
        out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    v = step(v, l);
  }
  return out;
}

}  // namespace vb1
