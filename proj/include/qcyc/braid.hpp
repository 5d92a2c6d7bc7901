#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcyc/cartan.hpp"
#include "qcyc/qpoly.hpp"
#include "qcyc/weyl.hpp"

namespace qcyc {

/// The braid generator T_i acting on a tuple of log-series components:
/// component i becomes -h_i(q_i^2 u); component j picks up
/// sum_{s=0}^{|a_ji|-1} h_i(q^{d_i + d_j(|a_ji|-1-2s)} u).
///
/// The shift exponents d_i + d_j(|a_ji|-1-2s) match the degree-r eigenvalue
/// coefficient q_i^r [r a_ji]_j / [r]_j slice by slice; they reduce to the
/// familiar q^1 / q^3,q^1 / q^5,q^3,q^1 patterns in every rank-2 subdiagram
/// with its adapted normalization (and everywhere in simply-laced types),
/// but a singly-linked pair of d=2 nodes shifts by q^2, which is what keeps
/// the braid relations exact in types like B3.
inline HTuple apply_generator(const CartanData& c, int i, const HTuple& h) {
  if (i < 0 || i >= c.n) throw std::invalid_argument("apply_generator: node out of range");
  if (h.size() != static_cast<std::size_t>(c.n))
    throw std::invalid_argument("apply_generator: tuple size does not match rank");
  HTuple out = h;
  const RootMultiset& hi = h.comps[static_cast<std::size_t>(i)];
  out.comps[static_cast<std::size_t>(i)] = negated(shift(hi, 2 * c.d[static_cast<std::size_t>(i)]));
  for (int j = 0; j < c.n; ++j) {
    if (j == i) continue;
    const int aji = c.a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    const int di = c.d[static_cast<std::size_t>(i)];
    const int dj = c.d[static_cast<std::size_t>(j)];
    for (int s = 0; s < -aji; ++s)
      out.comps[static_cast<std::size_t>(j)] += shift(hi, di + dj * (-aji - 1 - 2 * s));
  }
  return out;
}

/// T_{i_1} (T_{i_2} ( ... T_{i_k}(h))). The word need not be reduced.
inline HTuple apply_word(const CartanData& c, const std::vector<int>& word, HTuple h) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) h = apply_generator(c, *it, h);
  return h;
}

/// T_w h for every element of the group, indexed by element id. Computed over
/// the BFS tree, one generator application per edge.
inline std::vector<HTuple> orbit(const CartanData& c, const WeylGroup& g, const HTuple& h) {
  if (g.rank() != c.n) throw std::invalid_argument("orbit: group and Cartan data disagree on rank");
  std::vector<HTuple> out(g.size());
  out[0] = h;
  for (std::uint32_t id = 1; id < g.size(); ++id) {
    const WeylElement& e = g.element(id);
    out[id] = apply_generator(c, e.parent_gen, out[static_cast<std::uint32_t>(e.parent)]);
  }
  return out;
}

/// The coefficients p_{r,j} in (T_w h)_i = sum_j sum_r p_{r,j} h_j(q^r u),
/// read off from T_w applied to the tuple whose node j carries a single fresh
/// root. Requires i to be an ascent of w; entries must come out nonnegative
/// with r >= 0, anything else signals a bug in the action itself.
inline std::map<std::pair<int, int>, int> twist_polynomial(const CartanData& c, const WeylGroup& g,
                                                           std::uint32_t w, int i) {
  if (i < 0 || i >= c.n) throw std::invalid_argument("twist_polynomial: node out of range");
  if (!(g.element(w).ascent_mask & (1u << i)))
    throw std::invalid_argument("twist_polynomial: node " + std::to_string(i + 1) +
                                " is not an ascent of the element");
  HTuple taut(static_cast<std::size_t>(c.n));
  std::vector<SpectralParam> marker(static_cast<std::size_t>(c.n));
  for (int j = 0; j < c.n; ++j) {
    marker[static_cast<std::size_t>(j)] = SpectralParam::symbol("b" + std::to_string(j + 1));
    taut.comps[static_cast<std::size_t>(j)].add(marker[static_cast<std::size_t>(j)], 1);
  }
  const HTuple moved = apply_word(c, g.element(w).word, taut);

  std::map<std::pair<int, int>, int> out;
  for (const auto& [root, mult] : moved.comps[static_cast<std::size_t>(i)].entries) {
    if (mult < 0)
      throw std::logic_error("twist_polynomial: negative multiplicity " + std::to_string(mult) +
                             " at root " + root.to_string());
    int node = -1;
    for (int j = 0; j < c.n; ++j)
      if (root.base == marker[static_cast<std::size_t>(j)].base) node = j;
    if (node < 0)
      throw std::logic_error("twist_polynomial: unexpected root " + root.to_string());
    if (root.qexp < 0)
      throw std::logic_error("twist_polynomial: negative shift q^" + std::to_string(root.qexp) +
                             " at root " + root.to_string());
    out[{node, root.qexp}] = mult;
  }
  return out;
}

}  // namespace qcyc
