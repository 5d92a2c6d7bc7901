#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcyc/cartan.hpp"

namespace qcyc {

struct weyl_cap_error : std::runtime_error {
  std::size_t cap;
  std::size_t discovered;

  weyl_cap_error(std::size_t cap_, std::size_t discovered_)
      : std::runtime_error("Weyl group enumeration exceeded cap " + std::to_string(cap_) +
                           " (discovered " + std::to_string(discovered_) +
                           " elements before refusing)"),
        cap(cap_),
        discovered(discovered_) {}
};

/// One enumerated group element. Identity is id 0; elements are stored in
/// BFS order of left multiplication, so parent < id throughout.
struct WeylElement {
  std::uint32_t id = 0;
  int length = 0;
  std::vector<int> word;            ///< one reduced word (0-based generators)
  std::uint32_t ascent_mask = 0;    ///< bit i set iff l(s_i w) = l(w) + 1
  std::int32_t parent = -1;         ///< BFS parent: this = s_{parent_gen} * parent
  std::int32_t parent_gen = -1;
};

/// The full finite Weyl group with lengths, one reduced word per element,
/// ascent sets, and the left multiplication table. Immutable once built.
class WeylGroup {
 public:
  static constexpr std::size_t default_cap = 1'000'000;

  std::size_t size() const { return elements_.size(); }
  int rank() const { return n_; }

  const WeylElement& element(std::uint32_t id) const { return elements_[id]; }
  const std::vector<WeylElement>& elements() const { return elements_; }

  /// s_i * w.
  std::uint32_t left_multiply(std::uint32_t w, int i) const {
    return left_[w * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)];
  }

  std::uint32_t identity() const { return 0; }
  std::uint32_t longest() const { return longest_; }

  /// Element of the (not necessarily reduced) word s_{i_1} ... s_{i_k}.
  std::uint32_t from_word(const std::vector<int>& word) const {
    std::uint32_t w = 0;
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = left_multiply(w, *it);
    return w;
  }

  friend WeylGroup enumerate(const CartanData& c, std::size_t cap);

 private:
  int n_ = 0;
  std::vector<WeylElement> elements_;
  std::vector<std::uint32_t> left_;
  std::uint32_t longest_ = 0;
};

namespace detail {

/// Matrix of s_i acting on simple-root coordinates: row i of the identity is
/// replaced by delta_ij - a[i][j].
inline std::vector<int> reflection_matrix(const CartanData& c, int i) {
  const int n = c.n;
  std::vector<int> m(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r) m[static_cast<std::size_t>(r) * n + r] = 1;
  for (int j = 0; j < n; ++j)
    m[static_cast<std::size_t>(i) * n + j] = (i == j ? 1 : 0) - c.a[i][j];
  return m;
}

inline std::vector<int> mat_mul(const std::vector<int>& x, const std::vector<int>& y, int n) {
  std::vector<int> out(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const int v = x[static_cast<std::size_t>(r) * n + k];
      if (v == 0) continue;
      for (int cc = 0; cc < n; ++cc)
        out[static_cast<std::size_t>(r) * n + cc] += v * y[static_cast<std::size_t>(k) * n + cc];
    }
  return out;
}

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned int>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

/// Breadth-first closure over left multiplication. Element identity is the
/// exact integer matrix of the action on simple-root coordinates. Refuses
/// with weyl_cap_error when more than `cap` elements appear.
inline WeylGroup enumerate(const CartanData& c, std::size_t cap = WeylGroup::default_cap) {
  const int n = c.n;
  WeylGroup g;
  g.n_ = n;

  std::vector<std::vector<int>> gen(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) gen[static_cast<std::size_t>(i)] = detail::reflection_matrix(c, i);

  std::unordered_map<std::vector<int>, std::uint32_t, detail::IntVecHash> index;
  std::vector<std::vector<int>> mats;

  std::vector<int> id_mat(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r) id_mat[static_cast<std::size_t>(r) * n + r] = 1;
  index.emplace(id_mat, 0);
  mats.push_back(std::move(id_mat));
  g.elements_.push_back(WeylElement{});

  // BFS: processing order doubles as length order.
  for (std::uint32_t w = 0; w < g.elements_.size(); ++w) {
    g.left_.resize((static_cast<std::size_t>(w) + 1) * n);
    for (int i = 0; i < n; ++i) {
      auto m = detail::mat_mul(gen[static_cast<std::size_t>(i)], mats[w], n);
      auto [it, inserted] = index.emplace(std::move(m), static_cast<std::uint32_t>(mats.size()));
      if (inserted) {
        if (g.elements_.size() >= cap) throw weyl_cap_error(cap, g.elements_.size());
        mats.push_back(it->first);
        WeylElement e;
        e.id = it->second;
        e.length = g.elements_[w].length + 1;
        e.word.reserve(g.elements_[w].word.size() + 1);
        e.word.push_back(i);
        e.word.insert(e.word.end(), g.elements_[w].word.begin(), g.elements_[w].word.end());
        e.parent = static_cast<std::int32_t>(w);
        e.parent_gen = i;
        g.elements_.push_back(std::move(e));
      }
      g.left_[static_cast<std::size_t>(w) * n + static_cast<std::size_t>(i)] = it->second;
    }
  }

  int max_len = 0;
  for (auto& e : g.elements_) {
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i)
      if (g.elements_[g.left_multiply(e.id, i)].length > e.length) mask |= 1u << i;
    e.ascent_mask = mask;
    if (e.length > max_len) {
      max_len = e.length;
      g.longest_ = e.id;
    }
  }
  return g;
}

/// Generators i with l(s_i w) = l(w) + 1, ascending.
inline std::vector<int> ascents(const WeylGroup& g, std::uint32_t w) {
  std::vector<int> out;
  const std::uint32_t mask = g.element(w).ascent_mask;
  for (int i = 0; i < g.rank(); ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

struct ReducedWords {
  std::vector<std::vector<int>> words;
  bool truncated = false;
};

/// Every reduced word of w in lexicographic order, up to `limit` of them.
inline ReducedWords all_reduced_words(const WeylGroup& g, std::uint32_t w, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("all_reduced_words: limit must be positive");
  ReducedWords out;
  std::vector<int> prefix;
  auto dfs = [&](auto&& self, std::uint32_t v) -> bool {
    if (v == g.identity()) {
      if (out.words.size() == limit) {
        out.truncated = true;
        return false;
      }
      out.words.push_back(prefix);
      return true;
    }
    const std::uint32_t mask = g.element(v).ascent_mask;
    for (int i = 0; i < g.rank(); ++i) {
      if (mask & (1u << i)) continue;  // descents only
      prefix.push_back(i);
      const bool keep_going = self(self, g.left_multiply(v, i));
      prefix.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  dfs(dfs, w);
  return out;
}

}  // namespace qcyc
