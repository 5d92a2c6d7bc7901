#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcyc {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A formal spectral value a * q^e: a Laurent monomial in free symbols times
/// an integer power of q. Symbols are treated as algebraically independent,
/// so a ratio of two values is a q-power exactly when the symbol parts cancel.
struct SpectralParam {
  /// Sorted by symbol name, no zero exponents.
  std::vector<std::pair<std::string, int>> base;
  int qexp = 0;

  auto operator<=>(const SpectralParam&) const = default;

  bool is_one() const { return base.empty() && qexp == 0; }

  static SpectralParam one() { return {}; }

  static SpectralParam symbol(std::string name, int power = 1, int qexp = 0) {
    SpectralParam p;
    if (power != 0) p.base.emplace_back(std::move(name), power);
    p.qexp = qexp;
    return p;
  }

  /// This value times q^k.
  SpectralParam q_shifted(int k) const {
    SpectralParam p = *this;
    p.qexp += k;
    return p;
  }

  /// Multiplicative inverse: all exponents negated.
  SpectralParam inverted() const {
    SpectralParam p;
    p.base.reserve(base.size());
    for (const auto& [s, e] : base) p.base.emplace_back(s, -e);
    p.qexp = -qexp;
    return p;
  }

  std::string to_string() const {
    if (is_one()) return "1";
    std::string out;
    for (const auto& [s, e] : base) {
      if (!out.empty()) out += "*";
      out += s;
      if (e != 1) out += "^" + std::to_string(e);
    }
    if (qexp != 0) {
      if (!out.empty()) out += "*";
      out += qexp == 1 ? "q" : "q^" + std::to_string(qexp);
    }
    return out;
  }

  /// Parses the grammar `a^2*b*q^-3`; `q` is reserved, `1` denotes the
  /// trivial value.
  static SpectralParam parse(std::string_view text);
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline int parse_int(std::string_view s, const std::string& what) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(what + ": expected integer, got '" + std::string(s) + "'");
  return v;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

}  // namespace detail

inline SpectralParam SpectralParam::parse(std::string_view text) {
  using detail::trim;
  text = trim(text);
  if (text.empty()) throw parse_error("empty spectral parameter");
  if (text == "1") return one();
  std::map<std::string, int> exps;
  int qexp = 0;
  while (!text.empty()) {
    const auto star = text.find('*');
    std::string_view tok = trim(text.substr(0, star));
    text = star == std::string_view::npos ? std::string_view{} : text.substr(star + 1);
    if (tok.empty()) throw parse_error("empty factor in spectral parameter");
    std::string_view name = tok;
    int power = 1;
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = trim(tok.substr(0, caret));
      power = detail::parse_int(tok.substr(caret + 1), "exponent of '" + std::string(name) + "'");
    }
    if (!detail::is_identifier(name))
      throw parse_error("invalid symbol '" + std::string(name) + "' in spectral parameter");
    if (name == "q")
      qexp += power;
    else
      exps[std::string(name)] += power;
  }
  SpectralParam p;
  for (const auto& [s, e] : exps)
    if (e != 0) p.base.emplace_back(s, e);
  p.qexp = qexp;
  return p;
}

/// Ratio classification: QPower(e) when c/c2 = q^e, Generic (nullopt) when
/// the symbol monomials differ.
inline std::optional<int> ratio(const SpectralParam& c, const SpectralParam& c2) {
  if (c.base != c2.base) return std::nullopt;
  return c.qexp - c2.qexp;
}

/// A signed multiset of spectral values. Encodes the polynomial
/// prod_c (1 - c u)^{mult(c)}, equivalently the log series
/// -sum_c mult(c) ln(1 - c u). Negative multiplicities are allowed; a
/// multiset is "dominant" when empty or all-positive.
struct RootMultiset {
  std::map<SpectralParam, int> entries;

  bool operator==(const RootMultiset&) const = default;

  bool empty() const { return entries.empty(); }

  bool dominant() const {
    for (const auto& [c, m] : entries)
      if (m < 0) return false;
    return true;
  }

  /// Total degree (sum of multiplicities).
  int degree() const {
    int deg = 0;
    for (const auto& [c, m] : entries) deg += m;
    return deg;
  }

  void add(const SpectralParam& c, int mult) {
    if (mult == 0) return;
    auto it = entries.find(c);
    if (it == entries.end()) {
      entries.emplace(c, mult);
    } else if ((it->second += mult) == 0) {
      entries.erase(it);
    }
  }

  RootMultiset& operator+=(const RootMultiset& other) {
    for (const auto& [c, m] : other.entries) add(c, m);
    return *this;
  }

  friend RootMultiset operator+(RootMultiset lhs, const RootMultiset& rhs) {
    lhs += rhs;
    return lhs;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [c, m] : entries) {
      if (!first) out += ", ";
      first = false;
      out += c.to_string();
      if (m != 1) out += ": " + std::to_string(m);
    }
    return out + "}";
  }

  /// Parses "{a*q, a*q^-1}" or "{a: 2}"; braces optional, repetition
  /// accumulates.
  static RootMultiset parse(std::string_view text) {
    using detail::trim;
    text = trim(text);
    if (!text.empty() && text.front() == '{') {
      if (text.back() != '}') throw parse_error("unbalanced braces in multiset");
      text = trim(text.substr(1, text.size() - 2));
    }
    RootMultiset out;
    while (!text.empty()) {
      const auto comma = text.find(',');
      std::string_view tok = trim(text.substr(0, comma));
      if (comma != std::string_view::npos) {
        text = trim(text.substr(comma + 1));
        if (text.empty()) throw parse_error("trailing comma in multiset");
      } else {
        text = {};
      }
      if (tok.empty()) throw parse_error("empty entry in multiset");
      int mult = 1;
      std::string_view root = tok;
      if (const auto colon = tok.find(':'); colon != std::string_view::npos) {
        root = trim(tok.substr(0, colon));
        mult = detail::parse_int(tok.substr(colon + 1), "multiplicity");
        if (mult == 0) throw parse_error("zero multiplicity in multiset");
      }
      out.add(SpectralParam::parse(root), mult);
    }
    return out;
  }
};

inline RootMultiset negated(const RootMultiset& s) {
  RootMultiset out;
  for (const auto& [c, m] : s.entries) out.entries.emplace(c, -m);
  return out;
}

/// Substitution u -> q^k u: every root picks up q^k.
inline RootMultiset shift(const RootMultiset& s, int k) {
  if (k == 0) return s;
  RootMultiset out;
  for (const auto& [c, m] : s.entries) out.entries.emplace(c.q_shifted(k), m);
  return out;
}

/// Normalized reversal of the polynomial: every root is inverted.
inline RootMultiset invert_reverse(const RootMultiset& s) {
  RootMultiset out;
  for (const auto& [c, m] : s.entries) out.entries.emplace(c.inverted(), m);
  return out;
}

/// One root multiset per Dynkin node; the object the braid group acts on.
struct HTuple {
  std::vector<RootMultiset> comps;

  HTuple() = default;
  explicit HTuple(std::size_t n) : comps(n) {}

  bool operator==(const HTuple&) const = default;

  std::size_t size() const { return comps.size(); }

  bool dominant() const {
    return std::all_of(comps.begin(), comps.end(),
                       [](const RootMultiset& s) { return s.dominant(); });
  }

  HTuple& operator+=(const HTuple& other) {
    if (comps.size() != other.comps.size())
      throw std::invalid_argument("tuple size mismatch");
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += other.comps[i];
    return *this;
  }

  friend HTuple operator+(HTuple lhs, const HTuple& rhs) {
    lhs += rhs;
    return lhs;
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) out += "; ";
      out += comps[i].to_string();
    }
    return out + ")";
  }
};

/// A q^d-string: m roots centered at `a`, spaced q^{2d}.
struct QString {
  int m = 1;             ///< length
  SpectralParam a;       ///< center
  int step = 1;          ///< the node's symmetrizer d

  bool operator==(const QString&) const = default;

  std::string to_string() const { return "(m=" + std::to_string(m) + ", " + a.to_string() + ")"; }
};

/// Roots { a q^{d(m-2r+1)} : r = 1..m }, each with multiplicity 1.
inline RootMultiset expand(const QString& s) {
  RootMultiset out;
  for (int r = 1; r <= s.m; ++r) out.add(s.a.q_shifted(s.step * (s.m - 2 * r + 1)), 1);
  return out;
}

/// Canonical factorization of a dominant multiset into pairwise-generic
/// q^d-strings. Strings are sorted by center (symbols, then q-exponent) with
/// longer strings first on ties.
struct StringDecomposition {
  std::vector<QString> strings;

  bool operator==(const StringDecomposition&) const = default;

  RootMultiset expand_all() const {
    RootMultiset out;
    for (const auto& s : strings) out += expand(s);
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < strings.size(); ++i) {
      if (i) out += ", ";
      out += strings[i].to_string();
    }
    return out;
  }
};

namespace detail {

/// Two strings are in special position when their center ratio is
/// q^{+-d(m1+m2-2p)} with 0 <= p < min(m1,m2); they then merge into the
/// union and intersection of their expansions (both again strings).
struct Merge {
  QString unioned;
  std::optional<QString> intersection;
};

inline std::optional<Merge> try_merge(const QString& s1, const QString& s2, int d) {
  const auto e = ratio(s1.a, s2.a);
  if (!e) return std::nullopt;
  const int ae = std::abs(*e);
  if (ae % d != 0) return std::nullopt;
  const int k = ae / d;
  const int sum = s1.m + s2.m;
  if ((sum - k) % 2 != 0) return std::nullopt;
  const int p = (sum - k) / 2;
  if (p < 0 || p >= std::min(s1.m, s2.m)) return std::nullopt;

  const int top1 = s1.a.qexp + d * (s1.m - 1);
  const int top2 = s2.a.qexp + d * (s2.m - 1);
  Merge merge;
  merge.unioned.m = sum - p;
  merge.unioned.step = d;
  merge.unioned.a = s1.a;
  merge.unioned.a.qexp = std::max(top1, top2) - d * (merge.unioned.m - 1);
  if (p > 0) {
    QString inter;
    inter.m = p;
    inter.step = d;
    inter.a = s1.a;
    inter.a.qexp = std::min(top1, top2) - d * (p - 1);
    merge.intersection = inter;
  }
  return merge;
}

inline void sort_canonical(std::vector<QString>& strings) {
  std::sort(strings.begin(), strings.end(), [](const QString& x, const QString& y) {
    if (x.a.base != y.a.base) return x.a.base < y.a.base;
    if (x.a.qexp != y.a.qexp) return x.a.qexp < y.a.qexp;
    return x.m > y.m;
  });
}

}  // namespace detail

inline StringDecomposition factorize(const RootMultiset& s, int d) {
  if (d <= 0) throw std::invalid_argument("factorize: step must be positive");
  if (!s.dominant())
    throw std::invalid_argument("factorize: multiset with negative multiplicity has no string factorization");
  std::vector<QString> strings;
  for (const auto& [c, m] : s.entries)
    for (int k = 0; k < m; ++k) strings.push_back(QString{1, c, d});

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t x = 0; x < strings.size() && !merged; ++x) {
      for (std::size_t y = x + 1; y < strings.size() && !merged; ++y) {
        if (auto m = detail::try_merge(strings[x], strings[y], d)) {
          strings[x] = m->unioned;
          if (m->intersection)
            strings[y] = *m->intersection;
          else
            strings.erase(strings.begin() + static_cast<std::ptrdiff_t>(y));
          merged = true;
        }
      }
    }
  }
  detail::sort_canonical(strings);
  return StringDecomposition{std::move(strings)};
}

struct DominanceWitness {
  SpectralParam root;           ///< offending root of the left multiset
  std::size_t string_index = 0; ///< index into the right decomposition
  int string_length = 0;
  SpectralParam string_center;
  int exponent = 0;             ///< the q-power hit, d*(-1-m')
};

struct DominanceResult {
  bool holds = true;
  std::optional<DominanceWitness> witness;

  explicit operator bool() const { return holds; }
};

/// Root-form dominance check of L over a factorized right-hand side: every
/// root c of L must avoid c/a' = q^{d(-1-m')} for every string (m',a').
inline DominanceResult dominates(const RootMultiset& l, const StringDecomposition& r, int d) {
  if (!l.dominant()) throw std::invalid_argument("dominates: left multiset must be dominant");
  for (const auto& [root, mult] : l.entries) {
    for (std::size_t k = 0; k < r.strings.size(); ++k) {
      const QString& str = r.strings[k];
      const int forbidden = d * (-1 - str.m);
      if (ratio(root, str.a) == std::optional<int>(forbidden))
        return {false, DominanceWitness{root, k, str.m, str.a, forbidden}};
    }
  }
  return {true, std::nullopt};
}

inline DominanceResult dominates(const RootMultiset& l, const RootMultiset& r, int d) {
  if (!r.dominant()) throw std::invalid_argument("dominates: right multiset must be dominant");
  return dominates(l, factorize(r, d), d);
}

}  // namespace qcyc
