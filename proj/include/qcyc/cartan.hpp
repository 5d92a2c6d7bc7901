#pragma once

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcyc {

/// Finite Dynkin families A..G.
enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// A finite simple Lie type such as "B3".
///
/// Rank bounds: A n>=1, B n>=2, C n>=2, D n>=4, E n in {6,7,8}, F n=4, G n=2.
struct LieType {
  Family family = Family::A;
  int rank = 1;

  bool operator==(const LieType&) const = default;

  bool valid() const {
    switch (family) {
      case Family::A: return rank >= 1;
      case Family::B: return rank >= 2;
      case Family::C: return rank >= 2;
      case Family::D: return rank >= 4;
      case Family::E: return rank >= 6 && rank <= 8;
      case Family::F: return rank == 4;
      case Family::G: return rank == 2;
    }
    return false;
  }

  std::string to_string() const {
    return std::string(1, static_cast<char>(family)) + std::to_string(rank);
  }

  /// Parses "A2", "G2", "D10", ... Throws std::invalid_argument on anything else.
  static LieType parse(std::string_view text) {
    if (text.size() < 2)
      throw std::invalid_argument("invalid Lie type '" + std::string(text) + "'");
    const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (f < 'A' || f > 'G')
      throw std::invalid_argument("unknown Lie family in '" + std::string(text) + "'");
    int rank = 0;
    const auto* first = text.data() + 1;
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, rank);
    if (ec != std::errc{} || ptr != last || rank <= 0)
      throw std::invalid_argument("invalid rank in Lie type '" + std::string(text) + "'");
    const LieType t{static_cast<Family>(f), rank};
    if (!t.valid())
      throw std::invalid_argument("rank " + std::to_string(rank) + " out of bounds for family " +
                                  std::string(1, f));
    return t;
  }
};

/// Integer Cartan matrix with symmetrizers.
///
/// Nodes carry the Bourbaki numbering (0-based in the API, 1-based in all
/// text I/O). Entries follow a[i][j] = 2(alpha_i,alpha_j)/(alpha_i,alpha_i),
/// so d[i]*a[i][j] is symmetric, q_i = q^{d[i]}, and d is normalized to
/// min d[i] = 1.
struct CartanData {
  LieType type;
  int n = 0;
  std::vector<std::vector<int>> a;
  std::vector<int> d;
};

inline CartanData build_cartan(LieType t) {
  if (!t.valid())
    throw std::invalid_argument("invalid Lie type " + t.to_string());
  const int n = t.rank;
  CartanData c;
  c.type = t;
  c.n = n;
  c.a.assign(n, std::vector<int>(n, 0));
  c.d.assign(n, 1);
  for (int i = 0; i < n; ++i) c.a[i][i] = 2;
  auto link = [&c](int i, int j) { c.a[i][j] = c.a[j][i] = -1; };

  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      // nodes 1..n-1 long, node n short; double edge a[n-1][n-2] = -2
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      c.a[n - 2][n - 1] = -1;
      c.a[n - 1][n - 2] = -2;
      for (int i = 0; i + 1 < n; ++i) c.d[i] = 2;
      break;
    case Family::C:
      // transpose of B: node n long
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      c.a[n - 2][n - 1] = -2;
      c.a[n - 1][n - 2] = -1;
      c.d[n - 1] = 2;
      break;
    case Family::D:
      // chain 1-2-...-(n-1) with node n attached to node n-2
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      // chain 1-3-4-...-n with node 2 attached to node 4
      link(0, 2);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      link(1, 3);
      break;
    case Family::F:
      // nodes 1,2 long, nodes 3,4 short
      link(0, 1);
      c.a[1][2] = -1;
      c.a[2][1] = -2;
      link(2, 3);
      c.d[0] = c.d[1] = 2;
      break;
    case Family::G:
      // node 1 long, node 2 short
      c.a[0][1] = -1;
      c.a[1][0] = -3;
      c.d[0] = 3;
      break;
  }
  return c;
}

/// The diagram involution i -> ibar induced by -w0 acting on simple roots;
/// the dual of the fundamental module at node i sits at node ibar. 0-based.
inline std::vector<int> bar_automorphism(LieType t) {
  if (!t.valid())
    throw std::invalid_argument("invalid Lie type " + t.to_string());
  const int n = t.rank;
  std::vector<int> bar(n);
  for (int i = 0; i < n; ++i) bar[i] = i;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) bar[i] = n - 1 - i;
      break;
    case Family::D:
      if (n % 2 == 1) std::swap(bar[n - 2], bar[n - 1]);
      break;
    case Family::E:
      if (n == 6) {
        std::swap(bar[0], bar[5]);
        std::swap(bar[2], bar[4]);
      }
      break;
    default:
      break;  // B, C, E7, E8, F, G: w0 = -1
  }
  return bar;
}

}  // namespace qcyc
