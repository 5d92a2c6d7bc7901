#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcyc/cartan.hpp"
#include "qcyc/cyclicity.hpp"
#include "qcyc/qpoly.hpp"
#include "qcyc/weyl.hpp"

namespace qcyc {

struct ProblemOptions {
  std::size_t weyl_cap = WeylGroup::default_cap;
  std::optional<int> kappa;   ///< omega-twist shift, per-type configuration
  std::optional<int> cshift;  ///< dual-transform shift, per-type configuration
};

/// A parsed problem file: a tensor problem plus the declared symbol table and
/// options. kr_factors is populated when every factor has kind "kr".
struct Problem {
  LieType type;
  CartanData cartan;
  std::vector<std::string> symbols;
  std::vector<HTuple> factors;
  std::vector<KRFactor> kr_factors;
  bool all_kr = false;
  ProblemOptions options;

  TensorProblem tensor_problem() const { return TensorProblem{type, factors}; }
};

namespace detail {

inline void check_symbols_declared(const SpectralParam& p, const std::set<std::string>& declared,
                                   const std::string& where) {
  for (const auto& [name, exp] : p.base)
    if (!declared.count(name))
      throw parse_error(where + ": undeclared symbol '" + name + "'");
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key,
                                   const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(where + ": missing field '" + key + "'");
  return *it;
}

inline int int_field(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_number_integer()) throw parse_error(where + "." + key + ": expected an integer");
  return v.get<int>();
}

inline std::string string_field(const nlohmann::json& j, const char* key,
                                const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw parse_error(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw parse_error(where + ": unknown field '" + key + "'");
  }
}

}  // namespace detail

inline Problem parse_problem(const nlohmann::json& j) {
  using detail::field;
  using detail::int_field;
  using detail::string_field;

  if (!j.is_object()) throw parse_error("problem file: expected a JSON object");
  detail::reject_unknown_keys(j, {"type", "symbols", "factors", "options"}, "problem file");

  Problem p;
  try {
    p.type = LieType::parse(string_field(j, "type", "problem file"));
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("type: ") + e.what());
  }
  p.cartan = build_cartan(p.type);
  const int n = p.cartan.n;

  std::set<std::string> declared;
  if (auto it = j.find("symbols"); it != j.end()) {
    if (!it->is_array()) throw parse_error("symbols: expected an array of identifiers");
    for (const auto& s : *it) {
      if (!s.is_string() || !detail::is_identifier(s.get<std::string>()) ||
          s.get<std::string>() == "q")
        throw parse_error("symbols: '" + s.dump() + "' is not a valid symbol name");
      if (!declared.insert(s.get<std::string>()).second)
        throw parse_error("symbols: duplicate symbol '" + s.get<std::string>() + "'");
      p.symbols.push_back(s.get<std::string>());
    }
  }

  const auto& factors = field(j, "factors", "problem file");
  if (!factors.is_array()) throw parse_error("factors: expected an array");
  p.all_kr = true;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const std::string where = "factors[" + std::to_string(fi) + "]";
    const auto& f = factors[fi];
    if (!f.is_object()) throw parse_error(where + ": expected an object");
    const std::string kind = string_field(f, "kind", where);
    if (kind == "kr") {
      detail::reject_unknown_keys(f, {"kind", "node", "m", "a"}, where);
      KRFactor kr;
      kr.node = int_field(f, "node", where) - 1;
      if (kr.node < 0 || kr.node >= n)
        throw parse_error(where + ".node: must be between 1 and " + std::to_string(n));
      kr.m = int_field(f, "m", where);
      if (kr.m <= 0) throw parse_error(where + ".m: must be positive");
      try {
        kr.a = SpectralParam::parse(string_field(f, "a", where));
      } catch (const parse_error& e) {
        throw parse_error(where + ".a: " + e.what());
      }
      detail::check_symbols_declared(kr.a, declared, where + ".a");
      p.kr_factors.push_back(kr);
      p.factors.push_back(kr_tuple(p.cartan, kr));
    } else if (kind == "tuple") {
      detail::reject_unknown_keys(f, {"kind", "components"}, where);
      p.all_kr = false;
      const auto& comps = field(f, "components", where);
      if (!comps.is_array() || comps.size() != static_cast<std::size_t>(n))
        throw parse_error(where + ".components: expected an array of " + std::to_string(n) +
                          " component lists");
      HTuple t(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const std::string cwhere = where + ".components[" + std::to_string(i) + "]";
        const auto& comp = comps[static_cast<std::size_t>(i)];
        if (!comp.is_array()) throw parse_error(cwhere + ": expected an array of root entries");
        for (std::size_t k = 0; k < comp.size(); ++k) {
          const std::string rwhere = cwhere + "[" + std::to_string(k) + "]";
          const auto& entry = comp[k];
          if (!entry.is_object()) throw parse_error(rwhere + ": expected an object");
          detail::reject_unknown_keys(entry, {"root", "mult"}, rwhere);
          SpectralParam root;
          try {
            root = SpectralParam::parse(string_field(entry, "root", rwhere));
          } catch (const parse_error& e) {
            throw parse_error(rwhere + ".root: " + e.what());
          }
          detail::check_symbols_declared(root, declared, rwhere + ".root");
          int mult = 1;
          if (entry.contains("mult")) {
            mult = int_field(entry, "mult", rwhere);
            if (mult <= 0) throw parse_error(rwhere + ".mult: must be positive");
          }
          t.comps[static_cast<std::size_t>(i)].add(root, mult);
        }
      }
      p.factors.push_back(std::move(t));
    } else {
      throw parse_error(where + ".kind: expected \"kr\" or \"tuple\", got \"" + kind + "\"");
    }
  }
  if (p.factors.empty()) p.all_kr = false;

  if (auto it = j.find("options"); it != j.end()) {
    if (!it->is_object()) throw parse_error("options: expected an object");
    detail::reject_unknown_keys(*it, {"weyl_cap", "kappa", "cshift"}, "options");
    if (it->contains("weyl_cap")) {
      const int cap = int_field(*it, "weyl_cap", "options");
      if (cap <= 0) throw parse_error("options.weyl_cap: must be positive");
      p.options.weyl_cap = static_cast<std::size_t>(cap);
    }
    if (it->contains("kappa")) p.options.kappa = int_field(*it, "kappa", "options");
    if (it->contains("cshift")) p.options.cshift = int_field(*it, "cshift", "options");
  }
  return p;
}

inline Problem parse_problem_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace qcyc
