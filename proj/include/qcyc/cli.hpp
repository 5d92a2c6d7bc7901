#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcyc/braid.hpp"
#include "qcyc/cartan.hpp"
#include "qcyc/cyclicity.hpp"
#include "qcyc/problem.hpp"
#include "qcyc/qpoly.hpp"
#include "qcyc/weyl.hpp"

namespace qcyc::cli {

constexpr int exit_satisfied = 0;
constexpr int exit_violated = 1;
constexpr int exit_error = 2;

/// Reduced words are reported as space-separated 1-based node indices.
inline std::string format_word(const std::vector<int>& word) {
  std::string out = "[";
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += " ";
    out += std::to_string(word[k] + 1);
  }
  return out + "]";
}

inline std::vector<int> parse_word(const std::string& text, int rank) {
  std::vector<int> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int v = detail::parse_int(tok, "word entry");
    if (v < 1 || v > rank)
      throw parse_error("word entry " + std::to_string(v) + " out of range 1.." +
                        std::to_string(rank));
    word.push_back(v - 1);
  }
  return word;
}

inline nlohmann::json witness_json(const Witness& w) {
  nlohmann::json node;
  node["left_factor"] = w.left_factor + 1;
  node["right_factor"] = w.right_factor + 1;
  nlohmann::json word = nlohmann::json::array();
  for (int i : w.word) word.push_back(i + 1);
  node["word"] = std::move(word);
  node["node"] = w.node + 1;
  node["root"] = w.root.to_string();
  node["string_m"] = w.string_length;
  node["string_center"] = w.string_center.to_string();
  node["exponent"] = w.exponent;
  return node;
}

inline void print_witness(std::ostream& out, const Witness& w) {
  out << "  pair: (" << w.left_factor + 1 << ", " << w.right_factor + 1 << ")\n"
      << "  w: " << format_word(w.word) << " (length " << w.word.size() << ")\n"
      << "  node: " << w.node + 1 << "\n"
      << "  root: " << w.root.to_string() << "\n"
      << "  string: (m=" << w.string_length << ", " << w.string_center.to_string() << ")\n"
      << "  exponent: " << w.exponent << "\n";
}

struct CheckOptions {
  bool json = false;
  bool pairs_only = false;
  bool witness_all = false;
  std::optional<std::size_t> weyl_cap;  ///< overrides the problem file's option
};

/// Runs the main criterion (and the KR ratio criterion when every factor is
/// KR). Exit status: 0 criterion satisfied, 1 violated, 2 input/config error.
inline int cmd_check(const std::string& path, const CheckOptions& opts, std::ostream& out,
                     std::ostream& err) {
  try {
    const Problem p = load_problem(path);
    const std::size_t cap = opts.weyl_cap.value_or(p.options.weyl_cap);
    const TensorProblem tp = p.tensor_problem();

    Verdict main;
    std::vector<Witness> all;
    if (opts.witness_all) {
      all = check_main_all(tp, cap);
      main.status = all.empty() ? Status::criterion_satisfied : Status::criterion_violated;
      if (!all.empty()) main.witness = all.front();
    } else {
      main = check_main(tp, cap);
    }

    std::optional<KashiwaraVerdict> kash;
    if (p.all_kr && !opts.pairs_only) kash = check_kashiwara(p.cartan, p.kr_factors);

    if (opts.json) {
      nlohmann::json j;
      j["type"] = p.type.to_string();
      j["factor_count"] = p.factors.size();
      j["main"]["status"] = main.satisfied() ? "satisfied" : "violated";
      if (main.witness) j["main"]["witness"] = witness_json(*main.witness);
      if (opts.witness_all) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& w : all) arr.push_back(witness_json(w));
        j["main"]["witnesses"] = std::move(arr);
      }
      if (kash) {
        j["kashiwara"]["status"] = kash->satisfied() ? "satisfied" : "violated";
        if (kash->violation) {
          j["kashiwara"]["violation"] = {{"left_factor", kash->violation->left_factor + 1},
                                         {"right_factor", kash->violation->right_factor + 1},
                                         {"exponent", kash->violation->exponent},
                                         {"bound", kash->violation->bound}};
        }
      }
      out << j.dump(2) << "\n";
    } else {
      out << "type: " << p.type.to_string() << "\n";
      out << "factors: " << p.factors.size() << "\n";
      out << "main criterion: " << (main.satisfied() ? "satisfied" : "violated") << "\n";
      if (opts.witness_all) {
        out << "violations: " << all.size() << "\n";
        for (const auto& w : all) print_witness(out, w);
      } else if (main.witness) {
        print_witness(out, *main.witness);
      }
      if (kash) {
        out << "kashiwara criterion: " << (kash->satisfied() ? "satisfied" : "violated") << "\n";
        if (kash->violation)
          out << "  pair: (" << kash->violation->left_factor + 1 << ", "
              << kash->violation->right_factor + 1 << "), exponent " << kash->violation->exponent
              << " <= bound " << kash->violation->bound << "\n";
      } else if (!p.all_kr) {
        out << "kashiwara criterion: skipped (not all factors are KR)\n";
      }
    }
    return main.satisfied() ? exit_satisfied : exit_violated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

/// Prints T_w applied to the problem's single factor, for one word or for the
/// whole orbit.
inline int cmd_braid_orbit(const std::string& path, const std::optional<std::string>& word_text,
                           bool full, std::ostream& out, std::ostream& err) {
  try {
    if (word_text.has_value() == full)
      throw parse_error("braid-orbit needs exactly one of --word or --full");
    const Problem p = load_problem(path);
    if (p.factors.size() != 1)
      throw parse_error("braid-orbit expects a problem file with exactly one factor");
    const HTuple& h = p.factors[0];
    if (word_text) {
      const std::vector<int> word = parse_word(*word_text, p.cartan.n);
      out << apply_word(p.cartan, word, h).to_string() << "\n";
    } else {
      const WeylGroup g = enumerate(p.cartan, p.options.weyl_cap);
      const std::vector<HTuple> orb = orbit(p.cartan, g, h);
      for (std::uint32_t w = 0; w < g.size(); ++w)
        out << "l=" << g.element(w).length << " word=" << format_word(g.element(w).word) << " "
            << orb[w].to_string() << "\n";
    }
    return exit_satisfied;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

/// Prints the canonical q^d-string decomposition of a dominant multiset.
inline int cmd_factorize(const std::string& text, int d, std::ostream& out, std::ostream& err) {
  try {
    const RootMultiset s = RootMultiset::parse(text);
    if (!s.dominant()) throw parse_error("multiset has a negative multiplicity");
    const StringDecomposition dec = factorize(s, d);
    out << (dec.strings.empty() ? "(empty product)" : dec.to_string()) << "\n";
    return exit_satisfied;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

inline int cmd_weyl_info(const std::string& type_text, std::size_t cap, std::ostream& out,
                         std::ostream& err) {
  try {
    const LieType t = LieType::parse(type_text);
    const WeylGroup g = enumerate(build_cartan(t), cap);
    out << "W(" << t.to_string() << "): |W| = " << g.size()
        << ", l(w0) = " << g.element(g.longest()).length << ", generators = " << g.rank() << "\n";
    return exit_satisfied;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact cyclicity criteria for tensor products of quantum loop algebra modules"};
  app.require_subcommand(1);

  std::string check_file;
  CheckOptions check_opts;
  unsigned long long cap_flag = 0;
  auto* check = app.add_subcommand("check", "run the cyclicity criteria on a problem file");
  check->add_option("file", check_file, "problem file (JSON)")->required();
  check->add_flag("--json", check_opts.json, "machine-readable output");
  check->add_flag("--pairs-only", check_opts.pairs_only, "skip the KR ratio criterion");
  check->add_flag("--witness-all", check_opts.witness_all,
                  "collect every violation, not just the first");
  auto* cap_opt = check->add_option("--weyl-cap", cap_flag, "Weyl group enumeration cap");

  std::string orbit_file;
  std::string orbit_word;
  bool orbit_full = false;
  auto* orbit_cmd = app.add_subcommand("braid-orbit", "apply braid operators to a single factor");
  orbit_cmd->add_option("file", orbit_file, "problem file with exactly one factor")->required();
  auto* word_opt =
      orbit_cmd->add_option("--word", orbit_word, "word as 1-based node indices, e.g. \"2 1\"");
  orbit_cmd->add_flag("--full", orbit_full, "print the whole orbit");

  std::string fact_text;
  int fact_d = 1;
  auto* fact = app.add_subcommand("factorize", "canonical q^d-string decomposition");
  fact->add_option("multiset", fact_text, "e.g. \"{a*q, a*q^-1}\" or \"{a: 2}\"")->required();
  fact->add_option("--d", fact_d, "node symmetrizer d (default 1)")
      ->check(CLI::PositiveNumber);

  std::string weyl_type;
  unsigned long long weyl_cap_flag = WeylGroup::default_cap;
  auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group utilities");
  auto* info = weyl_cmd->add_subcommand("info", "order, longest length, generator count");
  info->add_option("type", weyl_type, "Lie type, e.g. B3")->required();
  info->add_option("--weyl-cap", weyl_cap_flag, "enumeration cap");
  weyl_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_satisfied : exit_error;
  }

  if (check->parsed()) {
    if (cap_opt->count() > 0) check_opts.weyl_cap = static_cast<std::size_t>(cap_flag);
    return cmd_check(check_file, check_opts, out, err);
  }
  if (orbit_cmd->parsed()) {
    std::optional<std::string> word;
    if (word_opt->count() > 0) word = orbit_word;
    return cmd_braid_orbit(orbit_file, word, orbit_full, out, err);
  }
  if (fact->parsed()) return cmd_factorize(fact_text, fact_d, out, err);
  if (weyl_cmd->parsed())
    return cmd_weyl_info(weyl_type, static_cast<std::size_t>(weyl_cap_flag), out, err);
  err << "error: no command\n";
  return exit_error;
}

}  // namespace qcyc::cli
