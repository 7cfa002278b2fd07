#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "knit/knit.hpp"

namespace knit {

// Parsed command line for one batch invocation. Reports are deterministic:
// identical config produces identical bytes.
struct RunConfig {
  std::string command;
  std::string h_spec, g_spec;
  std::string relation = "k2";
  std::string beta_spec;
  std::string pair_spec;
  int sigma_index = 0;
  std::vector<int> v_map, r_map;
  long long cap = 0;  // 0: fall back to KNIT_MAX_SEARCH, then the default
  long long n = 0, m = 0;
  std::string format = "text";
  std::string output;
};

namespace cli_detail {

inline long long resolve_cap(const RunConfig& cfg) {
  if (cfg.cap > 0) return cfg.cap;
  if (const char* env = std::getenv("KNIT_MAX_SEARCH")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw malformed_error("KNIT_MAX_SEARCH must be a positive integer");
  }
  return kDefaultSearchCap;
}

inline std::string pad(const std::string& s, std::size_t w) {
  std::string out = s;
  while (out.size() < w) out.push_back(' ');
  return out;
}

// renders an action table with G labels on rows and H labels on columns
inline std::string render_action(const FiniteGroup& G, const FiniteGroup& H,
                                 const Table& t, bool entries_in_h,
                                 const std::string& title) {
  std::vector<std::size_t> width(H.order + 1, 0);
  auto entry = [&](int g, int h) {
    return entries_in_h ? H.labels[t[g][h]] : G.labels[t[g][h]];
  };
  for (int g = 0; g < G.order; ++g)
    width[0] = std::max(width[0], G.labels[g].size());
  for (int h = 0; h < H.order; ++h) {
    width[h + 1] = H.labels[h].size();
    for (int g = 0; g < G.order; ++g)
      width[h + 1] = std::max(width[h + 1], entry(g, h).size());
  }
  std::ostringstream os;
  os << title << "\n";
  os << "  " << pad("", width[0]) << " |";
  for (int h = 0; h < H.order; ++h)
    os << " " << pad(H.labels[h], width[h + 1]);
  os << "\n";
  for (int g = 0; g < G.order; ++g) {
    os << "  " << pad(G.labels[g], width[0]) << " |";
    for (int h = 0; h < H.order; ++h)
      os << " " << pad(entry(g, h), width[h + 1]);
    os << "\n";
  }
  return os.str();
}

inline std::string render_pair(const MatchedPair& mp) {
  std::ostringstream os;
  os << render_action(mp.G, mp.H, mp.alpha, true, "alpha (g |> h):");
  os << render_action(mp.G, mp.H, mp.beta, false, "beta  (g <| h):");
  return os.str();
}

inline std::string render_cayley(const FiniteGroup& g) {
  std::size_t w = 0;
  for (const auto& l : g.labels) w = std::max(w, l.size());
  std::ostringstream os;
  for (int i = 0; i < g.order; ++i) {
    os << "  ";
    for (int j = 0; j < g.order; ++j)
      os << pad(g.labels[g.table[i][j]], w) << (j + 1 < g.order ? " " : "");
    os << "\n";
  }
  return os.str();
}

inline void emit(const RunConfig& cfg, const std::string& text,
                 std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw error("cannot write output file: " + cfg.output);
  f << text;
}

inline int run_enumerate(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroup H = parse_group_spec(cfg.h_spec, "a");
  const FiniteGroup G = parse_group_spec(cfg.g_spec, "b");
  const auto pairs = enumerate_matched_pairs(H, G, resolve_cap(cfg));
  if (cfg.format == "json") {
    json j{{"count", pairs.size()}, {"pairs", json::array()}};
    for (const auto& mp : pairs) j["pairs"].push_back(matched_pair_to_json(mp));
    emit(cfg, j.dump(2) + "\n", out);
    return 0;
  }
  std::ostringstream os;
  os << pairs.size() << " matched pairs\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    os << "pair " << i << ":\n" << render_pair(pairs[i]);
  }
  emit(cfg, os.str(), out);
  return 0;
}

inline int run_export(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroup H = parse_group_spec(cfg.h_spec, "a");
  const FiniteGroup G = parse_group_spec(cfg.g_spec, "b");
  const auto pairs = enumerate_matched_pairs(H, G, resolve_cap(cfg));
  json j = json::array();
  for (const auto& mp : pairs) j.push_back(matched_pair_to_json(mp));
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

inline int run_classify(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroup H = parse_group_spec(cfg.h_spec, "a");
  const FiniteGroup G = parse_group_spec(cfg.g_spec, "b");
  const long long cap = resolve_cap(cfg);
  Classification cls;
  if (cfg.relation == "k2") {
    cls = classify_k2(H, G, cap);
  } else if (cfg.relation == "b2") {
    Table beta;
    if (cfg.beta_spec.empty() || cfg.beta_spec == "trivial")
      beta = trivial_beta(H, G);
    else
      beta = parse_json_arg(cfg.beta_spec).get<Table>();
    cls = classify_b2(H, G, beta, cap);
  } else {
    throw malformed_error("relation must be k2 or b2");
  }
  if (cfg.format == "text") {
    std::ostringstream os;
    os << cls.classes.size() << " classes over " << cls.items.size()
       << " matched pairs\n";
    for (std::size_t c = 0; c < cls.classes.size(); ++c) {
      os << "class " << c << " (representative " << cls.classes[c].front()
         << ", size " << cls.classes[c].size()
         << "): " << describe_group(bicrossed(cls.items[cls.classes[c][0]]));
      if (cls.basepoint_class && static_cast<int>(c) == *cls.basepoint_class)
        os << "  [basepoint]";
      os << "\n";
    }
    emit(cfg, os.str(), out);
    return 0;
  }
  json j = classification_to_json(cls);
  j["class_count"] = cls.classes.size();
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

inline int run_show(const RunConfig& cfg, std::ostream& out) {
  const MatchedPair mp = matched_pair_from_json(parse_json_arg(cfg.pair_spec));
  const BicrossedGroup bx = bicrossed(mp);
  const StructuralReport sr = structural_report(bx.base);
  if (cfg.format == "json") {
    json j{{"group", group_to_json(bx.base)},
           {"relations", generator_relations(bx)},
           {"abelian", sr.is_abelian},
           {"cyclic", sr.is_cyclic},
           {"center", sr.center}};
    emit(cfg, j.dump(2) + "\n", out);
    return 0;
  }
  std::ostringstream os;
  os << "bicrossed product of order " << bx.base.order << "\n";
  for (const std::string& rel : generator_relations(bx))
    os << "relation: " << rel << "\n";
  os << "abelian: " << (sr.is_abelian ? "yes" : "no")
     << "  cyclic: " << (sr.is_cyclic ? "yes" : "no")
     << "  center size: " << sr.center.size() << "\n";
  os << render_pair(mp);
  os << "cayley table:\n" << render_cayley(bx.base);
  emit(cfg, os.str(), out);
  return 0;
}

inline int run_deform(const RunConfig& cfg, std::ostream& out) {
  const MatchedPair mp = matched_pair_from_json(parse_json_arg(cfg.pair_spec));
  const auto sigmas = automorphisms(mp.H);
  if (cfg.sigma_index < 0 ||
      cfg.sigma_index >= static_cast<int>(sigmas.size()))
    throw precondition_error("sigma index out of range; H has " +
                             std::to_string(sigmas.size()) +
                             " automorphisms");
  DeformationDatum d;
  d.sigma = sigmas[cfg.sigma_index];
  d.v = cfg.v_map;
  d.r = cfg.r_map;
  const Deformed def = deform(mp, d);
  json j{{"datum",
          json{{"sigma", d.sigma.images}, {"v", d.v}, {"r", d.r}}},
         {"deformed", matched_pair_to_json(def.pair)},
         {"psi", def.psi.images},
         {"carrier", def.carrier}};
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

inline int run_cyclic(const RunConfig& cfg, std::ostream& out) {
  const long long n = cfg.n, m = cfg.m;
  if (n < 1 || m < 1) throw precondition_error("n and m must be positive");
  const long long cap = resolve_cap(cfg);
  std::ostringstream os;

  const auto sig = varsigma(n, m);
  os << "varsigma(" << n << ", " << m << ") = {";
  for (std::size_t i = 0; i < sig.size(); ++i)
    os << (i ? ", " : "") << sig[i];
  os << "}  count " << sig.size() << "\n";
  os << "closed-form count: " << varsigma_count_formula(n, m) << "\n";
  if (n == 2) os << "case formula (n = 2): " << varsigma_count_c2(m) << "\n";
  if (n > 2 && n % 2 == 1) {
    bool prime = true;
    for (long long d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    if (prime)
      os << "case formula (odd prime): " << varsigma_count_odd_prime(n, m)
         << "\n";
  }

  std::vector<MatchedPair> family;
  bool have_family = false;
  if (n == 2) {
    family = c2_matched_pairs(m);
    have_family = true;
  } else if (n == 3) {
    family = c3_matched_pairs(m);
    have_family = true;
    const C3CountReport rep = c3_count_report(m);
    os << "constructed pairs: " << rep.constructed;
    if (rep.stated) {
      os << "  stated count: " << *rep.stated;
      if (rep.count_mismatch)
        os << "  MISMATCH (reported, not corrected)";
      else
        os << "  agreement";
    }
    os << "\n";
  }

  if (n * m <= cap) {
    const auto oracle =
        enumerate_matched_pairs(cyclic_group(static_cast<int>(n), "a"),
                                cyclic_group(static_cast<int>(m), "b"), cap);
    os << "exhaustive enumeration: " << oracle.size() << " matched pairs";
    if (have_family) {
      bool equal = oracle.size() == family.size();
      for (std::size_t i = 0; equal && i < oracle.size(); ++i)
        equal = pair_key(oracle[i]) == pair_key(family[i]);
      os << (equal ? "  (matches the closed forms)"
                   : "  (DOES NOT match the closed forms)");
    }
    os << "\n";
    for (std::size_t i = 0; i < oracle.size(); ++i)
      os << "pair " << i << ":\n" << render_pair(oracle[i]);
  } else {
    os << "exhaustive enumeration skipped: n*m = " << n * m << " > cap "
       << cap << "\n";
    for (std::size_t i = 0; i < family.size(); ++i)
      os << "pair " << i << ":\n" << render_pair(family[i]);
  }
  emit(cfg, os.str(), out);
  return 0;
}

}  // namespace cli_detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "enumerate") return cli_detail::run_enumerate(cfg, out);
    if (cfg.command == "classify") return cli_detail::run_classify(cfg, out);
    if (cfg.command == "deform") return cli_detail::run_deform(cfg, out);
    if (cfg.command == "show") return cli_detail::run_show(cfg, out);
    if (cfg.command == "cyclic") return cli_detail::run_cyclic(cfg, out);
    if (cfg.command == "export") return cli_detail::run_export(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return 1;
  } catch (const search_limit_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int cli_main(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"matched pairs of finite groups and their knit products"};
  app.require_subcommand(1);
  // --h is taken by the group option, so help lives on --help only
  app.set_help_flag("--help", "print help");
  RunConfig cfg;

  auto add_groups = [&](CLI::App* cmd, bool required) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--h", cfg.h_spec,
                    "group H: cyclic:N, inline JSON, or @file")
        ->required(required);
    cmd->add_option("--g", cfg.g_spec,
                    "group G: cyclic:N, inline JSON, or @file")
        ->required(required);
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cfg.cap, "search size cap (default 64)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", cfg.output, "write the report to a file");
  };

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list all matched pairs on two groups");
  add_groups(enumerate, true);
  add_common(enumerate);

  CLI::App* classify = app.add_subcommand(
      "classify", "partition matched pairs into equivalence classes");
  add_groups(classify, true);
  classify->add_option("--relation", cfg.relation, "k2 or b2")
      ->check(CLI::IsMember({"k2", "b2"}));
  classify->add_option(
      "--beta", cfg.beta_spec,
      "for b2: right action table as JSON, @file, or 'trivial'");
  add_common(classify);

  CLI::App* deform = app.add_subcommand(
      "deform", "deform a matched pair by a datum (sigma, v, r)");
  deform->set_help_flag("--help", "print help");
  deform->add_option("--pair", cfg.pair_spec, "matched pair JSON or @file")
      ->required();
  deform->add_option("--sigma", cfg.sigma_index,
                     "index into the automorphism list of H");
  deform->add_option("--v", cfg.v_map, "permutation of G, comma separated")
      ->required()
      ->delimiter(',');
  deform->add_option("--r", cfg.r_map, "map G -> H, comma separated")
      ->required()
      ->delimiter(',');
  add_common(deform);

  CLI::App* show = app.add_subcommand(
      "show", "render a bicrossed product and its relations");
  show->set_help_flag("--help", "print help");
  show->add_option("--pair", cfg.pair_spec, "matched pair JSON or @file")
      ->required();
  add_common(show);

  CLI::App* cyclic = app.add_subcommand(
      "cyclic", "closed-form counts and tables for cyclic groups");
  cyclic->set_help_flag("--help", "print help");
  cyclic->add_option("--n", cfg.n, "order of the first cyclic group")
      ->required();
  cyclic->add_option("--m", cfg.m, "order of the second cyclic group")
      ->required();
  add_common(cyclic);

  CLI::App* exp = app.add_subcommand(
      "export", "write all matched pairs on two groups as JSON");
  add_groups(exp, true);
  add_common(exp);

  std::vector<const char*> argv;
  argv.push_back("knit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // classify defaults to a JSON report; everything else to text
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.command == "classify" && sub->count("--format") == 0)
    cfg.format = "json";
  else if (cfg.command != "classify" && sub->count("--format") == 0)
    cfg.format = "text";
  return run(cfg, out, err);
}

}  // namespace knit
