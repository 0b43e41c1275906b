#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and never writes to the process streams, so it can be driven from tests.
//
// Exit codes: 0 success, 1 domain rejection, 2 usage error.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddbkit/classifier.hpp"
#include "ddbkit/error.hpp"
#include "ddbkit/glue.hpp"
#include "ddbkit/graded_group.hpp"
#include "ddbkit/mod2_poly.hpp"
#include "ddbkit/quillen.hpp"
#include "ddbkit/steenrod.hpp"

namespace ddbkit::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline constexpr int kDefaultMaxDegree = 40;

namespace detail {

using nlohmann::json;

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

inline long long parse_int(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::kSyntax, flag + ": expected an integer, got '" + s + "'");
  }
}

inline std::vector<long long> parse_int_list(const std::string& text, std::size_t expected,
                                             const std::string& flag) {
  auto items = split_csv(text);
  if (expected != 0 && items.size() != expected) {
    throw Error(Errc::kSyntax, flag + ": expected " + std::to_string(expected) +
                                   " comma-separated values, got '" + text + "'");
  }
  std::vector<long long> out;
  for (const auto& item : items) out.push_back(parse_int(item, flag));
  return out;
}

inline bool parse_orientation(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "yes" || s == "y" || s == "o" || s == "orientable") return true;
  if (s == "0" || s == "false" || s == "no" || s == "n" || s == "non-orientable" ||
      s == "nonorientable") {
    return false;
  }
  throw Error(Errc::kSyntax, "--orient: cannot read orientation '" + s + "'");
}

inline SqWord parse_word(const std::string& text) {
  SqWord word;
  if (text.empty() || text == "id") return word;
  for (auto v : parse_int_list(text, 0, "--word")) {
    if (v < 0) throw Error(Errc::kSyntax, "--word: indices must be nonnegative");
    word.indices.push_back(static_cast<int>(v));
  }
  return word;
}

inline json certificate_json(const MembershipCertificate& cert, const QuillenIdeal& ideal) {
  auto combo = json::array();
  for (const auto& [g, c] : cert.combination) {
    combo.push_back({{"generator", g},
                     {"generator_label", ideal.label(g)},
                     {"generator_value", ideal.value_text(g)},
                     {"cofactor", c.to_string()}});
  }
  return json{{"member", cert.member}, {"combination", combo}};
}

inline std::string cokernel_text(const Cokernel& c) {
  std::vector<std::string> parts;
  if (c.free_rank == 1) parts.push_back("Z");
  if (c.free_rank > 1) parts.push_back("Z^" + std::to_string(c.free_rank));
  for (auto t : c.torsion) parts.push_back("Z_" + std::to_string(t));
  if (parts.empty()) return "0";
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
  return out;
}

inline json lemma_json(const SpinLemmaReport& r) {
  return json{{"t", r.t},
              {"word", SqWord::spin_word(r.t).to_string()},
              {"value", r.value.to_string()},
              {"leading_generator", "w" + std::to_string(r.leading_index())},
              {"leading_present", r.leading_present},
              {"remainder", r.remainder.to_string()},
              {"remainder_max_gen", r.remainder_max_gen},
              {"remainder_bound", r.remainder_bound()},
              {"holds", r.holds()}};
}

// Subcommand implementations write either text or JSON into `out`.
struct Context {
  bool as_json = false;
  std::ostringstream out;

  void emit(const json& j) { out << j.dump(2) << '\n'; }
};

}  // namespace detail

inline CommandResult run(const std::vector<std::string>& args) {
  using detail::json;
  CLI::App app{"ddbkit: mod-2 characteristic classes, double disk bundles and sphere recognition",
               "ddbkit"};
  app.require_subcommand(1);
  app.fallthrough();
  detail::Context ctx;
  app.add_flag("--json", ctx.as_json, "Emit structured JSON instead of text");

  std::function<void()> action;

  // sq
  int sq_i = 0, rank = 0;
  std::string poly_text;
  bool unoriented = false;
  auto ring_of = [&] { return unoriented ? SWRing::unoriented(rank) : SWRing::oriented(rank); };
  {
    auto* sub = app.add_subcommand("sq", "Apply Sq^i to a polynomial");
    sub->add_option("--i", sq_i, "Square index")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--poly", poly_text, "Polynomial, e.g. \"w2*w3 + w5\"")->required();
    sub->add_option("--rank", rank, "Ring rank m (generators up to w_m)")->required()->check(CLI::PositiveNumber);
    sub->add_flag("--unoriented", unoriented, "Use Z_2[w_1, ..., w_m] instead of Z_2[w_2, ..., w_m]");
    sub->callback([&] {
      action = [&] {
        const SWRing ring = ring_of();
        const Mod2Poly p = parse_poly(poly_text, ring);
        const Mod2Poly r = sq(sq_i, p);
        if (ctx.as_json) {
          ctx.emit({{"command", "sq"}, {"i", sq_i}, {"rank", rank}, {"oriented", !unoriented},
                    {"input", p.to_string()}, {"result", r.to_string()}});
        } else {
          ctx.out << r.to_string() << '\n';
        }
      };
    });
  }

  // sq-word
  std::string word_text;
  {
    auto* sub = app.add_subcommand("sq-word", "Apply a composite Sq^a Sq^b ... (right to left)");
    sub->add_option("--word", word_text, "Comma-separated indices, applied right to left")->required();
    sub->add_option("--poly", poly_text, "Polynomial")->required();
    sub->add_option("--rank", rank, "Ring rank m")->required()->check(CLI::PositiveNumber);
    sub->add_flag("--unoriented", unoriented, "Use the unoriented ring");
    sub->callback([&] {
      action = [&] {
        const SWRing ring = ring_of();
        const SqWord word = detail::parse_word(word_text);
        const Mod2Poly p = parse_poly(poly_text, ring);
        const Mod2Poly r = sq_word(word, p);
        if (ctx.as_json) {
          ctx.emit({{"command", "sq-word"}, {"word", word.indices}, {"word_text", word.to_string()},
                    {"rank", rank}, {"oriented", !unoriented}, {"input", p.to_string()},
                    {"result", r.to_string()}});
        } else {
          ctx.out << r.to_string() << '\n';
        }
      };
    });
  }

  // spin-lemma
  int lemma_t = 0;
  std::optional<int> lemma_rank;
  {
    auto* sub = app.add_subcommand("spin-lemma", "Expand Sq^{2^t} ... Sq^2 Sq^1 w_2 and check its shape");
    sub->add_option("--t", lemma_t, "t")->required()->check(CLI::Range(0, 8));
    sub->add_option("--rank", lemma_rank, "Oriented ring rank (default 2^{t+1}+1)");
    sub->callback([&] {
      action = [&] {
        const int m = lemma_rank.value_or((1 << (lemma_t + 1)) + 1);
        const auto report = verify_spin_lemma(lemma_t, SWRing::oriented(m));
        if (ctx.as_json) {
          auto j = detail::lemma_json(report);
          j["command"] = "spin-lemma";
          j["rank"] = m;
          ctx.emit(j);
        } else {
          ctx.out << "t: " << report.t << '\n'
                  << "v_t: " << report.value << '\n'
                  << "leading w" << report.leading_index() << ": "
                  << (report.leading_present ? "present" : "absent") << '\n'
                  << "remainder: " << report.remainder << '\n'
                  << "remainder max generator: " << report.remainder_max_gen << " (bound "
                  << report.remainder_bound() << ")\n"
                  << "holds: " << (report.holds() ? "true" : "false") << '\n';
        }
      };
    });
  }

  // h
  int h_s = 0;
  {
    auto* sub = app.add_subcommand("h", "Evaluate Quillen's function h(s)");
    sub->add_option("--s", h_s, "s >= 1")->required();
    sub->callback([&] {
      action = [&] {
        const int value = quillen_h(h_s);
        if (ctx.as_json) {
          ctx.emit({{"command", "h"}, {"s", h_s}, {"h", value}});
        } else {
          ctx.out << value << '\n';
        }
      };
    });
  }

  // quillen-gens
  int ideal_m = 0;
  int max_degree = kDefaultMaxDegree;
  {
    auto* sub = app.add_subcommand("quillen-gens", "List generators of the kernel ideal J for BSpin(m) -> BSO(m)");
    sub->add_option("--m", ideal_m, "Rank m >= 2")->required();
    sub->add_option("--max-degree", max_degree, "Expand generators up to this degree")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->callback([&] {
      action = [&] {
        const auto ideal = quillen_generators(ideal_m, max_degree);
        if (ctx.as_json) {
          auto gens = json::array();
          for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
            gens.push_back(json::object({{"index", g},
                            {"label", ideal.label(g)},
                            {"degree", ideal.generator_degree(g)},
                            {"expanded", ideal.generators[g].has_value()},
                            {"value", ideal.value_text(g)}}));
          }
          ctx.emit({{"command", "quillen-gens"}, {"m", ideal_m}, {"h", quillen_h(ideal_m)},
                    {"generators", gens}});
        } else {
          ctx.out << "h(" << ideal_m << ") = " << quillen_h(ideal_m) << '\n';
          for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
            ctx.out << "g" << g << " [deg " << ideal.generator_degree(g) << "] " << ideal.label(g)
                    << " = " << ideal.value_text(g) << '\n';
          }
        }
      };
    });
  }

  // in-ideal
  {
    auto* sub = app.add_subcommand("in-ideal", "Decide membership in the kernel ideal J");
    sub->add_option("--m", ideal_m, "Rank m >= 2")->required();
    sub->add_option("--poly", poly_text, "Polynomial")->required();
    sub->add_option("--max-degree", max_degree, "Refuse queries above this degree")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->callback([&] {
      action = [&] {
        const Mod2Poly p = parse_poly(poly_text, SWRing::oriented(ideal_m));
        if (p.max_degree() > max_degree) {
          throw Error(Errc::kDomain, "query degree " + std::to_string(p.max_degree()) +
                                         " exceeds --max-degree " + std::to_string(max_degree));
        }
        const auto ideal = quillen_generators(ideal_m, std::max(p.max_degree(), 0));
        const auto cert = in_ideal(p, ideal);
        if (ctx.as_json) {
          auto j = detail::certificate_json(cert, ideal);
          j["command"] = "in-ideal";
          j["m"] = ideal_m;
          j["query"] = p.to_string();
          ctx.emit(j);
        } else {
          ctx.out << "member: " << (cert.member ? "true" : "false") << '\n';
          for (const auto& [g, c] : cert.combination) {
            ctx.out << "  (" << c << ") * g" << g << " [" << ideal.label(g) << " = "
                    << ideal.value_text(g) << "]\n";
          }
        }
      };
    });
  }

  // spin-obstruction
  int obstruction_k = 0;
  {
    auto* sub = app.add_subcommand("spin-obstruction", "Top Stiefel-Whitney class test for a rank k+1 spin bundle");
    sub->add_option("--k", obstruction_k, "Even k >= 4")->required();
    sub->callback([&] {
      action = [&] {
        const auto r = spin_top_class_vanishes(obstruction_k);
        if (ctx.as_json) {
          json j{{"command", "spin-obstruction"}, {"k", r.k}, {"vanishes", r.vanishes},
                 {"reason", r.reason}, {"inequality", r.inequality}};
          j["t"] = r.t ? json(*r.t) : json(nullptr);
          j["h"] = r.h_value ? json(*r.h_value) : json(nullptr);
          j["lemma"] = r.lemma ? detail::lemma_json(*r.lemma) : json(nullptr);
          if (r.certificate) {
            j["certificate"] = detail::certificate_json(*r.certificate, quillen_generators(r.k + 1, r.k + 1));
          } else {
            j["certificate"] = nullptr;
          }
          ctx.emit(j);
        } else {
          ctx.out << "vanishes: " << (r.vanishes ? "true" : "false") << '\n';
          if (!r.inequality.empty()) ctx.out << "inequality: " << r.inequality << '\n';
          if (r.lemma) ctx.out << "v_t: " << r.lemma->value << '\n';
          ctx.out << "reason: " << r.reason << '\n';
        }
      };
    });
  }

  // euler-check
  std::string chi_text;
  {
    auto* sub = app.add_subcommand("euler-check", "Check chi(B1) + chi(B2) - chi(L) = 2");
    sub->add_option("--chi", chi_text, "chi(B1),chi(B2),chi(L)")->required();
    sub->callback([&] {
      action = [&] {
        const auto chi = detail::parse_int_list(chi_text, 3, "--chi");
        const bool ok = ddb_euler_check(chi[0], chi[1], chi[2]);
        const long long total = chi[0] + chi[1] - chi[2];
        if (ctx.as_json) {
          ctx.emit({{"command", "euler-check"}, {"chi", chi}, {"total", total}, {"holds", ok}});
        } else {
          ctx.out << (ok ? "true" : "false") << '\n'
                  << "chi(B1) + chi(B2) - chi(L) = " << total << '\n';
        }
      };
    });
  }

  // gysin
  int fiber = 0;
  std::string base_file;
  bool nonzero_euler = false;
  {
    auto* sub = app.add_subcommand("gysin", "Total-space groups of a sphere bundle with zero Euler class");
    sub->add_option("--fiber", fiber, "Fiber dimension l")->required()->check(CLI::PositiveNumber);
    sub->add_option("--base", base_file, "Base groups, lines of `deg d: Z^r + Z/t`")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_flag("--nonzero-euler", nonzero_euler, "The Euler class is nonzero (refused)");
    sub->callback([&] {
      action = [&] {
        std::ifstream in(base_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto base = GradedAbGroup::parse(buf.str());
        const auto total = gysin_total_space(base, fiber, !nonzero_euler);
        if (ctx.as_json) {
          ctx.emit({{"command", "gysin"}, {"fiber", fiber}, {"base", base.to_json()},
                    {"total", total.to_json()}, {"euler_char", euler_char(total)},
                    {"torsion_free", total.is_torsion_free()}});
        } else {
          ctx.out << total.to_text();
        }
      };
    });
  }

  // btop
  int btop_dim = 0, btop_k = 0;
  {
    auto* sub = app.add_subcommand("btop", "Cohomology ring of a non-homotopy-sphere base");
    sub->add_option("--dim", btop_dim, "dim B")->required();
    sub->add_option("--k", btop_k, "Fiber dimension k")->required();
    sub->callback([&] {
      action = [&] {
        const auto ring = btop_ring(btop_dim, btop_k);
        if (ctx.as_json) {
          json j{{"command", "btop"}, {"dim", ring.dim_b}, {"k", ring.k}, {"s", ring.s},
                 {"presentation", ring.presentation()}};
          j["m"] = ring.torsion_order ? json(*ring.torsion_order) : json("symbolic");
          j["groups"] = ring.torsion_order ? ring.groups().to_json() : json(nullptr);
          ctx.emit(j);
        } else {
          ctx.out << "s: " << ring.s << '\n'
                  << "m: " << (ring.torsion_order ? std::to_string(*ring.torsion_order) : "symbolic (>= 2)")
                  << '\n'
                  << "ring: " << ring.presentation() << '\n';
          if (ring.torsion_order) ctx.out << ring.groups().to_text();
        }
      };
    });
  }

  // classify
  int cls_n = 0;
  std::string l_text, orient_text;
  {
    auto* sub = app.add_subcommand("classify", "Classify a double disk bundle on an even rational sphere");
    sub->add_option("--n", cls_n, "Total dimension (even)")->required();
    sub->add_option("--l", l_text, "Fiber dimensions l1,l2")->required();
    sub->add_option("--orient", orient_text, "Orientability o1,o2 (1/0, true/false, o/n)")->required();
    sub->callback([&] {
      action = [&] {
        const auto l = detail::parse_int_list(l_text, 2, "--l");
        const auto o = detail::split_csv(orient_text);
        if (o.size() != 2) throw Error(Errc::kSyntax, "--orient: expected two values");
        const DdbScenario sc{cls_n, static_cast<int>(l[0]), static_cast<int>(l[1]),
                             detail::parse_orientation(o[0]), detail::parse_orientation(o[1])};
        const Verdict v = classify(sc);
        const auto report = constraint_report(sc);
        if (ctx.as_json) {
          auto trace = json::array();
          for (const auto& s : v.trace) {
            trace.push_back({{"rule", s.rule}, {"citation", s.citation}, {"detail", s.detail}});
          }
          auto constraints = json::array();
          for (const auto& c : report) {
            constraints.push_back({{"rule", c.rule}, {"constraint", c.constraint}, {"applies", c.applies},
                                   {"satisfied", c.satisfied}, {"citation", c.citation}});
          }
          ctx.emit({{"command", "classify"},
                    {"scenario", {{"n", sc.n}, {"l1", sc.l1}, {"l2", sc.l2},
                                  {"orient1", sc.orient1}, {"orient2", sc.orient2}}},
                    {"outcome", outcome_name(v.outcome)},
                    {"trace", trace},
                    {"constraints", constraints}});
        } else {
          ctx.out << "verdict: " << outcome_name(v.outcome) << '\n' << "trace:\n";
          for (const auto& s : v.trace) {
            ctx.out << "  [" << s.rule << "] " << s.detail << "\n      cite: " << s.citation << '\n';
          }
          ctx.out << "constraints:\n";
          for (const auto& c : report) {
            ctx.out << "  [" << c.rule << "] " << (c.applies ? "applies" : "n/a    ") << "  "
                    << (c.satisfied ? "ok  " : "FAIL") << "  " << c.constraint << '\n';
          }
        }
      };
    });
  }

  // glue
  int glue_k = 0;
  std::string glue_ring = "connected-sum";
  int search_bound = 50;
  {
    auto* sub = app.add_subcommand("glue", "Enumerate the 16 gluing matrices psi and H^{k+1}(M_f)");
    sub->add_option("--k", glue_k, "Degree k")->required();
    sub->add_option("--ring", glue_ring, "connected-sum (default) or product")
        ->check(CLI::IsMember({"connected-sum", "product"}));
    sub->add_option("--search-bound", search_bound, "Brute-force bound for the primitive set")
        ->capture_default_str();
    sub->callback([&] {
      action = [&] {
        const auto rel = glue_ring == "product" ? RingRelations::kProduct : RingRelations::kConnectedSum;
        const auto ring = ConnectedSumRing::make(glue_k, rel);
        const auto pset = primitive_square_zero_set(ring, search_bound);
        const auto gluings = enumerate_gluings(ring);
        const auto dims = admissible_dimensions();
        const auto z2 = std::count_if(gluings.begin(), gluings.end(), [](const Gluing& g) {
          return g.verdict == GluingVerdict::kRationalSphereWithZ2;
        });
        if (ctx.as_json) {
          auto rows = json::array();
          for (std::size_t i = 0; i < gluings.size(); ++i) {
            const auto& g = gluings[i];
            rows.push_back({{"index", i},
                            {"row1", {g.psi.first.alpha, g.psi.first.beta}},
                            {"row2", {g.psi.second.alpha, g.psi.second.beta}},
                            {"det", g.psi.det()},
                            {"abs_det", g.abs_det},
                            {"h_k_plus_1", {{"free_rank", g.h_k1.free_rank}, {"torsion", g.h_k1.torsion}}},
                            {"verdict", verdict_name(g.verdict)}});
          }
          auto p = json::array();
          for (const auto& c : pset.classes) p.push_back({c.alpha, c.beta});
          ctx.emit({{"command", "glue"}, {"k", ring.k}, {"ring", relations_name(ring.relations)},
                    {"primitive_square_zero", p}, {"search_bound", pset.search_bound},
                    {"closure_fact", pset.closure_fact}, {"gluings", rows}, {"z2_count", z2},
                    {"dimension", ring.glued_dimension()},
                    {"admissible_dimensions", dims.dimensions}, {"admissible_trace", dims.trace}});
        } else {
          ctx.out << "ring: " << relations_name(ring.relations) << ", k = " << ring.k << '\n';
          ctx.out << "P (bound " << pset.search_bound << "):";
          for (const auto& c : pset.classes) ctx.out << ' ' << c.to_string() << ';';
          ctx.out << '\n';
          char line[160];
          std::snprintf(line, sizeof line, "%3s  %-8s %-8s %4s %5s  %-8s %s\n", "#", "row1", "row2", "det",
                        "|det|", "H^{k+1}", "verdict");
          ctx.out << line;
          for (std::size_t i = 0; i < gluings.size(); ++i) {
            const auto& g = gluings[i];
            std::snprintf(line, sizeof line, "%3zu  %-8s %-8s %4lld %5lld  %-8s %s\n", i + 1,
                          g.psi.first.to_string().c_str(), g.psi.second.to_string().c_str(),
                          static_cast<long long>(g.psi.det()), static_cast<long long>(g.abs_det),
                          detail::cokernel_text(g.h_k1).c_str(), verdict_name(g.verdict));
            ctx.out << line;
          }
          ctx.out << "Z_2 rows: " << z2 << '\n';
          ctx.out << "M_f dimension: " << ring.glued_dimension() << '\n';
          ctx.out << "admissible dimensions:";
          for (int d : dims.dimensions) ctx.out << ' ' << d;
          ctx.out << '\n';
        }
      };
    });
  }

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    result.out = parsed.empty() ? app.help() : parsed.front()->help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    const auto parsed = app.get_subcommands();
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n\n" +
                 (parsed.empty() ? app.help() : parsed.front()->help());
    return result;
  } catch (const Error& e) {
    result.exit_code = e.code() == Errc::kSyntax ? 2 : 1;
    result.err = std::string("error: ") + e.what() + '\n';
    return result;
  }

  try {
    if (action) action();
    result.out = ctx.out.str();
  } catch (const Error& e) {
    result.exit_code = e.code() == Errc::kSyntax ? 2 : 1;
    if (ctx.as_json) {
      result.out = json{{"error", e.what()}, {"kind", errc_name(e.code())}}.dump(2) + '\n';
    }
    result.err = std::string("error: ") + e.what() + '\n';
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.out.clear();
    result.err = std::string("error: ") + e.what() + '\n';
  }
  return result;
}

}  // namespace ddbkit::cli
