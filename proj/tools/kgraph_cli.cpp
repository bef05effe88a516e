// kgraph: command line front end.
//
// Exit codes: 0 success (ok, Equal, injective, holds), 1 the negative
// answer (invalid, Distinct, non-injective, counterexample), 2 undecided
// within the budget, 3 unreadable input or bad arguments.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kgraph/all.hpp>

using namespace kgraph;
using json = nlohmann::ordered_json;

namespace {

  constexpr int exit_input = 3;

  KGraphFile load(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_kgraph(buf.str());
    } catch (parse_error const& e) {
      throw std::runtime_error(path + ":" + std::to_string(e.line()) + ":"
                               + std::to_string(e.column()) + ": " + e.what());
    }
  }

  json names(Skeleton const& sk, std::span<EdgeId const> edges) {
    json out = json::array();
    for (EdgeId e : edges) {
      out.push_back(sk.edge(e).name);
    }
    return out;
  }

  json degree_json(Degree const& d) {
    json out = json::array();
    for (std::size_t i = 1; i <= d.rank(); ++i) {
      out.push_back(d[i]);
    }
    return out;
  }

  json element_json(Skeleton const& sk, NormalForm const& nf) {
    return {{"range", sk.vertex_name(nf.range())},
            {"source", sk.vertex_name(nf.source())},
            {"degree", degree_json(nf.degree())},
            {"edges", names(sk, nf.edges())},
            {"text", to_string(sk, nf)}};
  }

  json words_json(Skeleton const& sk, std::vector<GWord> const& chain) {
    json out = json::array();
    for (auto const& w : chain) {
      out.push_back(word_to_string(sk, w));
    }
    return out;
  }

  json verdict_json(Skeleton const& sk, EqualityVerdict const& v) {
    json out{{"verdict", to_string(v.kind)}};
    if (v.is_equal()) {
      out["steps"]      = v.steps();
      out["derivation"] = words_json(sk, v.derivation);
    } else if (v.is_distinct()) {
      out["invariant"]    = v.invariant;
      out["first_value"]  = v.first_value;
      out["second_value"] = v.second_value;
    } else {
      out["nodes"] = v.nodes;
    }
    return out;
  }

  void print_verdict(Skeleton const& sk, EqualityVerdict const& v, bool with_derivation) {
    std::cout << to_string(v.kind);
    if (v.is_equal()) {
      std::cout << " (" << v.steps() << " steps)\n";
      if (with_derivation) {
        std::cout << derivation_to_string(sk, v.derivation) << "\n";
      }
    } else if (v.is_distinct()) {
      std::cout << ": " << v.invariant << " " << v.first_value << " vs " << v.second_value << "\n";
    } else {
      std::cout << ": search budget exhausted after " << v.nodes << " words\n";
    }
  }

  int exit_code(EqualityVerdict const& v) {
    return v.is_equal() ? 0 : v.is_distinct() ? 1 : 2;
  }

  // Positive word -> edge path; the empty word needs an anchor vertex.
  EdgePath positive_path(Skeleton const& sk, std::string const& text, std::string const& anchor) {
    GWord w = parse_word(sk, text, anchor.empty() ? VertexId{} : sk.vertex(anchor));
    if (w.empty() && anchor.empty()) {
      throw error(errc::not_composable, "an empty word needs --anchor");
    }
    std::vector<EdgeId> edges;
    for (SignedEdge x : w.letters()) {
      if (x.inverse) {
        throw error(errc::not_composable, "not a positive word: " + text);
      }
      edges.push_back(x.edge);
    }
    return EdgePath(sk, w.range(), std::move(edges));
  }

  struct Options {
    std::string file;
    bool        json = false;
  };

  void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("file", o.file, ".kg input file")->required();
    cmd->add_flag("--json", o.json, "machine-readable output");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compute with k-graphs given by a 1-skeleton and commuting squares."};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "check the factorization property");
  add_common(validate_cmd, o);

  std::string from, to, degree_text, word_text, anchor, w1_text, w2_text, base, format;
  std::size_t budget = 0;
  bool        with_derivation = false;
  bool        presentation = false, tietze = false, abelian = false;

  auto* hom_cmd = app.add_subcommand("hom", "list the elements with given endpoints and degree");
  add_common(hom_cmd, o);
  hom_cmd->add_option("--from", from, "source vertex")->required();
  hom_cmd->add_option("--to", to, "range vertex")->required();
  hom_cmd->add_option("--degree", degree_text, "degree n1,...,nk")->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "normal form of a positive word");
  add_common(normalize_cmd, o);
  normalize_cmd->add_option("--word", word_text, "word in composition order")->required();
  normalize_cmd->add_option("--anchor", anchor, "vertex for the empty word");

  auto* equal_cmd = app.add_subcommand("equal", "decide equality of two words in the groupoid");
  add_common(equal_cmd, o);
  equal_cmd->add_option("--w1", w1_text, "first word")->required();
  equal_cmd->add_option("--w2", w2_text, "second word")->required();
  equal_cmd->add_option("--anchor", anchor, "vertex for empty words");
  equal_cmd->add_option("--budget", budget, "maximum number of words searched");
  equal_cmd->add_flag("--derivation", with_derivation, "print the derivation");

  auto* pi1_cmd = app.add_subcommand("pi1", "fundamental group at a base vertex");
  add_common(pi1_cmd, o);
  pi1_cmd->add_option("--base", base, "base vertex")->required();
  auto* pres_flag = pi1_cmd->add_flag("--presentation", presentation, "spanning tree presentation");
  auto* tz_flag   = pi1_cmd->add_flag("--tietze", tietze, "simplified presentation");
  auto* ab_flag   = pi1_cmd->add_flag("--abelianization", abelian, "abelian invariants");
  pres_flag->excludes(tz_flag)->excludes(ab_flag);
  tz_flag->excludes(ab_flag);

  auto* inj_cmd = app.add_subcommand("injectivity", "look for elements identified in the groupoid");
  add_common(inj_cmd, o);
  inj_cmd->add_option("--max-degree", degree_text, "degree bound n1,...,nk")->required();
  inj_cmd->add_option("--budget", budget, "maximum number of words per search");

  auto* lb_cmd = app.add_subcommand("lambda-bar", "probe unique factorization of the image");
  add_common(lb_cmd, o);
  lb_cmd->add_option("--max-degree", degree_text, "degree bound n1,...,nk")->required();
  lb_cmd->add_option("--budget", budget, "maximum number of words per search");

  auto* comp_cmd = app.add_subcommand("components", "the 1-graph of each color");
  add_common(comp_cmd, o);

  auto* export_cmd = app.add_subcommand("export", "DOT graph or 2-complex JSON");
  add_common(export_cmd, o);
  export_cmd->add_option("--format", format, "dot or complex")
      ->required()
      ->check(CLI::IsMember({"dot", "complex"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_input;
  }

  SearchBudget search_budget;
  if (budget != 0) {
    search_budget.max_nodes = budget;
  }

  try {
    KGraphFile const file = load(o.file);
    Skeleton const&  sk   = file.skeleton;

    if (*validate_cmd) {
      auto report = validate(sk, file.squares);
      if (o.json) {
        json failures = json::array();
        for (auto const& f : report.failures) {
          json item{{"kind", to_string(f.kind)}, {"subject", names(sk, f.subject)}};
          if (f.kind == Finding::Kind::cube_inconsistency) {
            item["first_result"]  = names(sk, f.first_result);
            item["second_result"] = names(sk, f.second_result);
          }
          failures.push_back(item);
        }
        std::cout << json{{"ok", report.ok}, {"failures", failures}}.dump(2) << "\n";
      } else {
        std::cout << (report.ok ? "ok" : "invalid") << "\n";
        for (auto const& f : report.failures) {
          std::cout << "  " << describe(sk, f) << "\n";
        }
      }
      return report.ok ? 0 : 1;
    }

    if (*equal_cmd) {
      SquareComplex const sc = file.complex();
      VertexId const      a  = anchor.empty() ? VertexId{} : sk.vertex(anchor);
      GWord               w1 = parse_word(sk, w1_text, a);
      GWord               w2 = parse_word(sk, w2_text, a);
      if (anchor.empty()) {
        // An empty word sits at the other word's range.
        if (w1.empty() && w2.empty()) {
          throw error(errc::unknown_vertex, "two empty words need --anchor");
        }
        if (w1.empty()) {
          w1 = GWord::identity(w2.range());
        }
        if (w2.empty()) {
          w2 = GWord::identity(w1.range());
        }
      }
      GroupoidSolver solver(sc);
      auto           v = solver.equal(w1, w2, search_budget);
      if (o.json) {
        std::cout << verdict_json(sk, v).dump(2) << "\n";
      } else {
        print_verdict(sk, v, with_derivation);
      }
      return exit_code(v);
    }

    if (*pi1_cmd) {
      auto p = group_presentation(file.complex(), sk.vertex(base));
      if (abelian) {
        auto ab = abelianization(p);
        if (o.json) {
          json torsion = json::array();
          for (auto const& t : ab.torsion) {
            torsion.push_back(t.str());
          }
          std::cout << json{{"free_rank", ab.free_rank}, {"torsion", torsion}, {"text", to_string(ab)}}.dump(2)
                    << "\n";
        } else {
          std::cout << to_string(ab) << "\n";
        }
        return 0;
      }
      if (tietze) {
        p = tietze_simplify(std::move(p));
      }
      if (o.json) {
        json rels = json::array();
        for (auto const& r : p.relators) {
          rels.push_back(relator_to_string(p, r));
        }
        std::cout << json{{"generators", p.generators}, {"relators", rels}, {"text", to_string(p)}}.dump(2)
                  << "\n";
      } else {
        std::cout << to_string(p) << "\n";
      }
      return 0;
    }

    if (*export_cmd) {
      if (format == "complex") {
        std::cout << export_complex(file.complex()).dump(2) << "\n";
      } else if (o.json) {
        std::cout << json{{"format", "dot"}, {"text", export_dot(sk)}}.dump(2) << "\n";
      } else {
        std::cout << export_dot(sk);
      }
      return 0;
    }

    // The remaining commands need a valid k-graph.
    KGraph const kg(sk, file.squares);

    if (*hom_cmd) {
      auto elements = hom(kg, sk.vertex(to), sk.vertex(from), parse_degree(degree_text));
      if (o.json) {
        json out = json::array();
        for (auto const& nf : elements) {
          out.push_back(element_json(sk, nf));
        }
        std::cout << json{{"count", elements.size()}, {"elements", out}}.dump(2) << "\n";
      } else {
        for (auto const& nf : elements) {
          std::cout << to_string(sk, nf) << "\n";
        }
      }
      return 0;
    }

    if (*normalize_cmd) {
      auto nf = normalize(kg, positive_path(sk, word_text, anchor));
      if (o.json) {
        std::cout << element_json(sk, nf).dump(2) << "\n";
      } else {
        std::cout << to_string(sk, nf) << "\n";
      }
      return 0;
    }

    if (*inj_cmd) {
      Degree const bound  = parse_degree(degree_text);
      auto         report = injectivity_report(kg, bound, search_budget);
      int const    code   = report.summary == InjectivityReport::Summary::injective_within_bound ? 0
                            : report.summary == InjectivityReport::Summary::non_injective       ? 1
                                                                                                : 2;
      if (o.json) {
        json out{{"summary", to_string(report.summary)},
                 {"bound", degree_json(bound)},
                 {"elements", report.elements},
                 {"searches", report.searches}};
        if (report.witness) {
          out["witness"]    = {element_json(sk, report.witness->first), element_json(sk, report.witness->second)};
          out["derivation"] = words_json(sk, report.witness_verdict.derivation);
        }
        json unknown = json::array();
        for (auto const& [x, y] : report.unknown) {
          unknown.push_back({to_string(sk, x), to_string(sk, y)});
        }
        out["unknown"] = unknown;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << to_string(report.summary) << " within degree bound " << bound.to_string() << "\n";
        if (report.witness) {
          std::cout << "witness: " << to_string(sk, report.witness->first) << " and "
                    << to_string(sk, report.witness->second) << "\n"
                    << "derivation: " << derivation_to_string(sk, report.witness_verdict.derivation) << "\n";
        }
        for (auto const& [x, y] : report.unknown) {
          std::cout << "unknown: " << to_string(sk, x) << " vs " << to_string(sk, y) << "\n";
        }
        std::cout << "elements: " << report.elements << ", searches: " << report.searches << "\n";
      }
      return code;
    }

    if (*lb_cmd) {
      Degree const bound  = parse_degree(degree_text);
      auto         report = lambda_bar_check(kg, bound, search_budget);
      int const    code   = report.result == LambdaBarReport::Result::holds_within_bound ? 0
                            : report.result == LambdaBarReport::Result::counterexample   ? 1
                                                                                         : 2;
      if (o.json) {
        json classes = json::array();
        for (auto const& cls : report.classes) {
          json c = json::array();
          for (auto const& nf : cls) {
            c.push_back(to_string(sk, nf));
          }
          classes.push_back(c);
        }
        json out{{"result", to_string(report.result)},
                 {"within_bound", degree_json(bound)},
                 {"classes", classes},
                 {"unknown_verdicts", report.unknown_verdicts}};
        if (report.witness) {
          auto const& w  = *report.witness;
          out["witness"] = {{"alpha", to_string(sk, w.alpha)},  {"beta", to_string(sk, w.beta)},
                            {"gamma", to_string(sk, w.gamma)},  {"delta", to_string(sk, w.delta)},
                            {"epsilon", to_string(sk, w.epsilon)}, {"zeta", to_string(sk, w.zeta)}};
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << to_string(report.result) << " within degree bound " << bound.to_string() << "\n";
        for (auto const& cls : report.classes) {
          std::cout << "class:";
          for (auto const& nf : cls) {
            std::cout << " [" << to_string(sk, nf) << "]";
          }
          std::cout << "\n";
        }
        if (report.witness) {
          auto const& w = *report.witness;
          std::cout << "alpha = [" << to_string(sk, w.gamma) << "][" << to_string(sk, w.delta)
                    << "], beta = [" << to_string(sk, w.epsilon) << "][" << to_string(sk, w.zeta)
                    << "]\n";
        }
        std::cout << "unknown verdicts: " << report.unknown_verdicts << "\n";
      }
      return code;
    }

    if (*comp_cmd) {
      json out = json::array();
      for (std::size_t color = 1; color <= kg.rank(); ++color) {
        auto        c    = component_1graph(kg, color);
        std::string text = print_kgraph(c.skeleton(), c.complex().squares());
        if (o.json) {
          out.push_back({{"color", color}, {"kgraph", text}});
        } else {
          std::cout << "# color " << color << "\n" << text;
        }
      }
      if (o.json) {
        std::cout << json{{"components", out}}.dump(2) << "\n";
      }
      return 0;
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return 0;
}
