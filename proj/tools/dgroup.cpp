// dgroup: command-line front end for the diagram-group library.
//
// Exit status: 0 when the analysis ran (Unknown verdicts included), 1 on
// usage, parse or rejected-witness errors, 2 when a structural invariant
// is violated.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dgroup/farley.hpp"
#include "dgroup/freeness.hpp"
#include "dgroup/serialize.hpp"
#include "dgroup/squier.hpp"

using namespace dgroup;

namespace {

  struct Options {
    std::string presentation;
    std::string word;
    std::string witness;
    std::string out;
    std::size_t radius = 3;
    bool json = false;
    Budget budget;
  };

  Presentation load_presentation(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot open presentation file " + path);
    }
    return parse_presentation(in);
  }

  Word load_word(Presentation const& p, std::string const& text) {
    auto w = p.parse_word(text);
    if (w.empty()) {
      throw std::invalid_argument("--word must be non-empty");
    }
    return w;
  }

  // A JSON document and its plain-text rendering.
  struct Report {
    Json json;
    std::string text;
  };

  std::string verdict_line(std::string_view what, Status s, std::string const& note) {
    std::string line = std::string(what) + ": " + std::string(to_string(s));
    if (!note.empty()) {
      line += " (" + note + ")";
    }
    return line + "\n";
  }

  Report explore(Options const& o) {
    auto p = load_presentation(o.presentation);
    auto c = build_component(p, load_word(p, o.word), o.budget);
    auto j = component_to_json(c);
    std::ostringstream t;
    t << "component of " << p.format(c.base) << (c.complete ? " (complete)" : " (truncated)")
      << "\nvertices " << c.vertices.size() << ", edges " << c.edges.size() << ", squares "
      << c.cube_count(2) << "\nEuler characteristic " << euler_characteristic(c) << ", b1 "
      << first_betti_number(c) << "\n";
    for (std::size_t n = 3; n < c.cubes.size(); ++n) {
      t << n << "-cubes " << c.cubes[n].size() << "\n";
    }
    return {j, t.str()};
  }

  Report pi1(Options const& o) {
    auto p = load_presentation(o.presentation);
    auto w = load_word(p, o.word);
    auto c = build_component(p, w, o.budget);
    auto pi = pi1_presentation(c, w);
    auto simple = simplify_presentation(pi.group, o.budget);
    auto v = group_nontrivial(p, w, o.budget);
    auto j = Json{{"schema", "dgroup.pi1"}, {"version", schema_version}};
    j["presentation"] = p.to_text();
    j["word"] = p.format(w);
    j["complete"] = c.complete;
    j["spanning_tree"] = {{"generators", pi.group.generators}, {"relators", pi.group.relators}};
    j["simplified"] = {{"generators", simple.generators}, {"relators", simple.relators}};
    j["abelianized_rank"] = abelianized_rank(simple);
    j["nontrivial"] = {{"status", to_string(v.status)}, {"note", v.note}};
    if (auto e = v.proof()) {
      j["witness"] = nontrivial_witness(p, w, *e);
    }
    if (auto t = v.refutation()) {
      j["triviality_certificate"] = certificate_to_json(p, *t);
    }
    std::ostringstream t;
    t << "pi1 at " << p.format(w) << (c.complete ? "" : " (explored fragment)") << "\n"
      << "spanning tree: " << to_string(pi.group) << "\nsimplified: " << to_string(simple)
      << "\nabelianized rank " << abelianized_rank(simple) << "\n"
      << verdict_line("non-trivial", v.status, v.note);
    return {j, t.str()};
  }

  Report farley_ball(Options const& o) {
    auto p = load_presentation(o.presentation);
    auto ball = build_ball(p, load_word(p, o.word), o.radius);
    std::ostringstream t;
    t << "Farley ball of radius " << ball.radius << " at " << p.format(ball.base) << "\nvertices "
      << ball.vertices.size() << ", edges " << ball.edges.size() << ", squares "
      << ball.cube_count(2) << "\n";
    for (std::size_t n = 3; n < ball.cubes.size(); ++n) {
      t << n << "-cubes " << ball.cubes[n].size() << "\n";
    }
    std::size_t minimal = 0;
    for (auto const& d : ball.vertices) {
      minimal += !d.is_trivial() && is_minimal(d) ? 1 : 0;
    }
    t << "minimal diagrams (hyperplanes) " << minimal << "\n";
    auto j = ball_to_json(ball);
    j["minimal_diagrams"] = minimal;
    return {j, t.str()};
  }

  Report pathology(Options const& o) {
    auto p = load_presentation(o.presentation);
    auto w = load_word(p, o.word);
    auto c = build_component(p, w, o.budget);
    auto two = two_sidedness_check(c);
    auto self = self_intersection_search(p, c, o.budget);
    auto special = specialness_criterion(p, w, o.budget);
    auto j = Json{{"schema", "dgroup.pathology"}, {"version", schema_version}};
    j["presentation"] = p.to_text();
    j["word"] = p.format(w);
    j["component_complete"] = c.complete;
    j["two_sided"] = {{"status", to_string(two.status)},
                      {"hyperplanes", two.proof() ? two.proof()->hyperplanes : 0},
                      {"squares_checked", two.proof() ? two.proof()->squares_checked : 0}};
    j["self_intersection"] = {{"status", to_string(self.status)}, {"note", self.note}};
    if (auto s = self.proof()) {
      j["self_intersection"]["witness"] = self_intersection_witness(p, *s);
    }
    j["specialness"] = {{"status", to_string(special.status)},
                        {"class_size", special.class_size},
                        {"splits_checked", special.splits_checked},
                        {"note", special.note}};
    if (special.violation) {
      auto const& v = *special.violation;
      j["specialness"]["violation"] = {{"a", p.format(v.a)},
                                       {"b", p.format(v.b)},
                                       {"p", p.format(v.p)},
                                       {"a_equation", derivation_to_json(p, v.a_equation)},
                                       {"b_equation", derivation_to_json(p, v.b_equation)}};
    }
    std::ostringstream t;
    t << "hyperplane pathologies of the component of " << p.format(w)
      << (c.complete ? "" : " (explored fragment)") << "\n"
      << verdict_line("two-sided", two.status, two.note)
      << verdict_line("self-intersection", self.status, self.note)
      << verdict_line("special (sufficient criterion)", special.status, special.note);
    return {j, t.str()};
  }

  Report freeness(Options const& o) {
    auto p = load_presentation(o.presentation);
    auto w = load_word(p, o.word);
    auto r = freeness_verdict(p, w, o.budget);
    std::ostringstream t;
    t << "D(P, " << p.format(w) << "): " << to_string(r.verdict);
    if (r.rank) {
      t << ", rank " << *r.rank;
    }
    t << "\nalgebraic dimension >= " << r.dimension_lower_bound << "\nclass: "
      << r.dimension.members.size() << " words" << (r.dimension.class_complete ? "" : " (truncated)")
      << ", " << r.dimension.splits << " splits, " << r.dimension.cleared << " cleared, "
      << r.dimension.undecided << " undecided\n";
    for (auto const& n : r.notes) {
      t << "note: " << n << "\n";
    }
    if (!r.truncations.empty()) {
      t << "truncations (max length: vertices edges squares b1)\n";
      for (auto const& row : r.truncations) {
        t << "  " << row.max_length << ": " << row.vertices << ' ' << row.edges << ' '
          << row.squares << ' ' << row.b1 << (row.complete ? " complete" : "") << "\n";
      }
    }
    if (r.z2) {
      t << "Z^2 witness: a = " << to_string(r.z2->a) << "\n             b = "
        << to_string(r.z2->b) << "\n";
    }
    return {freeness_to_json(p, w, r), t.str()};
  }

  Report verify(Options const& o) {
    std::ifstream in(o.witness);
    if (!in) {
      throw std::invalid_argument("cannot open witness file " + o.witness);
    }
    auto doc = Json::parse(in);
    // A report embedding a witness is accepted as well.
    if (doc.contains("witness") && doc.at("schema") != "dgroup.witness") {
      doc = doc.at("witness");
    }
    auto kind = verify_witness(doc);
    return {Json{{"schema", "dgroup.verification"},
                 {"version", schema_version},
                 {"witness_kind", kind},
                 {"accepted", true}},
            "accepted " + kind + " witness\n"};
  }

  void add_budget(CLI::App* cmd, Options& o) {
    cmd->add_option("--max-length", o.budget.max_word_length, "longest word explored")
        ->capture_default_str();
    cmd->add_option("--max-words", o.budget.max_words, "most words explored")
        ->capture_default_str();
    cmd->add_option("--max-cells", o.budget.max_cells, "largest diagram searched")
        ->capture_default_str();
    cmd->add_option("--max-depth", o.budget.max_depth, "longest derivation searched")
        ->capture_default_str();
  }

  void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--presentation", o.presentation, "presentation file")->required();
    cmd->add_option("--word", o.word, "base word")->required();
    cmd->add_flag("--json", o.json, "emit JSON");
    cmd->add_option("--out", o.out, "write the report to a file");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagram groups: Squier and Farley complexes, freeness"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<CLI::App*, Report (*)(Options const&)>> verbs;

  auto* ex = app.add_subcommand("explore", "explore the Squier component of a word");
  add_common(ex, o);
  add_budget(ex, o);
  verbs.emplace_back(ex, explore);

  auto* pi = app.add_subcommand("pi1", "fundamental group of the component");
  add_common(pi, o);
  add_budget(pi, o);
  verbs.emplace_back(pi, pi1);

  auto* fb = app.add_subcommand("farley-ball", "ball of the Farley complex");
  add_common(fb, o);
  fb->add_option("--radius", o.radius, "most cells per diagram")->capture_default_str();
  verbs.emplace_back(fb, farley_ball);

  auto* pa = app.add_subcommand("pathology", "hyperplane pathologies of the component");
  add_common(pa, o);
  add_budget(pa, o);
  verbs.emplace_back(pa, pathology);

  auto* fr = app.add_subcommand("freeness", "freeness and algebraic dimension");
  add_common(fr, o);
  add_budget(fr, o);
  verbs.emplace_back(fr, freeness);

  auto* vw = app.add_subcommand("verify-witness", "replay a saved witness");
  vw->add_option("witness", o.witness, "witness JSON file")->required();
  vw->add_flag("--json", o.json, "emit JSON");
  vw->add_option("--out", o.out, "write the result to a file");
  verbs.emplace_back(vw, verify);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    o.budget.validate();
    for (auto const& [cmd, run] : verbs) {
      if (!cmd->parsed()) {
        continue;
      }
      auto report = run(o);
      std::string const body = o.json ? report.json.dump(2) + "\n" : report.text;
      if (o.out.empty()) {
        std::cout << body;
      } else {
        std::ofstream f(o.out);
        if (!f) {
          throw std::invalid_argument("cannot write " + o.out);
        }
        f << body;
      }
    }
    return 0;
  } catch (InvariantViolation const& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (ParseError const& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": "
              << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
