#include "dgroup/serialize.hpp"

#include <stdexcept>

namespace dgroup {

namespace {

  std::string_view direction_name(Direction d) {
    return d == Direction::forward ? "fwd" : "bwd";
  }

  Direction direction_from(Json const& j) {
    auto s = j.get<std::string>();
    if (s == "fwd") {
      return Direction::forward;
    }
    if (s == "bwd") {
      return Direction::backward;
    }
    throw std::invalid_argument("direction must be \"fwd\" or \"bwd\", got \"" + s + "\"");
  }

  std::size_t relation_from(Presentation const& p, Json const& j) {
    auto r = j.get<std::size_t>();
    if (r >= p.relations().size()) {
      throw std::invalid_argument("relation index " + std::to_string(r) + " out of range");
    }
    return r;
  }

  Json document(std::string_view schema) {
    return Json{{"schema", schema}, {"version", schema_version}};
  }

  Json witness_document(Presentation const& p, std::string_view kind) {
    auto j = document("dgroup.witness");
    j["witness_kind"] = kind;
    j["presentation"] = p.to_text();
    return j;
  }

  Json cube_list_to_json(std::vector<std::vector<SquierCube>> const& cubes) {
    Json out = Json::object();
    for (std::size_t n = 2; n < cubes.size(); ++n) {
      Json list = Json::array();
      for (auto const& c : cubes[n]) {
        Json apps = Json::array();
        for (auto const& a : c.applications) {
          apps.push_back({a.offset, a.relation});
        }
        list.push_back({{"base", c.base}, {"applications", apps}, {"corners", c.corners}});
      }
      if (!list.empty()) {
        out[std::to_string(n)] = list;
      }
    }
    return out;
  }

}  // namespace

Json word_to_json(Presentation const& p, Word const& w) { return p.format(w); }

Word word_from_json(Presentation const& p, Json const& j) {
  return p.parse_word(j.get<std::string>());
}

Json edge_to_json(Presentation const& p, RewriteEdge const& e) {
  return Json{{"left", word_to_json(p, e.left)},
              {"relation", e.relation},
              {"direction", direction_name(e.direction)},
              {"right", word_to_json(p, e.right)}};
}

RewriteEdge edge_from_json(Presentation const& p, Json const& j) {
  return RewriteEdge{word_from_json(p, j.at("left")), relation_from(p, j.at("relation")),
                     direction_from(j.at("direction")), word_from_json(p, j.at("right"))};
}

Json derivation_to_json(Presentation const& p, Derivation const& d) {
  Json out = Json::array();
  for (auto const& e : d) {
    out.push_back(edge_to_json(p, e));
  }
  return out;
}

Derivation derivation_from_json(Presentation const& p, Json const& j) {
  Derivation out;
  for (auto const& e : j) {
    out.push_back(edge_from_json(p, e));
  }
  return out;
}

Json diagram_to_json(Diagram const& d) {
  Json layers = Json::array();
  for (auto const& layer : d.layers()) {
    Json cells = Json::array();
    for (auto const& c : layer) {
      cells.push_back({c.offset, c.relation, direction_name(c.direction)});
    }
    layers.push_back(cells);
  }
  return Json{{"top", word_to_json(d.presentation(), d.top())}, {"layers", layers}};
}

Diagram diagram_from_json(Presentation const& p, Json const& j) {
  auto top = word_from_json(p, j.at("top"));
  std::vector<Layer> layers;
  std::vector<Cell> steps;
  for (auto const& layer : j.at("layers")) {
    Layer cells;
    long shift = 0;
    for (auto const& c : layer) {
      if (!c.is_array() || c.size() != 3) {
        throw std::invalid_argument("a cell is [offset, relation, direction]");
      }
      Cell cell{c[0].get<std::size_t>(), relation_from(p, c[1]), direction_from(c[2])};
      auto const& r = p.relation(cell.relation);
      steps.push_back(Cell{static_cast<std::size_t>(static_cast<long>(cell.offset) + shift),
                           cell.relation, cell.direction});
      shift += static_cast<long>(r.to(cell.direction).size())
               - static_cast<long>(r.from(cell.direction).size());
      cells.push_back(cell);
    }
    layers.push_back(std::move(cells));
  }
  auto d = top.empty() && steps.empty() ? Diagram::identity(p, top) : Diagram(p, top, steps);
  if (d.layers() != layers) {
    throw std::invalid_argument("layers are not in canonical form");
  }
  return d;
}

Json budget_to_json(Budget const& b) {
  return Json{{"max_word_length", b.max_word_length},
              {"max_words", b.max_words},
              {"max_cells", b.max_cells},
              {"max_depth", b.max_depth}};
}

Json component_to_json(SquierComponent const& c) {
  auto const& p = c.presentation;
  auto j = document("dgroup.component");
  j["presentation"] = p.to_text();
  j["base"] = word_to_json(p, c.base);
  j["complete"] = c.complete;
  Json vertices = Json::array();
  for (auto const& v : c.vertices) {
    vertices.push_back(word_to_json(p, v));
  }
  j["vertices"] = vertices;
  Json edges = Json::array();
  for (auto const& e : c.edges) {
    auto ej = edge_to_json(p, e.rewrite);
    ej["source"] = e.source;
    ej["target"] = e.target;
    edges.push_back(ej);
  }
  j["edges"] = edges;
  j["cubes"] = cube_list_to_json(c.cubes);
  j["counts"] = {{"vertices", c.vertices.size()},
                 {"edges", c.edges.size()},
                 {"squares", c.cube_count(2)}};
  j["euler_characteristic"] = euler_characteristic(c);
  j["b1"] = first_betti_number(c);
  j["budget_used"] = budget_to_json(c.used);
  return j;
}

Json ball_to_json(FarleyBall const& b) {
  auto const& p = b.presentation;
  auto j = document("dgroup.farley_ball");
  j["presentation"] = p.to_text();
  j["base"] = word_to_json(p, b.base);
  j["radius"] = b.radius;
  Json vertices = Json::array();
  for (auto const& d : b.vertices) {
    vertices.push_back(diagram_to_json(d));
  }
  j["vertices"] = vertices;
  Json edges = Json::array();
  for (auto const& e : b.edges) {
    edges.push_back({{"lower", e.lower},
                     {"upper", e.upper},
                     {"atom", {e.atom.offset, e.atom.relation, direction_name(e.atom.direction)}}});
  }
  j["edges"] = edges;
  Json cubes = Json::object();
  for (std::size_t n = 2; n < b.cubes.size(); ++n) {
    Json list = Json::array();
    for (auto const& c : b.cubes[n]) {
      Json atoms = Json::array();
      for (auto const& a : c.atoms) {
        atoms.push_back({a.offset, a.relation, direction_name(a.direction)});
      }
      list.push_back({{"base", c.base}, {"atoms", atoms}, {"corners", c.corners}});
    }
    if (!list.empty()) {
      cubes[std::to_string(n)] = list;
    }
  }
  j["cubes"] = cubes;
  j["counts"] = {{"vertices", b.vertices.size()},
                 {"edges", b.edges.size()},
                 {"squares", b.cube_count(2)}};
  return j;
}

Json certificate_to_json(Presentation const& p, TrivialityCertificate const& c) {
  Json j;
  j["description"] = describe(p, c);
  if (c.kind == TrivialityCertificate::Kind::component) {
    j["kind"] = "component";
    j["vertices"] = c.vertices;
    j["edges"] = c.edges;
    j["squares"] = c.squares;
    j["loops_checked"] = c.loops_checked;
    j["simplified_pi1"] = to_string(c.simplified);
  } else {
    j["kind"] = "rewriting";
    Json alphabet = Json::array();
    for (auto x : c.alphabet) {
      alphabet.push_back(p.letter_name(x));
    }
    j["alphabet"] = alphabet;
    Json rules = Json::array();
    for (auto const& [l, r] : c.rules) {
      rules.push_back({word_to_json(p, l), word_to_json(p, r)});
    }
    j["rules"] = rules;
    j["critical_pairs"] = c.critical_pairs;
  }
  return j;
}

Json split_witness_to_json(Presentation const& p, SplitWitness const& s) {
  Json factors = Json::array();
  for (auto const& f : s.factors) {
    factors.push_back(word_to_json(p, f));
  }
  Json certs = Json::array();
  for (auto const& d : s.certificates) {
    certs.push_back(diagram_to_json(d));
  }
  return Json{{"base", word_to_json(p, s.base)},
              {"ambient", word_to_json(p, s.ambient)},
              {"derivation", derivation_to_json(p, s.derivation)},
              {"factors", factors},
              {"certificates", certs}};
}

SplitWitness split_witness_from_json(Presentation const& p, Json const& j) {
  SplitWitness s;
  s.base = word_from_json(p, j.at("base"));
  s.ambient = word_from_json(p, j.at("ambient"));
  s.derivation = derivation_from_json(p, j.at("derivation"));
  for (auto const& f : j.at("factors")) {
    s.factors.push_back(word_from_json(p, f));
  }
  for (auto const& d : j.at("certificates")) {
    s.certificates.push_back(diagram_from_json(p, d));
  }
  return s;
}

Json z2_witness(Presentation const& p, Z2Witness const& z) {
  auto j = witness_document(p, "z2");
  j["a"] = diagram_to_json(z.a);
  j["b"] = diagram_to_json(z.b);
  j["split"] = split_witness_to_json(p, z.split);
  return j;
}

Json nontrivial_witness(Presentation const& p, Word const& w, Diagram const& element) {
  auto j = witness_document(p, "nontrivial");
  j["word"] = word_to_json(p, w);
  j["element"] = diagram_to_json(element);
  return j;
}

Json derivation_witness(Presentation const& p, Word const& from, Word const& to,
                        Derivation const& d) {
  auto j = witness_document(p, "derivation");
  j["from"] = word_to_json(p, from);
  j["to"] = word_to_json(p, to);
  j["derivation"] = derivation_to_json(p, d);
  return j;
}

Json self_intersection_witness(Presentation const& p, SelfIntersection const& s) {
  auto j = witness_document(p, "self_intersection");
  j["edge"] = edge_to_json(p, s.edge);
  j["middle"] = word_to_json(p, s.middle);
  j["tail"] = word_to_json(p, s.tail);
  j["left_equation"] = derivation_to_json(p, s.left_equation);
  j["right_equation"] = derivation_to_json(p, s.right_equation);
  return j;
}

Json split_witness(Presentation const& p, SplitWitness const& s) {
  auto j = witness_document(p, "split");
  j["split"] = split_witness_to_json(p, s);
  return j;
}

std::string verify_witness(Json const& doc) {
  if (doc.at("schema") != "dgroup.witness") {
    throw std::invalid_argument("not a witness document");
  }
  if (doc.at("version") != schema_version) {
    throw std::invalid_argument("unsupported witness version");
  }
  auto p = parse_presentation(doc.at("presentation").get<std::string>());
  auto kind = doc.at("witness_kind").get<std::string>();
  if (kind == "z2") {
    Z2Witness z{diagram_from_json(p, doc.at("a")), diagram_from_json(p, doc.at("b")),
                split_witness_from_json(p, doc.at("split"))};
    check_z2_witness(p, z);
  } else if (kind == "nontrivial") {
    check_nontrivial_element(diagram_from_json(p, doc.at("element")),
                             word_from_json(p, doc.at("word")));
  } else if (kind == "derivation") {
    auto end = replay(p, word_from_json(p, doc.at("from")),
                      derivation_from_json(p, doc.at("derivation")));
    if (end != word_from_json(p, doc.at("to"))) {
      throw std::invalid_argument("derivation ends at " + p.format(end));
    }
  } else if (kind == "self_intersection") {
    SelfIntersection s{edge_from_json(p, doc.at("edge")), word_from_json(p, doc.at("middle")),
                       word_from_json(p, doc.at("tail")),
                       derivation_from_json(p, doc.at("left_equation")),
                       derivation_from_json(p, doc.at("right_equation"))};
    check_self_intersection(p, s);
  } else if (kind == "split") {
    check_split_witness(p, split_witness_from_json(p, doc.at("split")));
  } else {
    throw std::invalid_argument("unknown witness kind \"" + kind + "\"");
  }
  return kind;
}

Json freeness_to_json(Presentation const& p, Word const& w, FreenessReport const& r) {
  auto j = document("dgroup.freeness");
  j["presentation"] = p.to_text();
  j["word"] = word_to_json(p, w);
  j["verdict"] = to_string(r.verdict);
  j["dimension_lower_bound"] = r.dimension_lower_bound;
  j["rank"] = r.rank ? Json(*r.rank) : Json(nullptr);
  auto const& d = r.dimension;
  j["class"] = {{"members", d.members.size()},
                {"complete", d.class_complete},
                {"splits", d.splits},
                {"cleared", d.cleared},
                {"undecided", d.undecided},
                {"budget_used", budget_to_json(d.used)}};
  Json certs = Json::array();
  for (auto const& c : d.certificates) {
    certs.push_back(certificate_to_json(p, c));
  }
  j["triviality_certificates"] = certs;
  Json rows = Json::array();
  for (auto const& t : r.truncations) {
    rows.push_back({{"max_word_length", t.max_length},
                    {"vertices", t.vertices},
                    {"edges", t.edges},
                    {"squares", t.squares},
                    {"b1", t.b1},
                    {"complete", t.complete}});
  }
  j["truncations"] = rows;
  j["notes"] = r.notes;
  if (r.z2) {
    j["witness"] = z2_witness(p, *r.z2);
    j["replay"] = "save the witness object to a file and run: dgroup verify-witness <file>";
  }
  return j;
}

}  // namespace dgroup
