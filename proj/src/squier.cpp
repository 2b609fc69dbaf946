#include "dgroup/squier.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "linalg.hpp"

namespace dgroup {

namespace {

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  struct EdgeKey {
    std::size_t source;
    std::size_t offset;
    std::size_t relation;
    friend bool operator==(EdgeKey const&, EdgeKey const&) = default;
  };

  struct EdgeKeyHash {
    std::size_t operator()(EdgeKey const& k) const noexcept {
      return (k.source * 1000003U + k.offset) * 1000003U + k.relation;
    }
  };

  // Edge lookup shared between construction and queries; rebuilt lazily from
  // the edge list so components stay plain aggregates.
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> edge_map(
      SquierComponent const& c) {
    std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> m;
    m.reserve(c.edges.size());
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      auto const& ed = c.edges[e];
      m.emplace(EdgeKey{ed.source, ed.rewrite.offset(), ed.rewrite.relation}, e);
    }
    return m;
  }

  std::vector<Application> forward_applications(Presentation const& p,
                                                 Word const& w) {
    std::vector<Application> out;
    for (auto const& e : one_step_rewrites(p, w)) {
      if (e.direction == Direction::forward) {
        out.push_back(Application{e.offset(), e.relation});
      }
    }
    return out;
  }

  // The word obtained from `w` by applying the applications selected in mask.
  Word apply_subset(Presentation const& p, Word const& w,
                    std::vector<Application> const& apps, std::size_t mask) {
    Word out;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < apps.size(); ++i) {
      auto const& r = p.relation(apps[i].relation);
      out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos),
                 w.begin() + static_cast<std::ptrdiff_t>(apps[i].offset));
      auto const& side = (mask >> i & 1U) != 0 ? r.rhs : r.lhs;
      out.insert(out.end(), side.begin(), side.end());
      pos = apps[i].offset + r.lhs.size();
    }
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos), w.end());
    return out;
  }

  // Offset of application i in the corner given by mask.
  std::size_t shifted_offset(Presentation const& p,
                             std::vector<Application> const& apps,
                             std::size_t mask, std::size_t i) {
    std::ptrdiff_t shift = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if ((mask >> j & 1U) != 0) {
        auto const& r = p.relation(apps[j].relation);
        shift += static_cast<std::ptrdiff_t>(r.rhs.size())
                 - static_cast<std::ptrdiff_t>(r.lhs.size());
      }
    }
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(apps[i].offset)
                                    + shift);
  }

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(
      SquierComponent const& c) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(
        c.vertices.size());
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      adj[c.edges[e].source].emplace_back(c.edges[e].target, e);
      adj[c.edges[e].target].emplace_back(c.edges[e].source, e);
    }
    return adj;
  }

  // Derivation from the root of `parent` to v along tree edges.
  Derivation tree_path(SquierComponent const& c,
                       std::vector<std::size_t> const& parent, std::size_t v) {
    Derivation out;
    while (parent[v] != none) {
      auto const& e = c.edges[parent[v]];
      if (e.target == v) {
        out.push_back(e.rewrite);
        v = e.source;
      } else {
        out.push_back(e.rewrite.reversed());
        v = e.target;
      }
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  Derivation reversed(Derivation d) {
    std::reverse(d.begin(), d.end());
    for (auto& e : d) {
      e = e.reversed();
    }
    return d;
  }

  struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
      std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    }
    void unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  };

  // The four sides of a square in the order
  // first-slot at 00, second-slot at 10, first-slot at 01, second-slot at 00.
  struct SquareSides {
    std::array<std::size_t, 4> edge;
  };

  SquareSides square_sides(SquierComponent const& c, SquierCube const& s,
                           std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> const& m) {
    auto const& p = c.presentation;
    auto lookup = [&](std::size_t mask, std::size_t i) {
      auto key = EdgeKey{s.corners[mask], shifted_offset(p, s.applications, mask, i),
                         s.applications[i].relation};
      auto it = m.find(key);
      if (it == m.end()) {
        throw std::logic_error("square side missing from component");
      }
      return it->second;
    };
    return SquareSides{{lookup(0b00, 0), lookup(0b01, 1), lookup(0b10, 0),
                        lookup(0b00, 1)}};
  }

}  // namespace

std::optional<std::size_t> SquierComponent::find(Word const& w) const {
  auto it = index.find(w);
  if (it == index.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<std::size_t> SquierComponent::find_edge(
    std::size_t source, std::size_t offset, std::size_t relation) const {
  if (source >= vertices.size()) {
    return std::nullopt;
  }
  auto const& r = presentation.relation(relation);
  auto const& w = vertices[source];
  if (offset + r.lhs.size() > w.size()) {
    return std::nullopt;
  }
  RewriteEdge e{subword(w, 0, offset), relation, Direction::forward,
                subword(w, offset + r.lhs.size(), w.size() - offset - r.lhs.size())};
  if (e.source(presentation) != w) {
    return std::nullopt;
  }
  auto target = find(e.target(presentation));
  if (!target) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].source == source && edges[i].rewrite == e) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t SquierComponent::cube_count(std::size_t dim) const {
  switch (dim) {
    case 0:
      return vertices.size();
    case 1:
      return edges.size();
    default:
      return dim < cubes.size() ? cubes[dim].size() : 0;
  }
}

std::vector<SquierCube> const& SquierComponent::squares() const {
  static std::vector<SquierCube> const empty;
  return cubes.size() > 2 ? cubes[2] : empty;
}

SquierComponent build_component(Presentation const& p, Word const& w,
                                Budget const& b) {
  b.validate();
  if (w.empty()) {
    throw std::invalid_argument("base word must be non-empty");
  }
  SquierComponent c{p, w, {}, {}, {}, {}, true, Budget{0, 0, 0, 0}, {}};
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> edges;
  std::vector<std::size_t> depth;

  auto add_vertex = [&](Word word, std::size_t d, std::size_t via) {
    c.used.max_word_length = std::max(c.used.max_word_length, word.size());
    c.used.max_depth = std::max(c.used.max_depth, d);
    c.index.emplace(word, c.vertices.size());
    c.vertices.push_back(std::move(word));
    c.tree_edge.push_back(via);
    depth.push_back(d);
  };
  if (w.size() > b.max_word_length) {
    c.complete = false;
    return c;
  }
  add_vertex(w, 0, none);

  for (std::size_t head = 0; head < c.vertices.size(); ++head) {
    for (auto& e : one_step_rewrites(p, c.vertices[head])) {
      Word next = e.target(p);
      auto found = c.index.find(next);
      std::size_t other = none;
      if (found != c.index.end()) {
        other = found->second;
      } else if (next.size() > b.max_word_length || depth[head] >= b.max_depth
                 || c.vertices.size() >= b.max_words) {
        c.complete = false;
        continue;
      }
      bool const forward = e.direction == Direction::forward;
      // The edge's forward form: source carries the left-hand side.
      RewriteEdge fwd = forward ? e : e.reversed();
      std::size_t const new_id = c.edges.size();
      if (other == none) {
        other = c.vertices.size();
        add_vertex(std::move(next), depth[head] + 1, new_id);
      }
      std::size_t const src = forward ? head : other;
      std::size_t const dst = forward ? other : head;
      auto [it, inserted] = edges.emplace(EdgeKey{src, fwd.offset(), fwd.relation},
                                          new_id);
      if (inserted) {
        c.edges.push_back(SquierEdge{src, dst, std::move(fwd)});
      }
    }
  }
  c.used.max_words = c.vertices.size();

  // Cubes of dimension >= 2, each found once from its all-lhs corner.
  c.cubes.resize(3);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    auto apps = forward_applications(p, c.vertices[v]);
    std::vector<Application> chosen;
    std::vector<std::size_t> corners{v};
    // Corners are kept in mask order; a set with a missing corner cannot be
    // part of a larger cube, so the search stops there.
    auto extend = [&](auto&& self, std::size_t from, std::size_t end) -> void {
      for (std::size_t i = from; i < apps.size(); ++i) {
        if (apps[i].offset < end) {
          continue;
        }
        chosen.push_back(apps[i]);
        std::size_t const n = chosen.size();
        std::size_t const half = corners.size();
        bool all = true;
        for (std::size_t mask = half; mask < 2 * half; ++mask) {
          auto corner = c.find(apply_subset(p, c.vertices[v], chosen, mask));
          if (!corner) {
            all = false;
            break;
          }
          corners.push_back(*corner);
        }
        if (all) {
          if (n >= 2) {
            if (c.cubes.size() <= n) {
              c.cubes.resize(n + 1);
            }
            c.cubes[n].push_back(SquierCube{v, chosen, corners});
          }
          self(self, i + 1, apps[i].offset + p.relation(apps[i].relation).lhs.size());
        }
        corners.resize(half);
        chosen.pop_back();
      }
    };
    extend(extend, 0, 0);
  }
  c.used.max_cells = c.cubes.size() - 1;
  return c;
}

long euler_characteristic(SquierComponent const& c) {
  long chi = static_cast<long>(c.vertices.size()) - static_cast<long>(c.edges.size());
  for (std::size_t n = 2; n < c.cubes.size(); ++n) {
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(c.cubes[n].size());
  }
  return chi;
}

std::size_t first_betti_number(SquierComponent const& c) {
  if (c.vertices.empty()) {
    return 0;
  }
  // The explored fragment is connected, so rank d1 = V - 1.
  auto const m = edge_map(c);
  std::vector<linalg::SparseRow> rows;
  rows.reserve(c.squares().size());
  for (auto const& s : c.squares()) {
    auto sides = square_sides(c, s, m);
    rows.push_back({{sides.edge[0], 1}, {sides.edge[1], 1},
                    {sides.edge[2], -1}, {sides.edge[3], -1}});
  }
  auto const rank2 = linalg::rational_rank(rows);
  return c.edges.size() - (c.vertices.size() - 1) - rank2;
}

std::string to_string(GroupPresentation const& g) {
  std::ostringstream out;
  out << '<';
  for (std::size_t k = 1; k <= g.generators; ++k) {
    out << (k > 1 ? ", " : "") << 'g' << k;
  }
  out << " |";
  for (std::size_t r = 0; r < g.relators.size(); ++r) {
    out << (r > 0 ? ", " : " ");
    if (g.relators[r].empty()) {
      out << '1';
    }
    for (int x : g.relators[r]) {
      out << 'g' << std::abs(x) << (x < 0 ? "^-1" : "");
    }
  }
  out << '>';
  return out.str();
}

Pi1Presentation pi1_presentation(SquierComponent const& c, Word const& base) {
  auto root = c.find(base);
  if (!root) {
    throw std::invalid_argument("base word is not a vertex of the component");
  }
  Pi1Presentation out;
  out.base = *root;
  out.tree_parent.assign(c.vertices.size(), none);
  auto adj = adjacency(c);
  std::vector<bool> seen(c.vertices.size(), false);
  std::vector<bool> tree(c.edges.size(), false);
  std::deque<std::size_t> queue{*root};
  seen[*root] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto [u, e] : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        out.tree_parent[u] = e;
        tree[e] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<int> generator(c.edges.size(), 0);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    if (!tree[e]) {
      out.generator_edge.push_back(e);
      generator[e] = static_cast<int>(out.generator_edge.size());
    }
  }
  out.group.generators = out.generator_edge.size();
  auto const m = edge_map(c);
  for (auto const& s : c.squares()) {
    auto sides = square_sides(c, s, m);
    std::vector<int> rel;
    int const sign[4] = {1, 1, -1, -1};
    for (std::size_t i = 0; i < 4; ++i) {
      if (auto g = generator[sides.edge[i]]; g != 0) {
        rel.push_back(sign[i] * g);
      }
    }
    out.group.relators.push_back(std::move(rel));
  }
  return out;
}

namespace {

  void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int x : w) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    // cyclic reduction
    std::size_t i = 0;
    std::size_t j = out.size();
    while (j - i >= 2 && out[i] == -out[j - 1]) {
      ++i;
      --j;
    }
    w.assign(out.begin() + static_cast<std::ptrdiff_t>(i),
             out.begin() + static_cast<std::ptrdiff_t>(j));
  }

}  // namespace

GroupPresentation simplify_presentation(GroupPresentation g, Budget const& b) {
  std::size_t const length_cap = 64 * b.max_word_length;
  for (std::size_t round = 0; round < b.max_words; ++round) {
    for (auto& r : g.relators) {
      free_reduce(r);
    }
    std::erase_if(g.relators, [](auto const& r) { return r.empty(); });
    std::sort(g.relators.begin(), g.relators.end(),
              [](auto const& x, auto const& y) {
                return x.size() != y.size() ? x.size() < y.size() : x < y;
              });
    g.relators.erase(std::unique(g.relators.begin(), g.relators.end()),
                     g.relators.end());

    // Find a relator in which some generator occurs exactly once.
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    for (std::size_t r = 0; r < g.relators.size() && !pick; ++r) {
      std::map<int, std::size_t> count;
      for (int x : g.relators[r]) {
        ++count[std::abs(x)];
      }
      for (std::size_t i = 0; i < g.relators[r].size(); ++i) {
        if (count[std::abs(g.relators[r][i])] == 1) {
          pick = std::make_pair(r, i);
          break;
        }
      }
    }
    if (!pick) {
      break;
    }
    auto rel = g.relators[pick->first];
    int const x = rel[pick->second];
    int const gen = std::abs(x);
    // rel = u x v = 1, so x = u^-1 v^-1; rotate to x t = 1, x = t^-1.
    std::vector<int> t(rel.begin() + static_cast<std::ptrdiff_t>(pick->second) + 1,
                       rel.end());
    t.insert(t.end(), rel.begin(),
             rel.begin() + static_cast<std::ptrdiff_t>(pick->second));
    std::vector<int> value;  // expression for generator `gen`
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      value.push_back(-*it);
    }
    if (x < 0) {
      std::reverse(value.begin(), value.end());
      for (auto& y : value) {
        y = -y;
      }
    }
    std::vector<std::vector<int>> next;
    bool too_long = false;
    for (std::size_t r = 0; r < g.relators.size(); ++r) {
      if (r == pick->first) {
        continue;
      }
      std::vector<int> out;
      for (int y : g.relators[r]) {
        if (std::abs(y) != gen) {
          out.push_back(y);
        } else if (y > 0) {
          out.insert(out.end(), value.begin(), value.end());
        } else {
          for (auto it = value.rbegin(); it != value.rend(); ++it) {
            out.push_back(-*it);
          }
        }
      }
      too_long = too_long || out.size() > length_cap;
      next.push_back(std::move(out));
    }
    if (too_long) {
      break;
    }
    // Renumber: the last generator takes the eliminated one's place.
    int const last = static_cast<int>(g.generators);
    for (auto& r : next) {
      for (auto& y : r) {
        if (std::abs(y) == last) {
          y = y > 0 ? gen : -gen;
        }
      }
    }
    g.generators -= 1;
    g.relators = std::move(next);
  }
  for (auto& r : g.relators) {
    free_reduce(r);
  }
  std::erase_if(g.relators, [](auto const& r) { return r.empty(); });
  return g;
}

std::size_t abelianized_rank(GroupPresentation const& g) {
  std::vector<linalg::SparseRow> rows;
  for (auto const& r : g.relators) {
    linalg::SparseRow row;
    for (int x : r) {
      row.emplace_back(static_cast<std::size_t>(std::abs(x)), x > 0 ? 1 : -1);
    }
    rows.push_back(std::move(row));
  }
  return g.generators - linalg::rational_rank(rows);
}

Diagram generator_loop(SquierComponent const& c, Pi1Presentation const& pi,
                       std::size_t generator) {
  if (generator == 0 || generator > pi.generator_edge.size()) {
    throw std::out_of_range("no such generator");
  }
  auto const& e = c.edges[pi.generator_edge[generator - 1]];
  Derivation path = tree_path(c, pi.tree_parent, e.source);
  path.push_back(e.rewrite);
  auto back = reversed(tree_path(c, pi.tree_parent, e.target));
  path.insert(path.end(), back.begin(), back.end());
  return derivation_diagram(c.presentation, c.vertices[pi.base], path);
}

std::vector<std::size_t> squier_hyperplanes(SquierComponent const& c) {
  UnionFind uf(c.edges.size());
  auto const m = edge_map(c);
  for (auto const& s : c.squares()) {
    auto sides = square_sides(c, s, m);
    uf.unite(sides.edge[0], sides.edge[2]);
    uf.unite(sides.edge[1], sides.edge[3]);
  }
  std::vector<std::size_t> out(c.edges.size());
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    out[e] = uf.find(e);
  }
  return out;
}

Verdict<ContextEqualities, std::string> same_hyperplane_squier(
    Presentation const& p, RewriteEdge const& e1, RewriteEdge const& e2,
    Budget const& b) {
  using V = Verdict<ContextEqualities, std::string>;
  auto const f1 = e1.direction == Direction::forward ? e1 : e1.reversed();
  auto const f2 = e2.direction == Direction::forward ? e2 : e2.reversed();
  if (f1.relation != f2.relation) {
    return V::refuted("relation labels differ", {}, "relation labels differ");
  }
  auto context = [&](Word const& x, Word const& y) -> EqualityVerdict {
    if (x.empty() || y.empty()) {
      if (x.empty() && y.empty()) {
        return EqualityVerdict::proved({});
      }
      return EqualityVerdict::refuted({}, {}, "one context is empty");
    }
    return words_equal_mod_p(p, x, y, b);
  };
  auto left = context(f1.left, f2.left);
  if (left.status == Status::refuted) {
    return V::refuted("left contexts differ", left.used, "left contexts differ");
  }
  auto right = context(f1.right, f2.right);
  if (right.status == Status::refuted) {
    return V::refuted("right contexts differ", right.used, "right contexts differ");
  }
  if (left.status == Status::proved && right.status == Status::proved) {
    return V::proved(ContextEqualities{*left.proof(), *right.proof()});
  }
  return V::unknown(b, "context equality undecided within budget");
}

Verdict<SelfIntersection, std::string> self_intersection_search(
    Presentation const& p, SquierComponent const& c, Budget const& b) {
  using V = Verdict<SelfIntersection, std::string>;
  bool all_refuted = true;
  std::size_t candidates = 0;
  for (auto const& edge : c.edges) {
    for (auto dir : {Direction::forward, Direction::backward}) {
      RewriteEdge e = dir == Direction::forward ? edge.rewrite : edge.rewrite.reversed();
      Word const& a = e.left;
      Word const& from = p.relation(e.relation).from(e.direction);
      Word const& rest = e.right;
      if (a.empty() || rest.size() <= from.size()) {
        continue;  // a = a.p.b and c = b.p.c need non-empty a and c
      }
      for (std::size_t k = 0; k + from.size() < rest.size(); ++k) {
        if (!std::equal(from.begin(), from.end(),
                        rest.begin() + static_cast<std::ptrdiff_t>(k))) {
          continue;
        }
        ++candidates;
        Word middle = subword(rest, 0, k);
        Word tail = subword(rest, k + from.size(), rest.size() - k - from.size());
        auto left = words_equal_mod_p(p, a, concat(a, from, middle), b);
        if (left.status == Status::refuted) {
          continue;
        }
        auto right = words_equal_mod_p(p, tail, concat(middle, from, tail), b);
        if (left.status == Status::proved && right.status == Status::proved) {
          return V::proved(SelfIntersection{e, middle, tail, *left.proof(),
                                            *right.proof()},
                           b);
        }
        if (right.status != Status::refuted) {
          all_refuted = false;
        }
      }
    }
  }
  if (c.complete && all_refuted) {
    return V::refuted("no edge satisfies the self-intersection equations", b,
                      std::to_string(candidates) + " candidate decompositions refuted");
  }
  return V::unknown(b, c.complete ? "some candidate equations undecided"
                                  : "component explored only partially");
}

void check_self_intersection(Presentation const& p, SelfIntersection const& s) {
  Word const& from = p.relation(s.edge.relation).from(s.edge.direction);
  if (s.edge.left.empty() || s.tail.empty()
      || s.edge.right != concat(s.middle, from, s.tail)) {
    throw std::invalid_argument("edge does not have the form (a, p -> q, b.p.c)");
  }
  if (replay(p, s.edge.left, s.left_equation) != concat(s.edge.left, from, s.middle)) {
    throw std::invalid_argument("left equation does not end at a.p.b");
  }
  if (replay(p, s.tail, s.right_equation) != concat(s.middle, from, s.tail)) {
    throw std::invalid_argument("right equation does not end at b.p.c");
  }
}

SpecialnessVerdict specialness_criterion(Presentation const& p, Word const& w,
                                         Budget const& b) {
  SpecialnessVerdict out;
  auto cls = enumerate_word_class(p, w, b);
  out.class_size = cls.words.size();
  out.used = cls.used;
  std::unordered_map<Word, WordClass, WordHash> cache;
  auto class_of = [&](Word const& x) -> WordClass const& {
    auto it = cache.find(x);
    if (it == cache.end()) {
      it = cache.emplace(x, enumerate_word_class(p, x, b)).first;
    }
    return it->second;
  };

  bool all_clear = cls.complete;
  for (auto const& member : cls.words) {
    for (std::size_t cut = 1; cut < member.size(); ++cut) {
      ++out.splits_checked;
      Word a = subword(member, 0, cut);
      Word rest = subword(member, cut, member.size() - cut);
      bool cleared = false;
      // Try both sides: p must satisfy a.p in [a] and p.b in [b].
      for (int side = 0; side < 2 && !cleared && !out.violation; ++side) {
        Word const& own = side == 0 ? a : rest;
        Word const& other = side == 0 ? rest : a;
        auto const& cl = class_of(own);
        bool all_refuted = true;
        for (auto const& y : cl.words) {
          if (y.size() <= own.size()) {
            continue;
          }
          bool const extends = side == 0
                                   ? std::equal(own.begin(), own.end(), y.begin())
                                   : std::equal(own.rbegin(), own.rend(), y.rbegin());
          if (!extends) {
            continue;
          }
          Word cand = side == 0 ? subword(y, own.size(), y.size() - own.size())
                                : subword(y, 0, y.size() - own.size());
          Word extended = side == 0 ? concat(cand, other) : concat(other, cand);
          auto eq = words_equal_mod_p(p, other, extended, b);
          if (eq.status == Status::proved) {
            auto own_eq = words_equal_mod_p(p, own, y, b);
            if (own_eq.status != Status::proved) {
              all_refuted = false;
              continue;
            }
            SpecialnessTriple t;
            t.a = a;
            t.b = rest;
            t.p = cand;
            t.a_equation = side == 0 ? *own_eq.proof() : *eq.proof();
            t.b_equation = side == 0 ? *eq.proof() : *own_eq.proof();
            out.violation = std::move(t);
            break;
          }
          if (eq.status != Status::refuted) {
            all_refuted = false;
          }
        }
        cleared = !out.violation && cl.complete && all_refuted;
      }
      if (out.violation) {
        out.status = Status::unknown;
        out.note = "criterion silent: violating triple found";
        return out;
      }
      all_clear = all_clear && cleared;
    }
  }
  if (all_clear) {
    out.status = Status::proved;
    out.note = "class complete and no split admits a, b, p";
  } else {
    out.status = Status::unknown;
    out.note = cls.complete ? "some splits undecided within budget"
                            : "word class explored only partially";
  }
  return out;
}

Verdict<TwoSidedness, std::string> two_sidedness_check(SquierComponent const& c) {
  using V = Verdict<TwoSidedness, std::string>;
  auto const& p = c.presentation;
  // Node 2e is edge e traversed source -> target, 2e+1 the reverse.
  UnionFind uf(2 * c.edges.size());
  auto const m = edge_map(c);
  auto oriented = [&](std::size_t e, std::size_t from) {
    auto const& ed = c.edges[e];
    if (ed.source == from) {
      return 2 * e;
    }
    if (ed.target == from) {
      return 2 * e + 1;
    }
    throw InvariantViolation("square side does not touch its corner");
  };
  TwoSidedness stats;
  for (auto const& s : c.squares()) {
    auto sides = square_sides(c, s, m);
    // Verify the stored words before trusting the sides.
    for (std::size_t mask = 0; mask < 4; ++mask) {
      if (c.vertices[s.corners[mask]]
          != apply_subset(p, c.vertices[s.base], s.applications, mask)) {
        throw InvariantViolation("square corner words are inconsistent");
      }
    }
    // Opposite sides are traversed in the same direction across the square.
    auto a0 = oriented(sides.edge[0], s.corners[0b00]);
    auto a1 = oriented(sides.edge[2], s.corners[0b10]);
    auto b0 = oriented(sides.edge[3], s.corners[0b00]);
    auto b1 = oriented(sides.edge[1], s.corners[0b01]);
    uf.unite(a0, a1);
    uf.unite(a0 ^ 1U, a1 ^ 1U);
    uf.unite(b0, b1);
    uf.unite(b0 ^ 1U, b1 ^ 1U);
    ++stats.squares_checked;
  }
  std::vector<bool> root(2 * c.edges.size(), false);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    if (uf.find(2 * e) == uf.find(2 * e + 1)) {
      throw InvariantViolation("one-sided hyperplane through edge "
                               + to_string(p, c.edges[e].rewrite));
    }
    root[uf.find(2 * e)] = true;
    root[uf.find(2 * e + 1)] = true;
  }
  stats.hyperplanes = static_cast<std::size_t>(
                          std::count(root.begin(), root.end(), true))
                      / 2;
  return V::proved(stats, c.used);
}

}  // namespace dgroup
