#include "doctest.h"

#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "dgroup/farley.hpp"
#include "dgroup/squier.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dgroup;

namespace {

  using Graph = std::vector<std::vector<std::size_t>>;

  Graph adjacency(FarleyBall const& ball, std::set<std::size_t> const& removed = {}) {
    Graph g(ball.vertices.size());
    for (std::size_t e = 0; e < ball.edges.size(); ++e) {
      if (removed.count(e) == 0) {
        g[ball.edges[e].lower].push_back(ball.edges[e].upper);
        g[ball.edges[e].upper].push_back(ball.edges[e].lower);
      }
    }
    return g;
  }

  std::vector<std::size_t> bfs(Graph const& g, std::size_t from) {
    std::vector<std::size_t> dist(g.size(), SIZE_MAX);
    std::deque<std::size_t> q{from};
    dist[from] = 0;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto u : g[v]) {
        if (dist[u] == SIZE_MAX) {
          dist[u] = dist[v] + 1;
          q.push_back(u);
        }
      }
    }
    return dist;
  }

  // Edge classes under "opposite sides of a square".
  std::vector<std::size_t> parallel_classes(FarleyBall const& ball) {
    std::vector<std::size_t> parent(ball.edges.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
    for (std::size_t e = 0; e < ball.edges.size(); ++e) {
      edge_of[{ball.edges[e].lower, ball.edges[e].upper}] = e;
    }
    for (auto const& s : ball.cubes[2]) {
      auto const& c = s.corners;
      parent[find(edge_of.at({c[0], c[1]}))] = find(edge_of.at({c[2], c[3]}));
      parent[find(edge_of.at({c[0], c[2]}))] = find(edge_of.at({c[1], c[3]}));
    }
    std::vector<std::size_t> out(ball.edges.size());
    for (std::size_t e = 0; e < out.size(); ++e) {
      out[e] = find(e);
    }
    return out;
  }

  struct Setting {
    std::string_view text;
    std::string_view word;
  };

  Setting const settings[] = {
      {fixtures::commuting, "aabc"},
      {fixtures::idempotent_bridge, "abc"},
      {fixtures::absorbing, "ab"},
  };

}  // namespace

TEST_CASE("balls are prefix-closed and graded by cell count") {
  for (auto const& s : settings) {
    auto p = fixtures::load(s.text);
    auto ball = build_ball(p, p.parse_word(s.word), 3);
    CHECK(ball.vertices[0].is_trivial());
    for (auto const& d : ball.vertices) {
      CHECK(d.cell_count() <= 3);
      CHECK(is_reduced(d));
      if (!d.is_trivial()) {
        // dropping any sink gives a vertex of the ball
        auto split = maximal_thin_suffix(d);
        CHECK(ball.find(split.stem));
      }
    }
    for (auto const& e : ball.edges) {
      CHECK(ball.vertices[e.upper].cell_count() == ball.vertices[e.lower].cell_count() + 1);
    }
    for (std::size_t n = 2; n < ball.cubes.size(); ++n) {
      for (auto const& c : ball.cubes[n]) {
        CHECK(c.corners.size() == (std::size_t{1} << n));
      }
    }
  }
  CHECK_THROWS_AS(build_ball(fixtures::load(fixtures::commuting), Word{}, 2),
                  std::invalid_argument);
}

TEST_CASE("vertex count matches brute-force reduced derivations") {
  auto p = fixtures::load(fixtures::commuting);
  auto w = p.parse_word("aabc");
  auto ball = build_ball(p, w, 3);
  // Independent enumeration: all derivations of length <= 3, reduced by
  // adjacent-dipole removal, deduplicated by canonical encoding.
  std::set<std::string> seen;
  std::vector<oracle::Steps> frontier{{}};
  for (std::size_t len = 0; len <= 3; ++len) {
    std::vector<oracle::Steps> next;
    for (auto const& s : frontier) {
      auto r = oracle::brute_reduce(p, s);
      seen.insert(to_string(Diagram(p, w, r)));
      if (len == 3) {
        continue;
      }
      auto bottom = oracle::run(p, w, s);
      for (auto const& e : one_step_rewrites(p, bottom)) {
        auto t = s;
        t.push_back(Cell{e.offset(), e.relation, e.direction});
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  CHECK(seen.size() == ball.vertices.size());
}

TEST_CASE("distance is the cell count of the quotient, checked by BFS") {
  for (auto const& s : settings) {
    auto p = fixtures::load(s.text);
    auto w = p.parse_word(s.word);
    auto ball = build_ball(p, w, 3);
    auto big = build_ball(p, w, 6);
    auto g = adjacency(big);
    for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
      auto dist = bfs(g, *big.find(ball.vertices[i]));
      CHECK(dist[0] == ball.vertices[i].cell_count());
      for (std::size_t j = 0; j < ball.vertices.size(); ++j) {
        CHECK(combinatorial_distance(ball.vertices[i], ball.vertices[j])
              == dist[*big.find(ball.vertices[j])]);
      }
    }
  }
}

TEST_CASE("geodesics are edge paths of the right length") {
  auto p = fixtures::load(fixtures::commuting);
  auto w = p.parse_word("aabc");
  auto ball = build_ball(p, w, 4);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto const& e : ball.edges) {
    edges.insert({e.lower, e.upper});
    edges.insert({e.upper, e.lower});
  }
  std::size_t four_cell = 0;
  for (auto const& d : ball.vertices) {
    auto path = geodesic_between(ball.vertices[0], d);
    REQUIRE(path.size() == d.cell_count() + 1);
    CHECK(path.front() == ball.vertices[0]);
    CHECK(path.back() == d);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      auto a = ball.find(path[k]);
      auto b = ball.find(path[k + 1]);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(edges.count({*a, *b}) == 1);
    }
    four_cell += d.cell_count() == 4 ? 1 : 0;
  }
  CHECK(four_cell > 0);
}

TEST_CASE("medians exist, are unique, and match the BFS intervals") {
  Setting const cases[] = {{fixtures::commuting, "aabc"}, {fixtures::idempotent_bridge, "abc"}};
  for (auto const& s : cases) {
    auto p = fixtures::load(s.text);
    auto w = p.parse_word(s.word);
    std::size_t const r = s.text == fixtures::commuting ? 3 : 2;
    auto ball = build_ball(p, w, r);
    auto big = build_ball(p, w, 2 * r);
    auto g = adjacency(big);
    std::vector<std::vector<std::size_t>> dist;
    for (auto const& d : ball.vertices) {
      dist.push_back(bfs(g, *big.find(d)));
    }
    auto const n = ball.vertices.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          auto const& da = dist[a];
          auto const& db = dist[b];
          auto const& dc = dist[c];
          auto ib = *big.find(ball.vertices[b]);
          auto ic = *big.find(ball.vertices[c]);
          std::vector<std::size_t> medians;
          for (std::size_t v = 0; v < big.vertices.size(); ++v) {
            if (da[v] + db[v] == da[ib] && da[v] + dc[v] == da[ic] && db[v] + dc[v] == db[ic]) {
              medians.push_back(v);
            }
          }
          REQUIRE(medians.size() == 1);
          auto m = median_diagram(ball.vertices[a], ball.vertices[b], ball.vertices[c]);
          CHECK(big.vertices[medians[0]] == m);
        }
      }
    }
  }
}

TEST_CASE("minimal diagrams are those with a single sink") {
  auto p = fixtures::load(fixtures::idempotent_bridge);
  auto w = p.parse_word("abc");
  auto ball = build_ball(p, w, 3);
  auto minimal = enumerate_minimal_diagrams(p, w, 3);
  std::size_t expected = 0;
  for (auto const& d : ball.vertices) {
    if (!d.is_trivial() && oracle::sink_count(p, d.steps()) == 1) {
      ++expected;
    }
  }
  CHECK(minimal.size() == expected);
  for (auto const& d : minimal) {
    auto h = hyperplane_of(d);
    CHECK(h.stem.cell_count() + 1 == d.cell_count());
    CHECK(concat(h.x, h.u, h.y) == h.stem.bottom());
  }
  CHECK_THROWS_AS(hyperplane_of(ball.vertices[0]), std::invalid_argument);
}

TEST_CASE("edges correspond to hyperplanes through their minimal diagrams") {
  auto p = fixtures::load(fixtures::idempotent_bridge);
  auto w = p.parse_word("abc");
  auto ball = build_ball(p, w, 3);
  auto classes = parallel_classes(ball);
  std::map<std::size_t, Diagram> by_class;
  std::set<std::string> dual;
  for (std::size_t e = 0; e < ball.edges.size(); ++e) {
    auto const& edge = ball.edges[e];
    auto h = hyperplane_dual_to(ball.vertices[edge.lower], edge.atom);
    dual.insert(to_string(h.minimal));
    auto [it, fresh] = by_class.emplace(classes[e], h.minimal);
    if (!fresh) {
      CHECK(it->second == h.minimal);
    }
  }
  std::set<std::string> minimal;
  for (auto const& d : enumerate_minimal_diagrams(p, w, 3)) {
    minimal.insert(to_string(d));
  }
  CHECK(dual == minimal);
}

TEST_CASE("plus halfspace is the prefix up-set and the edge-cut component") {
  for (auto const& s : settings) {
    auto p = fixtures::load(s.text);
    auto w = p.parse_word(s.word);
    auto ball = build_ball(p, w, 3);
    auto classes = parallel_classes(ball);
    for (std::size_t e = 0; e < ball.edges.size(); ++e) {
      auto const& edge = ball.edges[e];
      auto h = hyperplane_dual_to(ball.vertices[edge.lower], edge.atom);
      Halfspace plus{h, Side::plus};
      Halfspace minus{h, Side::minus};
      CHECK(halfspace_contains(minus, ball.vertices[0]));
      CHECK(halfspace_contains(plus, h.minimal));
      std::set<std::size_t> cut;
      for (std::size_t f = 0; f < ball.edges.size(); ++f) {
        if (classes[f] == classes[e]) {
          cut.insert(f);
        }
      }
      auto dist = bfs(adjacency(ball, cut), edge.upper);
      for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
        auto const& d = ball.vertices[v];
        bool const inside = halfspace_contains(plus, d);
        CHECK(inside == oracle::brute_is_prefix(p, h.minimal.steps(), d.steps()));
        CHECK(inside == (dist[v] != SIZE_MAX));
        CHECK(inside != halfspace_contains(minus, d));
      }
    }
  }
}

TEST_CASE("carrier vertices factor through the stem") {
  auto p = fixtures::load(fixtures::idempotent_bridge);
  auto w = p.parse_word("abc");
  auto ball = build_ball(p, w, 3);
  for (auto const& d : enumerate_minimal_diagrams(p, w, 3)) {
    auto h = hyperplane_of(d);
    auto bd = hyperplane_boundaries(h, ball);
    auto has = [&](std::vector<BoundaryPoint> const& side, Diagram const& x) {
      for (auto const& b : side) {
        if (ball.vertices[b.vertex] == x) {
          return true;
        }
      }
      return false;
    };
    CHECK(has(bd.minus, h.stem));
    CHECK(has(bd.plus, h.minimal));
    for (auto const& b : bd.plus) {
      CHECK(b.left.top() == h.x);
      CHECK(b.right.top() == h.y);
    }
  }
  auto outside = enumerate_minimal_diagrams(p, w, 4);
  for (auto const& d : outside) {
    if (d.cell_count() == 4) {
      CHECK_THROWS_AS(hyperplane_boundaries(hyperplane_of(d), ball), std::invalid_argument);
      break;
    }
  }
}

TEST_CASE("one-letter contexts give single boundary points") {
  auto p = parse_presentation("letters: a b\nrel: a = b\n");
  auto w = p.parse_word("a");
  auto ball = build_ball(p, w, 3);
  auto h = hyperplane_of(ball.vertices[1]);
  auto bd = hyperplane_boundaries(h, ball);
  REQUIRE(bd.minus.size() == 1);
  REQUIRE(bd.plus.size() == 1);
  CHECK(ball.vertices[bd.minus[0].vertex] == h.stem);
  CHECK(ball.vertices[bd.plus[0].vertex] == h.minimal);
}

TEST_CASE("bottom labels realize the Squier component") {
  auto p = fixtures::load(fixtures::commuting);
  auto w = p.parse_word("abc");
  auto ball = build_ball(p, w, 6);
  auto comp = build_component(p, w, Budget{});
  std::set<Word> labels;
  for (auto const& d : ball.vertices) {
    labels.insert(d.bottom());
    for (auto const& e : ball.vertices) {
      if (d.bottom() == e.bottom()) {
        auto g = reduce(concatenate(d, invert(e)));
        CHECK(g.is_spherical());
        CHECK(reduce(concatenate(g, e)) == d);
      }
    }
  }
  CHECK(labels.size() == comp.vertices.size());
}

TEST_CASE("stabilizer criterion") {
  auto q = fixtures::load(fixtures::idempotent_bridge);
  auto w = q.parse_word("abc");
  // b -> bp on abc: contexts a and c, both with trivial groups, and b never
  // occurs in the class of a.
  auto atom = Diagram(q, w, {Cell{1, 2, Direction::backward}});
  auto h = hyperplane_of(atom);
  CHECK(h.x == q.parse_word("a"));
  CHECK(h.y == q.parse_word("c"));
  auto v = stabilizer_is_trivial(q, h, Budget{});
  REQUIRE(v.status == Status::proved);
  CHECK(v.proof()->left);
  CHECK(v.proof()->right);

  auto c = fixtures::load(fixtures::commuting);
  auto hc = hyperplane_of(Diagram(c, c.parse_word("ab"), {Cell{0, 0, Direction::forward}}));
  CHECK(stabilizer_is_trivial(c, hc, Budget{}).status == Status::proved);

  // a = a.p.p, so the hypothesis fails.
  auto r = parse_presentation("letters: a p q\nrel: ap = a\nrel: p = q\n");
  auto hr = hyperplane_of(Diagram(r, r.parse_word("ap"), {Cell{1, 1, Direction::forward}}));
  auto u = stabilizer_is_trivial(r, hr, Budget{});
  CHECK(u.status == Status::unknown);
  CHECK(u.note.find("extends") != std::string::npos);

  // A non-trivial context already lies in the stabilizer.
  auto hn = hyperplane_of(Diagram(c, c.parse_word("abcab"), {Cell{3, 0, Direction::forward}}));
  REQUIRE(hn.x == c.parse_word("abc"));
  CHECK(stabilizer_is_trivial(c, hn, Budget{}).status == Status::refuted);
}
