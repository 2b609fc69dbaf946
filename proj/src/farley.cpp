#include "dgroup/farley.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dgroup {

std::optional<std::size_t> FarleyBall::find(Diagram const& d) const {
  auto it = index.find(d);
  if (it == index.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t FarleyBall::cube_count(std::size_t dim) const {
  if (dim == 0) {
    return vertices.size();
  }
  if (dim == 1) {
    return edges.size();
  }
  return dim < cubes.size() ? cubes[dim].size() : 0;
}

namespace {

  std::size_t from_length(Presentation const& p, Cell const& c) {
    return p.relation(c.relation).from(c.direction).size();
  }

  // Atoms on bottom(d) that extend d to a larger reduced diagram.
  std::vector<Cell> growing_atoms(Diagram const& d) {
    auto const& p = d.presentation();
    auto cancelling = cancelling_atoms(d);
    std::vector<Cell> out;
    for (auto const& e : one_step_rewrites(p, d.bottom())) {
      Cell c{e.offset(), e.relation, e.direction};
      if (std::find(cancelling.begin(), cancelling.end(), c) == cancelling.end()) {
        out.push_back(c);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // d followed by the given disjoint atoms on bottom(d), sorted by offset.
  Diagram extend(Diagram const& d, std::vector<Cell> const& atoms) {
    auto const& p = d.presentation();
    auto steps = d.steps();
    long shift = 0;
    for (auto const& a : atoms) {
      auto const& r = p.relation(a.relation);
      steps.push_back(Cell{static_cast<std::size_t>(static_cast<long>(a.offset) + shift),
                           a.relation, a.direction});
      shift += static_cast<long>(r.to(a.direction).size())
               - static_cast<long>(r.from(a.direction).size());
    }
    return Diagram(p, d.top(), steps);
  }

  void collect_cubes(FarleyBall& ball, std::size_t base, std::vector<Cell> const& atoms,
                     std::size_t max_dim) {
    auto const& p = ball.presentation;
    std::vector<Cell> chosen;
    auto emit = [&] {
      FarleyCube cube{base, chosen, {}};
      std::size_t const n = chosen.size();
      cube.corners.resize(std::size_t{1} << n);
      for (std::size_t mask = 0; mask < cube.corners.size(); ++mask) {
        std::vector<Cell> sel;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (std::size_t{1} << i)) {
            sel.push_back(chosen[i]);
          }
        }
        auto corner = ball.find(extend(ball.vertices[base], sel));
        if (!corner) {
          throw InvariantViolation("cube corner missing from the ball");
        }
        cube.corners[mask] = *corner;
      }
      if (ball.cubes.size() <= n) {
        ball.cubes.resize(n + 1);
      }
      ball.cubes[n].push_back(std::move(cube));
    };
    auto rec = [&](auto&& self, std::size_t next, std::size_t end) -> void {
      if (chosen.size() >= 2) {
        emit();
      }
      if (chosen.size() == max_dim) {
        return;
      }
      for (std::size_t i = next; i < atoms.size(); ++i) {
        if (atoms[i].offset < end) {
          continue;
        }
        chosen.push_back(atoms[i]);
        self(self, i + 1, atoms[i].offset + from_length(p, atoms[i]));
        chosen.pop_back();
      }
    };
    rec(rec, 0, 0);
  }

  Diagram between(Diagram const& a, Diagram const& b) {
    if (a.top() != b.top()) {
      throw std::invalid_argument("diagrams have different top words");
    }
    return reduce(concatenate(invert(a), b));
  }

}  // namespace

FarleyBall build_ball(Presentation const& p, Word const& w, std::size_t radius) {
  if (w.empty()) {
    throw std::invalid_argument("base word must be non-empty");
  }
  FarleyBall ball{p, w, radius, {}, {}, {}, {}};
  ball.vertices.push_back(Diagram::identity(p, w));
  ball.index.emplace(ball.vertices[0], 0);
  std::vector<std::vector<Cell>> growing;
  std::size_t level_begin = 0;
  for (std::size_t level = 0; level < radius; ++level) {
    std::size_t const level_end = ball.vertices.size();
    for (std::size_t v = level_begin; v < level_end; ++v) {
      growing.push_back(growing_atoms(ball.vertices[v]));
      for (auto const& a : growing.back()) {
        auto e = extend(ball.vertices[v], {a});
        auto [it, fresh] = ball.index.emplace(e, ball.vertices.size());
        if (fresh) {
          ball.vertices.push_back(std::move(e));
        }
        ball.edges.push_back(FarleyEdge{v, it->second, a});
      }
    }
    level_begin = level_end;
  }
  for (std::size_t v = 0; v < growing.size(); ++v) {
    auto const cells = ball.vertices[v].cell_count();
    if (cells + 2 <= radius) {
      collect_cubes(ball, v, growing[v], radius - cells);
    }
  }
  if (ball.cubes.size() < 3) {
    ball.cubes.resize(3);
  }
  return ball;
}

std::size_t combinatorial_distance(Diagram const& a, Diagram const& b) {
  return between(a, b).cell_count();
}

std::vector<Diagram> geodesic_between(Diagram const& a, Diagram const& b) {
  auto x = between(a, b);
  auto steps = x.steps();
  std::vector<Diagram> out{a};
  for (std::size_t k = 1; k <= steps.size(); ++k) {
    Diagram prefix(a.presentation(), x.top(),
                   std::vector<Cell>(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(k)));
    out.push_back(reduce(concatenate(a, prefix)));
  }
  return out;
}

Diagram median_diagram(Diagram const& a, Diagram const& b, Diagram const& c) {
  auto x = between(a, b);
  auto y = between(a, c);
  // Largest common prefix of x and y, grown one shared first atom at a time.
  auto g = Diagram::identity(a.presentation(), a.bottom());
  for (;;) {
    auto rx = reduce(concatenate(invert(g), x));
    auto ry = reduce(concatenate(invert(g), y));
    auto fx = first_atoms(rx);
    auto fy = first_atoms(ry);
    auto it = std::find_first_of(fx.begin(), fx.end(), fy.begin(), fy.end());
    if (it == fx.end()) {
      break;
    }
    g = extend(g, {*it});
  }
  auto m = reduce(concatenate(a, g));
  auto d = [](Diagram const& u, Diagram const& v) { return combinatorial_distance(u, v); };
  if (d(a, m) + d(m, b) != d(a, b) || d(a, m) + d(m, c) != d(a, c)
      || d(b, m) + d(m, c) != d(b, c)) {
    throw InvariantViolation("common prefix is not a median");
  }
  return m;
}

std::vector<Diagram> enumerate_minimal_diagrams(Presentation const& p, Word const& w,
                                                std::size_t max_cells) {
  auto ball = build_ball(p, w, max_cells);
  std::vector<Diagram> out;
  for (auto const& d : ball.vertices) {
    if (!d.is_trivial() && is_minimal(d)) {
      out.push_back(d);
    }
  }
  return out;
}

Hyperplane hyperplane_of(Diagram const& minimal) {
  if (minimal.is_trivial() || !is_reduced(minimal) || !is_minimal(minimal)) {
    throw std::invalid_argument("not a reduced minimal diagram");
  }
  auto split = maximal_thin_suffix(minimal);
  auto const& p = minimal.presentation();
  Cell const pivot = split.suffix.layers().front().front();
  auto const& bottom = split.stem.bottom();
  auto const len = from_length(p, pivot);
  return Hyperplane{minimal,
                    split.stem,
                    pivot,
                    subword(bottom, 0, pivot.offset),
                    subword(bottom, pivot.offset, len),
                    subword(bottom, pivot.offset + len, bottom.size() - pivot.offset - len)};
}

Hyperplane hyperplane_dual_to(Diagram const& d, Cell const& atom) {
  auto cancelling = cancelling_atoms(d);
  if (std::find(cancelling.begin(), cancelling.end(), atom) != cancelling.end()) {
    throw std::invalid_argument("atom cancels a cell of the diagram");
  }
  auto e = extend(d, {atom});
  auto const n = e.steps().size();
  for (std::size_t i = 0; i < n; ++i) {
    auto mp = minimal_prefix_containing(e, i);
    if (!is_prefix(mp, d)) {
      return hyperplane_of(mp);
    }
  }
  throw InvariantViolation("edge crosses no hyperplane");
}

bool halfspace_contains(Halfspace const& h, Diagram const& d) {
  if (d.top() != h.hyperplane.minimal.top()) {
    throw std::invalid_argument("diagram has a different top word");
  }
  bool const plus = is_prefix(h.hyperplane.minimal, d);
  return h.sign == Side::plus ? plus : !plus;
}

HyperplaneBoundaries hyperplane_boundaries(Hyperplane const& h, FarleyBall const& ball) {
  if (!ball.find(h.minimal)) {
    throw std::invalid_argument("hyperplane's minimal diagram is outside the ball");
  }
  auto const& p = ball.presentation;
  auto const pivot = Diagram(p, h.u, {Cell{0, h.pivot.relation, h.pivot.direction}});
  auto const blank = Diagram::identity(p, h.u);
  std::vector<char> plus(ball.vertices.size());
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    plus[v] = is_prefix(h.minimal, ball.vertices[v]) ? 1 : 0;
  }
  std::set<std::size_t> minus_set;
  std::set<std::size_t> plus_set;
  for (auto const& e : ball.edges) {
    if (plus[e.lower] != plus[e.upper]) {
      (plus[e.lower] ? plus_set : minus_set).insert(e.lower);
      (plus[e.upper] ? plus_set : minus_set).insert(e.upper);
    }
  }
  auto factor = [&](std::size_t v, Diagram const& middle) {
    auto const& d = ball.vertices[v];
    auto r = reduce(concatenate(invert(h.stem), d));
    auto parts = split_sum(r, h.x.size(), h.u.size());
    if (!parts || (*parts)[1] != middle) {
      throw InvariantViolation("carrier vertex does not factor through the hyperplane");
    }
    auto rebuilt = reduce(concatenate(
        h.stem, sum_diagrams((*parts)[0], sum_diagrams(middle, (*parts)[2]))));
    if (rebuilt != d) {
      throw InvariantViolation("carrier factorization does not multiply back");
    }
    return BoundaryPoint{v, (*parts)[0], (*parts)[2]};
  };
  HyperplaneBoundaries out;
  for (auto v : minus_set) {
    out.minus.push_back(factor(v, blank));
  }
  for (auto v : plus_set) {
    out.plus.push_back(factor(v, pivot));
  }
  return out;
}

namespace {

  // Tries to rule out x = x.u.xi modulo P for every non-empty xi.
  std::optional<std::string> no_absorbing_extension(Presentation const& p,
                                                    Word const& x, Word const& u,
                                                    Budget const& b, std::string& partial) {
    if (x.empty()) {
      return std::string("the left context is empty");
    }
    auto gamma = letter_closure(p, x);
    for (auto l : u) {
      if (!gamma[l]) {
        return "letter " + p.letter_name(l) + " of " + p.format(u)
               + " never occurs in the class of " + p.format(x);
      }
    }
    auto cls = enumerate_word_class(p, x, b);
    Word const xu = concat(x, u);
    for (auto const& m : cls.words) {
      if (m.size() > xu.size() && starts_with(m, xu)) {
        partial = "class member " + p.format(m) + " extends " + p.format(xu);
        return std::nullopt;
      }
    }
    if (cls.complete) {
      return "the class of " + p.format(x) + " (" + std::to_string(cls.words.size())
             + " words) has no member extending " + p.format(xu);
    }
    std::ostringstream note;
    note << "class of " << p.format(x) << " not exhausted; explored";
    for (std::size_t i = 0; i < cls.words.size() && i < 16; ++i) {
      note << ' ' << p.format(cls.words[i]);
    }
    if (cls.words.size() > 16) {
      note << " ... (" << cls.words.size() << " words)";
    }
    partial = note.str();
    return std::nullopt;
  }

}  // namespace

Verdict<StabilizerCertificate, std::string> stabilizer_is_trivial(Presentation const& p,
                                                                  Hyperplane const& h,
                                                                  Budget const& b) {
  using V = Verdict<StabilizerCertificate, std::string>;
  b.validate();
  // D(x) x D(y) always sits inside the stabilizer, so a non-trivial factor
  // settles the question without the hypothesis.
  StabilizerCertificate cert;
  std::vector<std::string> pending;
  for (int side = 0; side < 2; ++side) {
    auto const& ctx = side == 0 ? h.x : h.y;
    if (ctx.empty()) {
      continue;
    }
    auto v = group_nontrivial(p, ctx, b);
    if (v.status == Status::proved) {
      return V::refuted("D(P, " + p.format(ctx) + ") is non-trivial and stabilizes the hyperplane",
                        v.used, v.note);
    }
    if (v.status == Status::refuted) {
      (side == 0 ? cert.left : cert.right) = *v.refutation();
    } else {
      pending.push_back("D(P, " + p.format(ctx) + ") undecided: " + v.note);
    }
  }
  std::string partial;
  auto hypothesis = no_absorbing_extension(p, h.x, h.u, b, partial);
  if (!hypothesis) {
    pending.push_back("hypothesis not established: " + partial);
  }
  if (!pending.empty()) {
    std::string note;
    for (auto const& s : pending) {
      note += (note.empty() ? "" : "; ") + s;
    }
    return V::unknown(b, note);
  }
  cert.hypothesis = *hypothesis;
  std::string note = "stabilizer is the conjugate of D(x) x D(y), both trivial";
  if (h.x.empty() || h.y.empty()) {
    // The factorization is only known for non-empty contexts; the empty
    // case is accepted, but said so.
    note += "; empty context admitted";
  }
  return V::proved(std::move(cert), b, note);
}

}  // namespace dgroup
