#include "dgroup/diagram.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace dgroup {

namespace {

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  // Diagram as a planar graph: every letter occurrence is an edge with an
  // id, every cell consumes a contiguous run of edges and produces new ones.
  struct CellNode {
    std::size_t relation;
    Direction direction;
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
  };

  struct CellGraph {
    std::vector<Letter> label;
    std::vector<std::size_t> top;
    std::vector<CellNode> cells;  // a topological order
    std::vector<std::size_t> bottom;
  };

  CellGraph build_graph(Presentation const& p, Word const& top,
                        std::vector<Cell> const& steps) {
    CellGraph g;
    g.label = top;
    g.top.resize(top.size());
    for (std::size_t i = 0; i < top.size(); ++i) {
      g.top[i] = i;
    }
    std::vector<std::size_t> current = g.top;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      auto const& s = steps[k];
      if (s.relation >= p.relations().size()) {
        throw std::invalid_argument("unknown relation index "
                                    + std::to_string(s.relation));
      }
      auto const& r = p.relation(s.relation);
      Word const& from = r.from(s.direction);
      Word const& to = r.to(s.direction);
      if (s.offset > current.size() || from.size() > current.size() - s.offset) {
        throw std::invalid_argument("step " + std::to_string(k)
                                    + " runs past the end of the word");
      }
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (g.label[current[s.offset + i]] != from[i]) {
          throw std::invalid_argument(
              "relation side does not occur at the stated position (step "
              + std::to_string(k) + ")");
        }
      }
      CellNode c{s.relation, s.direction, {}, {}};
      auto first = current.begin() + static_cast<std::ptrdiff_t>(s.offset);
      c.inputs.assign(first, first + static_cast<std::ptrdiff_t>(from.size()));
      for (Letter x : to) {
        c.outputs.push_back(g.label.size());
        g.label.push_back(x);
      }
      current.erase(first, first + static_cast<std::ptrdiff_t>(from.size()));
      current.insert(current.begin() + static_cast<std::ptrdiff_t>(s.offset),
                     c.outputs.begin(), c.outputs.end());
      g.cells.push_back(std::move(c));
    }
    g.bottom = std::move(current);
    return g;
  }

}  // namespace

struct DiagramAccess {
  // Left-greedy layering of a cell graph; only top, cells and labels are
  // used, the bottom is recomputed.
  static Diagram canonical(Presentation const& p, CellGraph const& g) {
    std::vector<std::size_t> producer(g.label.size(), none);
    std::vector<std::size_t> layer_of(g.cells.size(), 0);
    std::size_t layer_count = 0;
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      std::size_t l = 0;
      for (auto e : g.cells[c].inputs) {
        if (producer[e] != none) {
          l = std::max(l, layer_of[producer[e]] + 1);
        }
      }
      layer_of[c] = l;
      layer_count = std::max(layer_count, l + 1);
      for (auto e : g.cells[c].outputs) {
        producer[e] = c;
      }
    }
    std::vector<std::vector<std::size_t>> buckets(layer_count);
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      buckets[layer_of[c]].push_back(c);
    }

    std::vector<std::size_t> current = g.top;
    std::vector<std::size_t> position(g.label.size(), none);
    std::vector<Layer> layers;
    layers.reserve(layer_count);
    for (auto& bucket : buckets) {
      for (std::size_t i = 0; i < current.size(); ++i) {
        position[current[i]] = i;
      }
      std::vector<std::pair<std::size_t, std::size_t>> placed;
      placed.reserve(bucket.size());
      for (auto c : bucket) {
        auto const& node = g.cells[c];
        std::size_t pos = position[node.inputs.front()];
        for (std::size_t i = 0; i < node.inputs.size(); ++i) {
          if (pos == none || position[node.inputs[i]] != pos + i) {
            throw std::logic_error("cell graph is not planar");
          }
        }
        placed.emplace_back(pos, c);
      }
      std::sort(placed.begin(), placed.end());
      Layer layer;
      std::vector<std::size_t> next;
      next.reserve(current.size());
      std::size_t last = 0;
      for (auto [pos, c] : placed) {
        auto const& node = g.cells[c];
        if (pos < last) {
          throw std::logic_error("overlapping cells in one layer");
        }
        next.insert(next.end(), current.begin() + static_cast<std::ptrdiff_t>(last),
                    current.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), node.outputs.begin(), node.outputs.end());
        last = pos + node.inputs.size();
        layer.push_back(Cell{pos, node.relation, node.direction});
      }
      next.insert(next.end(), current.begin() + static_cast<std::ptrdiff_t>(last),
                  current.end());
      for (auto e : current) {
        position[e] = none;
      }
      current = std::move(next);
      layers.push_back(std::move(layer));
    }
    Word top;
    top.reserve(g.top.size());
    for (auto e : g.top) {
      top.push_back(g.label[e]);
    }
    Word bottom;
    bottom.reserve(current.size());
    for (auto e : current) {
      bottom.push_back(g.label[e]);
    }
    return Diagram(p, std::move(top), std::move(bottom), std::move(layers),
                   g.cells.size());
  }

  static CellGraph graph(Diagram const& d) {
    return build_graph(d.p_, d.top_, d.steps());
  }
};

namespace {

  // Cells of `g` restricted to `keep` (in order) over the given top edges.
  CellGraph restrict(CellGraph const& g, std::vector<std::size_t> top,
                     std::vector<bool> const& keep) {
    CellGraph out;
    out.label = g.label;
    out.top = std::move(top);
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      if (keep[c]) {
        out.cells.push_back(g.cells[c]);
      }
    }
    return out;
  }

  std::vector<std::size_t> producers(CellGraph const& g) {
    std::vector<std::size_t> producer(g.label.size(), none);
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      for (auto e : g.cells[c].outputs) {
        producer[e] = c;
      }
    }
    return producer;
  }

  std::vector<std::pair<std::size_t, std::size_t>> find_dipoles(
      CellGraph const& g) {
    auto producer = producers(g);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < g.cells.size(); ++j) {
      auto const& lower = g.cells[j];
      auto i = producer[lower.inputs.front()];
      if (i == none) {
        continue;
      }
      auto const& upper = g.cells[i];
      if (upper.relation == lower.relation
          && upper.direction != lower.direction
          && upper.outputs == lower.inputs) {
        out.emplace_back(i, j);
      }
    }
    return out;
  }

  void remove_dipole(CellGraph& g, std::size_t i, std::size_t j) {
    // The lower cell's outputs are glued back onto the upper cell's inputs.
    auto const& from = g.cells[j].outputs;
    auto const& to = g.cells[i].inputs;
    std::vector<std::size_t> subst(g.label.size(), none);
    for (std::size_t k = 0; k < from.size(); ++k) {
      subst[from[k]] = to[k];
    }
    auto apply = [&](std::vector<std::size_t>& edges) {
      for (auto& e : edges) {
        if (subst[e] != none) {
          e = subst[e];
        }
      }
    };
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      if (c != i && c != j) {
        apply(g.cells[c].inputs);
      }
    }
    apply(g.bottom);
    g.cells.erase(g.cells.begin() + static_cast<std::ptrdiff_t>(j));
    g.cells.erase(g.cells.begin() + static_cast<std::ptrdiff_t>(i));
  }

  std::vector<bool> sinks(CellGraph const& g) {
    std::vector<bool> consumed(g.label.size(), false);
    for (auto const& c : g.cells) {
      for (auto e : c.inputs) {
        consumed[e] = true;
      }
    }
    std::vector<bool> out(g.cells.size(), false);
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      out[c] = std::none_of(g.cells[c].outputs.begin(), g.cells[c].outputs.end(),
                            [&](std::size_t e) { return consumed[e]; });
    }
    return out;
  }

  // Edge sequence at the bottom of the cells in `keep` (a downward closed
  // set), computed by replaying them from the top.
  std::vector<std::size_t> frontier(CellGraph const& g,
                                    std::vector<bool> const& keep) {
    std::vector<std::size_t> current = g.top;
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      if (!keep[c]) {
        continue;
      }
      auto const& node = g.cells[c];
      auto it = std::find(current.begin(), current.end(), node.inputs.front());
      it = current.erase(it, it + static_cast<std::ptrdiff_t>(node.inputs.size()));
      current.insert(it, node.outputs.begin(), node.outputs.end());
    }
    return current;
  }

}  // namespace

////////////////////////////////////////////////////////////////////////////////
// Diagram
////////////////////////////////////////////////////////////////////////////////

Diagram::Diagram(Presentation p, Word top, Word bottom,
                 std::vector<Layer> layers, std::size_t cells)
    : p_(std::move(p)),
      top_(std::move(top)),
      bottom_(std::move(bottom)),
      layers_(std::move(layers)),
      cells_(cells) {}

Diagram::Diagram(Presentation p, Word top, std::vector<Cell> const& steps)
    : Diagram(DiagramAccess::canonical(p, build_graph(p, top, steps))) {}

Diagram Diagram::identity(Presentation p, Word w) {
  Word bottom = w;
  return Diagram(std::move(p), std::move(w), std::move(bottom), {}, 0);
}

std::vector<Cell> Diagram::steps() const {
  std::vector<Cell> out;
  out.reserve(cells_);
  for (auto const& layer : layers_) {
    std::ptrdiff_t shift = 0;
    for (auto const& c : layer) {
      auto const& r = p_.relation(c.relation);
      out.push_back(Cell{static_cast<std::size_t>(
                             static_cast<std::ptrdiff_t>(c.offset) + shift),
                         c.relation, c.direction});
      shift += static_cast<std::ptrdiff_t>(r.to(c.direction).size())
               - static_cast<std::ptrdiff_t>(r.from(c.direction).size());
    }
  }
  return out;
}

Derivation Diagram::derivation() const {
  Derivation out;
  Word current = top_;
  for (auto const& s : steps()) {
    auto const& r = p_.relation(s.relation);
    auto const len = r.from(s.direction).size();
    RewriteEdge e{subword(current, 0, s.offset), s.relation, s.direction,
                  subword(current, s.offset + len,
                          current.size() - s.offset - len)};
    current = e.target(p_);
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t Diagram::hash() const noexcept {
  std::size_t h = WordHash{}(top_);
  for (auto const& layer : layers_) {
    h = h * 1000003U + 0x51U;
    for (auto const& c : layer) {
      h = h * 1000003U + c.offset;
      h = h * 1000003U + c.relation * 2 + (c.direction == Direction::forward ? 0 : 1);
    }
  }
  return h;
}

std::string to_string(Diagram const& d) {
  auto const& p = d.presentation();
  std::ostringstream out;
  out << '(' << p.format(d.top()) << ", " << p.format(d.bottom()) << ")-diagram ["
      << d.cell_count() << " cells]";
  for (auto const& layer : d.layers()) {
    out << " |";
    for (auto const& c : layer) {
      out << ' ' << c.offset << ':' << c.relation
          << (c.direction == Direction::forward ? '+' : '-');
    }
  }
  return out.str();
}

////////////////////////////////////////////////////////////////////////////////
// Operations
////////////////////////////////////////////////////////////////////////////////

Diagram trivial_diagram(Presentation const& p, Word const& w) {
  if (w.empty()) {
    throw std::invalid_argument("trivial diagram needs a non-empty word");
  }
  return Diagram::identity(p, w);
}

Diagram atom_diagram(Presentation const& p, Atom const& a) {
  if (a.relation >= p.relations().size()) {
    throw std::invalid_argument("unknown relation index");
  }
  Word top = concat(a.left, p.relation(a.relation).from(a.direction), a.right);
  return Diagram(p, std::move(top),
                 {Cell{a.left.size(), a.relation, a.direction}});
}

Diagram atom_diagram(Presentation const& p, Word const& top,
                     std::size_t offset, std::size_t relation, Direction dir) {
  return Diagram(p, top, {Cell{offset, relation, dir}});
}

Diagram atom_diagram(Presentation const& p, RewriteEdge const& e) {
  return atom_diagram(p, Atom{e.left, e.relation, e.direction, e.right});
}

Diagram derivation_diagram(Presentation const& p, Word const& top,
                           Derivation const& steps) {
  std::vector<Cell> cells;
  cells.reserve(steps.size());
  Word current = top;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].source(p) != current) {
      throw std::invalid_argument("derivation step " + std::to_string(i)
                                  + " does not apply to the current word");
    }
    cells.push_back(Cell{steps[i].offset(), steps[i].relation,
                         steps[i].direction});
    current = steps[i].target(p);
  }
  return Diagram(p, top, cells);
}

Diagram concatenate(Diagram const& d1, Diagram const& d2) {
  if (d1.bottom() != d2.top()) {
    throw std::invalid_argument("concatenate: bottom(d1) != top(d2)");
  }
  auto steps = d1.steps();
  auto more = d2.steps();
  steps.insert(steps.end(), more.begin(), more.end());
  return Diagram(d1.presentation(), d1.top(), steps);
}

Diagram sum_diagrams(Diagram const& d1, Diagram const& d2) {
  auto steps = d1.steps();
  auto shift = d1.bottom().size();
  for (auto s : d2.steps()) {
    s.offset += shift;
    steps.push_back(s);
  }
  return Diagram(d1.presentation(), concat(d1.top(), d2.top()), steps);
}

Diagram invert(Diagram const& d) {
  auto steps = d.steps();
  std::reverse(steps.begin(), steps.end());
  for (auto& s : steps) {
    s.direction = flip(s.direction);
  }
  return Diagram(d.presentation(), d.bottom(), steps);
}

Diagram detail::reduce_with(
    Diagram const& d, std::function<std::size_t(std::size_t)> const& pick) {
  if (d.cell_count() < 2) {
    return d;
  }
  auto g = DiagramAccess::graph(d);
  bool changed = false;
  for (;;) {
    auto dipoles = find_dipoles(g);
    if (dipoles.empty()) {
      break;
    }
    auto k = pick(dipoles.size());
    if (k >= dipoles.size()) {
      throw std::out_of_range("dipole choice out of range");
    }
    remove_dipole(g, dipoles[k].first, dipoles[k].second);
    changed = true;
  }
  return changed ? DiagramAccess::canonical(d.presentation(), g) : d;
}

std::size_t detail::dipole_count(Diagram const& d) {
  return d.cell_count() < 2 ? 0 : find_dipoles(DiagramAccess::graph(d)).size();
}

Diagram reduce(Diagram const& d) {
  return detail::reduce_with(d, [](std::size_t) { return std::size_t{0}; });
}

bool is_reduced(Diagram const& d) {
  return detail::dipole_count(d) == 0;
}

Diagram group_product(Diagram const& d1, Diagram const& d2) {
  if (!d1.is_spherical() || !d2.is_spherical() || d1.top() != d2.top()) {
    throw std::invalid_argument(
        "group_product: diagrams must be spherical with the same base");
  }
  return reduce(concatenate(d1, d2));
}

bool is_prefix(Diagram const& d1, Diagram const& d2) {
  if (d1.top() != d2.top()) {
    throw std::invalid_argument("is_prefix: top words differ");
  }
  if (d1.cell_count() > d2.cell_count()) {
    return false;
  }
  if (d1.bottom() == d2.bottom() && d1.cell_count() == d2.cell_count()) {
    return d1 == d2;
  }
  auto rest = reduce(concatenate(invert(d1), d2));
  return d2.cell_count() == d1.cell_count() + rest.cell_count();
}

ThinSplit maximal_thin_suffix(Diagram const& d) {
  if (d.is_trivial()) {
    throw std::invalid_argument("maximal_thin_suffix: trivial diagram");
  }
  auto g = DiagramAccess::graph(d);
  auto last = sinks(g);
  std::vector<bool> keep(last.size());
  for (std::size_t c = 0; c < last.size(); ++c) {
    keep[c] = !last[c];
  }
  auto stem_graph = restrict(g, g.top, keep);
  auto stem = DiagramAccess::canonical(d.presentation(), stem_graph);

  // The suffix acts on the stem's bottom edges.
  auto base = frontier(g, keep);
  CellGraph suffix_graph;
  suffix_graph.label = g.label;
  suffix_graph.top = base;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    if (last[c]) {
      suffix_graph.cells.push_back(g.cells[c]);
    }
  }
  auto suffix = DiagramAccess::canonical(d.presentation(), suffix_graph);
  return ThinSplit{std::move(stem), std::move(suffix)};
}

bool is_minimal(Diagram const& d) {
  if (d.is_trivial()) {
    throw std::invalid_argument("is_minimal: trivial diagram");
  }
  auto g = DiagramAccess::graph(d);
  auto last = sinks(g);
  return std::count(last.begin(), last.end(), true) == 1;
}

Layer first_atoms(Diagram const& d) {
  return d.layers().empty() ? Layer{} : d.layers().front();
}

Layer cancelling_atoms(Diagram const& d) {
  if (d.is_trivial()) {
    return {};
  }
  auto g = DiagramAccess::graph(d);
  auto last = sinks(g);
  std::vector<std::size_t> position(g.label.size(), none);
  for (std::size_t i = 0; i < g.bottom.size(); ++i) {
    position[g.bottom[i]] = i;
  }
  Layer out;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    if (last[c]) {
      out.push_back(Cell{position[g.cells[c].outputs.front()], g.cells[c].relation,
                         flip(g.cells[c].direction)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagram minimal_prefix_containing(Diagram const& d, std::size_t step) {
  if (step >= d.cell_count()) {
    throw std::out_of_range("minimal_prefix_containing: no such step");
  }
  auto g = DiagramAccess::graph(d);
  auto producer = producers(g);
  std::vector<bool> keep(g.cells.size(), false);
  std::vector<std::size_t> stack{step};
  keep[step] = true;
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto e : g.cells[c].inputs) {
      auto q = producer[e];
      if (q != none && !keep[q]) {
        keep[q] = true;
        stack.push_back(q);
      }
    }
  }
  return DiagramAccess::canonical(d.presentation(), restrict(g, g.top, keep));
}

std::optional<std::array<Diagram, 3>> split_sum(Diagram const& d,
                                                std::size_t left,
                                                std::size_t middle) {
  if (left + middle > d.top().size()) {
    throw std::invalid_argument("split_sum: segments exceed the top word");
  }
  auto g = DiagramAccess::graph(d);
  std::vector<int> segment(g.label.size(), -1);
  for (std::size_t i = 0; i < g.top.size(); ++i) {
    segment[g.top[i]] = i < left ? 0 : (i < left + middle ? 1 : 2);
  }
  std::vector<int> cell_segment(g.cells.size());
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    int s = segment[g.cells[c].inputs.front()];
    for (auto e : g.cells[c].inputs) {
      if (segment[e] != s) {
        return std::nullopt;
      }
    }
    cell_segment[c] = s;
    for (auto e : g.cells[c].outputs) {
      segment[e] = s;
    }
  }
  std::array<std::vector<std::size_t>, 3> tops;
  for (std::size_t i = 0; i < g.top.size(); ++i) {
    tops[static_cast<std::size_t>(segment[g.top[i]])].push_back(g.top[i]);
  }
  auto part = [&](int s) {
    std::vector<bool> keep(g.cells.size());
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
      keep[c] = cell_segment[c] == s;
    }
    return DiagramAccess::canonical(
        d.presentation(), restrict(g, tops[static_cast<std::size_t>(s)], keep));
  };
  return std::array<Diagram, 3>{part(0), part(1), part(2)};
}

}  // namespace dgroup
