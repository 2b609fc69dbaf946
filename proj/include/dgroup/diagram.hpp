#pragma once

// Semigroup diagrams over a presentation.
//
// A diagram is stored in a canonical layered form: each layer is a set of
// pairwise disjoint relation applications on the word reached by the previous
// layers, and every cell sits in the earliest layer its dependencies allow.
// Two derivations that differ only by commuting independent steps therefore
// produce the same encoding, so diagram equality is encoding equality.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dgroup/presentation.hpp"

namespace dgroup {

// One relation application at `offset` of the word it acts on.
struct Cell {
  std::size_t offset = 0;
  std::size_t relation = 0;
  Direction direction = Direction::forward;

  friend bool operator==(Cell const&, Cell const&) = default;
  friend auto operator<=>(Cell const&, Cell const&) = default;
};

// Cells of one layer, by increasing offset into the layer's top word.
using Layer = std::vector<Cell>;

// A cell in context: top = left . from-side . right.
struct Atom {
  Word left;
  std::size_t relation = 0;
  Direction direction = Direction::forward;
  Word right;
};

class Diagram {
 public:
  // Builds the diagram of a derivation. Each step's offset refers to the
  // word produced by the previous steps. Throws std::invalid_argument if a
  // step's from-side does not occur at its offset.
  Diagram(Presentation p, Word top, std::vector<Cell> const& steps);

  // The diagram without cells; `w` may be empty here (the neutral element
  // for sums).
  static Diagram identity(Presentation p, Word w);

  Presentation const& presentation() const noexcept { return p_; }
  Word const& top() const noexcept { return top_; }
  Word const& bottom() const noexcept { return bottom_; }
  std::vector<Layer> const& layers() const noexcept { return layers_; }
  std::size_t cell_count() const noexcept { return cells_; }
  bool is_trivial() const noexcept { return cells_ == 0; }
  bool is_spherical() const noexcept { return top_ == bottom_; }

  // The canonical layers flattened left to right into a derivation.
  std::vector<Cell> steps() const;
  Derivation derivation() const;

  std::size_t hash() const noexcept;

  friend bool operator==(Diagram const& a, Diagram const& b) noexcept {
    return a.top_ == b.top_ && a.layers_ == b.layers_;
  }

 private:
  Diagram(Presentation p, Word top, Word bottom, std::vector<Layer> layers,
          std::size_t cells);
  friend struct DiagramAccess;

  Presentation p_;
  Word top_;
  Word bottom_;
  std::vector<Layer> layers_;
  std::size_t cells_ = 0;
};

struct DiagramHash {
  std::size_t operator()(Diagram const& d) const noexcept { return d.hash(); }
};

std::string to_string(Diagram const& d);

// epsilon(w); throws std::invalid_argument when w is empty.
Diagram trivial_diagram(Presentation const& p, Word const& w);

Diagram atom_diagram(Presentation const& p, Atom const& a);
// Throws std::invalid_argument if the relation side does not occur at
// `offset` of `top`.
Diagram atom_diagram(Presentation const& p, Word const& top,
                     std::size_t offset, std::size_t relation, Direction dir);
Diagram atom_diagram(Presentation const& p, RewriteEdge const& e);

// The diagram of a derivation given as rewrite edges starting at `top`.
Diagram derivation_diagram(Presentation const& p, Word const& top,
                           Derivation const& steps);

// d1 followed by d2; requires bottom(d1) == top(d2). No reduction.
Diagram concatenate(Diagram const& d1, Diagram const& d2);

// d1 placed to the left of d2.
Diagram sum_diagrams(Diagram const& d1, Diagram const& d2);

// Mirror image: top and bottom swap, every cell changes direction.
Diagram invert(Diagram const& d);

// Unique reduced form (all dipoles removed).
Diagram reduce(Diagram const& d);
bool is_reduced(Diagram const& d);

// reduce(concatenate(d1, d2)) for reduced spherical diagrams with equal base.
Diagram group_product(Diagram const& d1, Diagram const& d2);

// d1 <= d2 in the prefix order; both reduced with the same top.
bool is_prefix(Diagram const& d1, Diagram const& d2);

struct ThinSplit {
  Diagram stem;
  Diagram suffix;  // thin, top(suffix) == bottom(stem)
};

// d == stem o suffix with suffix the largest thin suffix (all cells with no
// cell below them). Throws std::invalid_argument for a trivial diagram.
ThinSplit maximal_thin_suffix(Diagram const& d);

// True iff the maximal thin suffix has exactly one cell.
bool is_minimal(Diagram const& d);

// Cells of the first layer, as atoms on top(d).
Layer first_atoms(Diagram const& d);

// Atoms on bottom(d) that cancel one of d's last cells, i.e. the cells of
// invert(suffix) for the maximal thin suffix.
Layer cancelling_atoms(Diagram const& d);

// The smallest prefix of d containing the given step of d.steps().
Diagram minimal_prefix_containing(Diagram const& d, std::size_t step);

// Writes d as X + M + Y with top(X), top(M), top(Y) the segments of top(d)
// of lengths left, middle and the rest; std::nullopt if some cell straddles
// two segments.
std::optional<std::array<Diagram, 3>> split_sum(Diagram const& d,
                                                std::size_t left,
                                                std::size_t middle);

namespace detail {
  // Dipole elimination where `pick(n)` chooses which of the n currently
  // available dipoles to remove next. reduce() always picks 0.
  Diagram reduce_with(Diagram const& d,
                      std::function<std::size_t(std::size_t)> const& pick);
  std::size_t dipole_count(Diagram const& d);
}  // namespace detail

}  // namespace dgroup
