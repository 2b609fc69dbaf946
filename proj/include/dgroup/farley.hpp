#pragma once

// Balls of the Farley complex: reduced diagrams with a fixed top word,
// joined when they differ by one atom, with cubes spanned by thin
// extensions.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgroup/diagram.hpp"
#include "dgroup/freeness.hpp"
#include "dgroup/presentation.hpp"
#include "dgroup/verdict.hpp"

namespace dgroup {

// upper = lower o atom, where the atom acts on bottom(lower).
struct FarleyEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Cell atom;
};

// The cube spanned by base o P for P <= atom_1 + ... + atom_n; corners[mask]
// carries the atoms selected by mask.
struct FarleyCube {
  std::size_t base = 0;
  std::vector<Cell> atoms;  // pairwise disjoint, on bottom(base)
  std::vector<std::size_t> corners;
};

struct FarleyBall {
  Presentation presentation;
  Word base;
  std::size_t radius = 0;
  std::vector<Diagram> vertices;  // by cell count, vertices[0] == epsilon(base)
  std::vector<FarleyEdge> edges;
  std::vector<std::vector<FarleyCube>> cubes;  // cubes[n] for n >= 2
  std::unordered_map<Diagram, std::size_t, DiagramHash> index;

  std::optional<std::size_t> find(Diagram const& d) const;
  std::size_t cube_count(std::size_t dim) const;
};

// All reduced diagrams with top w and at most `radius` cells. Throws
// std::invalid_argument for an empty word.
FarleyBall build_ball(Presentation const& p, Word const& w, std::size_t radius);

// #reduce(a^-1 o b); throws std::invalid_argument if the tops differ.
std::size_t combinatorial_distance(Diagram const& a, Diagram const& b);

// Vertices a = d0, ..., dn = b of a shortest edge path.
std::vector<Diagram> geodesic_between(Diagram const& a, Diagram const& b);

// The unique vertex on geodesics between each pair. Throws
// InvariantViolation if the computed point fails the median equations.
Diagram median_diagram(Diagram const& a, Diagram const& b, Diagram const& c);

// Reduced minimal diagrams with top w and 1..max_cells cells.
std::vector<Diagram> enumerate_minimal_diagrams(Presentation const& p,
                                                Word const& w,
                                                std::size_t max_cells);

// A hyperplane given by its minimal diagram, split as
// stem o (epsilon(x) + pivot + epsilon(y)).
struct Hyperplane {
  Diagram minimal;
  Diagram stem;
  Cell pivot;  // the last cell, on bottom(stem)
  Word x;
  Word u;  // the pivot's top label
  Word y;
};

// Throws std::invalid_argument unless `minimal` is reduced and minimal.
Hyperplane hyperplane_of(Diagram const& minimal);

// The hyperplane dual to the edge [d, d o atom]; the atom must not cancel a
// cell of d.
Hyperplane hyperplane_dual_to(Diagram const& d, Cell const& atom);

enum class Side { minus, plus };

struct Halfspace {
  Hyperplane hyperplane;
  Side sign = Side::plus;
};

// plus side: the minimal diagram is a prefix of d.
bool halfspace_contains(Halfspace const& h, Diagram const& d);

// A ball vertex on the hyperplane's carrier, written as
// stem o (X + middle + Y) with middle = epsilon(u) or the pivot.
struct BoundaryPoint {
  std::size_t vertex = 0;
  Diagram left;   // X
  Diagram right;  // Y
};

struct HyperplaneBoundaries {
  std::vector<BoundaryPoint> minus;
  std::vector<BoundaryPoint> plus;
};

// Throws std::invalid_argument if the minimal diagram is outside the ball,
// InvariantViolation if a carrier vertex does not factor as expected.
HyperplaneBoundaries hyperplane_boundaries(Hyperplane const& h,
                                           FarleyBall const& ball);

struct StabilizerCertificate {
  std::string hypothesis;  // why no xi with x = x.u.xi exists
  std::optional<TrivialityCertificate> left;   // absent when x is empty
  std::optional<TrivialityCertificate> right;  // absent when y is empty
};

Verdict<StabilizerCertificate, std::string> stabilizer_is_trivial(
    Presentation const& p, Hyperplane const& h, Budget const& b);

}  // namespace dgroup
