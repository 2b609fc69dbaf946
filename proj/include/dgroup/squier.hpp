#pragma once

// Explored fragments of the Squier complex: words as vertices, single
// rewrites as edges, tuples of disjoint rewrites as cubes.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgroup/diagram.hpp"
#include "dgroup/presentation.hpp"
#include "dgroup/verdict.hpp"

namespace dgroup {

// Edges are stored in forward orientation: the source word carries the
// relation's left-hand side.
struct SquierEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  RewriteEdge rewrite;  // direction is always forward
};

struct Application {
  std::size_t offset = 0;
  std::size_t relation = 0;

  friend bool operator==(Application const&, Application const&) = default;
  friend auto operator<=>(Application const&, Application const&) = default;
};

// An n-cube: n pairwise disjoint forward applications on a common word.
// corners[mask] is the vertex reached by applying the applications whose bit
// is set in mask.
struct SquierCube {
  std::size_t base = 0;
  std::vector<Application> applications;  // left to right
  std::vector<std::size_t> corners;
};

struct SquierComponent {
  Presentation presentation;
  Word base;
  std::vector<Word> vertices;  // breadth-first order, vertices[0] == base
  std::vector<SquierEdge> edges;
  std::vector<std::vector<SquierCube>> cubes;  // cubes[n] for n >= 2
  std::vector<std::size_t> tree_edge;  // BFS discovery edge per vertex
  bool complete = false;
  Budget used{};

  std::optional<std::size_t> find(Word const& w) const;
  // The edge for a forward application at `offset` of vertex `source`.
  std::optional<std::size_t> find_edge(std::size_t source, std::size_t offset,
                                       std::size_t relation) const;
  std::size_t cube_count(std::size_t dim) const;
  std::vector<SquierCube> const& squares() const;

  std::unordered_map<Word, std::size_t, WordHash> index;
};

SquierComponent build_component(Presentation const& p, Word const& w,
                                Budget const& b);

// Alternating count of cubes of the explored fragment.
long euler_characteristic(SquierComponent const& c);

// dim H1 of the explored fragment with rational coefficients.
std::size_t first_betti_number(SquierComponent const& c);

// Generators are numbered from 1; a relator letter -k is the inverse of
// generator k.
struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<std::vector<int>> relators;

  friend bool operator==(GroupPresentation const&, GroupPresentation const&) = default;
};

std::string to_string(GroupPresentation const& g);

struct Pi1Presentation {
  GroupPresentation group;
  std::size_t base = 0;                 // vertex index of the base point
  std::vector<std::size_t> tree_parent;  // edge into each vertex, none for base
  std::vector<std::size_t> generator_edge;  // component edge of generator k+1
};

// Spanning-tree presentation from a BFS tree rooted at `base`. Throws
// std::invalid_argument if base is not a vertex.
Pi1Presentation pi1_presentation(SquierComponent const& c, Word const& base);

// Free and cyclic reduction plus elimination of generators that occur once
// in a relator, for at most b.max_words rounds.
GroupPresentation simplify_presentation(GroupPresentation g, Budget const& b);

// Rank of the abelianization (the Z-rank of generators mod relators).
std::size_t abelianized_rank(GroupPresentation const& g);

// Loop of the spanning tree closed by generator k (1-based) as a spherical
// diagram at the tree's base.
Diagram generator_loop(SquierComponent const& c, Pi1Presentation const& pi,
                       std::size_t generator);

// Hyperplane classes of edges: parallel edges of squares are identified.
// Returns the class id of every edge.
std::vector<std::size_t> squier_hyperplanes(SquierComponent const& c);

struct ContextEqualities {
  Derivation left;
  Derivation right;
};

// Edges in the same hyperplane: equal labels and contexts equal modulo p.
Verdict<ContextEqualities, std::string> same_hyperplane_squier(
    Presentation const& p, RewriteEdge const& e1, RewriteEdge const& e2,
    Budget const& b);

// An edge (a, p -> q, b.p.c) with a = a.p.b and c = b.p.c modulo the
// presentation; `b` may be empty.
struct SelfIntersection {
  RewriteEdge edge;
  Word middle;  // b
  Word tail;    // c
  Derivation left_equation;   // a -> a.p.b
  Derivation right_equation;  // c -> b.p.c
};

Verdict<SelfIntersection, std::string> self_intersection_search(
    Presentation const& p, SquierComponent const& c, Budget const& b);

// Replays both derivations of a witness. Throws std::invalid_argument if the
// witness is malformed.
void check_self_intersection(Presentation const& p, SelfIntersection const& s);

struct SpecialnessTriple {
  Word a;
  Word b;
  Word p;
  Derivation a_equation;  // a -> a.p
  Derivation b_equation;  // b -> p.b
};

// Only proved or unknown; the criterion cannot show non-specialness.
struct SpecialnessVerdict {
  Status status = Status::unknown;
  std::size_t class_size = 0;
  std::size_t splits_checked = 0;
  std::optional<SpecialnessTriple> violation;
  Budget used{};
  std::string note;
};

SpecialnessVerdict specialness_criterion(Presentation const& p, Word const& w,
                                         Budget const& b);

struct TwoSidedness {
  std::size_t hyperplanes = 0;
  std::size_t squares_checked = 0;
};

// Proved on every input; throws InvariantViolation if an edge is found
// parallel to its own reverse.
Verdict<TwoSidedness, std::string> two_sidedness_check(SquierComponent const& c);

}  // namespace dgroup
