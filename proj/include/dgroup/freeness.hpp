#pragma once

// Triviality, algebraic dimension and freeness of diagram groups D(P, w).
//
// A split w = w1 ... wn (modulo P) with every D(P, wi) non-trivial gives a
// copy of Z^n; conversely every Z^n arises this way. Together with the
// fact that a diagram group without Z^2 is free, deciding freeness reduces
// to certifying, for every split of every word in the class of w, that one
// side has trivial group.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgroup/diagram.hpp"
#include "dgroup/presentation.hpp"
#include "dgroup/squier.hpp"
#include "dgroup/verdict.hpp"

namespace dgroup {

// Two ways to show D(P, w) = {1}:
//  - component: the Squier component of w is finite, fully explored, and
//    every spanning-tree loop bounds (its diagram reduces to epsilon);
//  - rewriting: the relations usable on words over the letter closure of w,
//    oriented to decrease in shortlex order, form a complete rewriting
//    system whose critical-pair loops all reduce to epsilon. Those loops and
//    the squares generate every loop of the Squier complex, so all loops
//    bound.
struct TrivialityCertificate {
  enum class Kind { component, rewriting };
  Kind kind = Kind::component;

  // component
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t squares = 0;
  std::size_t loops_checked = 0;
  GroupPresentation simplified;

  // rewriting
  std::vector<Letter> alphabet;
  std::vector<std::pair<Word, Word>> rules;  // lhs -> rhs
  std::size_t critical_pairs = 0;
};

std::string describe(Presentation const& p, TrivialityCertificate const& c);

// Proved: a reduced spherical diagram != epsilon(w). Refuted: the group is
// trivial.
using NontrivialityVerdict = Verdict<Diagram, TrivialityCertificate>;

NontrivialityVerdict group_nontrivial(Presentation const& p, Word const& w,
                                      Budget const& b);

// The rewriting certificate alone; std::nullopt when it does not apply.
std::optional<TrivialityCertificate> rewriting_triviality(Presentation const& p,
                                                          Word const& w,
                                                          Budget const& b);

// Throws std::invalid_argument unless d is a reduced spherical diagram with
// base w other than epsilon(w).
void check_nontrivial_element(Diagram const& d, Word const& w);

struct SplitWitness {
  Word base;
  Word ambient;           // a word of the class of base
  Derivation derivation;  // base -> ambient
  std::vector<Word> factors;        // ambient = factors[0] ... factors[n-1]
  std::vector<Diagram> certificates;  // non-trivial element per factor
};

// Throws std::invalid_argument if any part of the witness fails to replay.
void check_split_witness(Presentation const& p, SplitWitness const& s);

// Per cut of a class member. Status per side: proved = non-trivial group,
// refuted = trivial group.
enum class SplitOutcome { cleared, both_nontrivial, undecided };

struct SplitCheck {
  std::size_t cut = 0;
  Status left = Status::unknown;
  Status right = Status::unknown;
  SplitOutcome outcome = SplitOutcome::undecided;
  std::optional<std::size_t> certificate;  // index of the trivial side's proof
};

struct MemberSplits {
  Word word;
  std::vector<SplitCheck> splits;
};

struct DimensionBound {
  std::size_t n = 1;
  std::optional<SplitWitness> witness;  // present iff n >= 2
  bool class_complete = false;
  std::vector<MemberSplits> members;
  std::vector<TrivialityCertificate> certificates;
  std::size_t splits = 0;
  std::size_t cleared = 0;
  std::size_t undecided = 0;
  Budget used{};
};

DimensionBound algebraic_dimension_lower_bound(Presentation const& p,
                                               Word const& w, Budget const& b);

struct Z2Witness {
  Diagram a;
  Diagram b;
  SplitWitness split;
};

// Throws std::invalid_argument unless the split has at least two factors
// and the resulting pair passes check_z2_witness.
Z2Witness build_z2_witness(Presentation const& p, SplitWitness const& s);

// Commutation, non-triviality of a, b, a b^-1 and a^2, all by reduction.
void check_z2_witness(Presentation const& p, Z2Witness const& z);

enum class Freeness { free, not_free, unknown };

std::string_view to_string(Freeness f) noexcept;

struct TruncationRow {
  std::size_t max_length = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t squares = 0;
  std::size_t b1 = 0;
  bool complete = false;
};

struct FreenessReport {
  Freeness verdict = Freeness::unknown;
  std::size_t dimension_lower_bound = 1;
  std::optional<std::size_t> rank;  // b1 of a complete finite component
  std::vector<TruncationRow> truncations;
  std::optional<Z2Witness> z2;
  DimensionBound dimension;
  std::vector<std::string> notes;
};

// Rows for max_word_length = |w|, |w| + 1, ... up to `rows` rows or the
// budget's length limit, stopping after the first complete one.
std::vector<TruncationRow> truncation_table(Presentation const& p,
                                            Word const& w, Budget const& b,
                                            std::size_t rows);

FreenessReport freeness_verdict(Presentation const& p, Word const& w,
                                Budget const& b);

}  // namespace dgroup
