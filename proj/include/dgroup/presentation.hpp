#pragma once

// Semigroup presentations, words, one-step rewrites and bounded searches for
// equality modulo a presentation.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dgroup/verdict.hpp"

namespace dgroup {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept;
};

using WordSet = std::unordered_set<Word, WordHash>;

Word concat(Word const& a, Word const& b);
Word concat(Word const& a, Word const& b, Word const& c);
bool starts_with(Word const& w, Word const& prefix);
Word subword(Word const& w, std::size_t pos, std::size_t len);

// Shortlex order: shorter first, then lexicographic by letter id.
bool shortlex_less(Word const& a, Word const& b);

enum class Direction : std::uint8_t { forward, backward };

constexpr Direction flip(Direction d) noexcept {
  return d == Direction::forward ? Direction::backward : Direction::forward;
}

struct Relation {
  Word lhs;
  Word rhs;
  std::size_t index = 0;

  Word const& from(Direction d) const noexcept {
    return d == Direction::forward ? lhs : rhs;
  }
  Word const& to(Direction d) const noexcept {
    return d == Direction::forward ? rhs : lhs;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Immutable handle; copies share the underlying alphabet and relations.
class Presentation {
 public:
  // Throws std::invalid_argument on an empty alphabet, unknown letters, a
  // relation u = u, or a repeated (possibly symmetrized) relation pair.
  Presentation(std::vector<std::string> letters,
               std::vector<std::pair<Word, Word>> relations);

  std::size_t alphabet_size() const noexcept;
  std::string const& letter_name(Letter x) const;
  std::optional<Letter> find_letter(std::string_view name) const;

  std::vector<Relation> const& relations() const noexcept;
  Relation const& relation(std::size_t i) const;

  // Letter ids are juxtaposed when every id is one character, otherwise
  // joined with '.'.
  std::string format(Word const& w) const;
  Word parse_word(std::string_view text) const;

  // Text form accepted by parse_presentation.
  std::string to_text() const;

  bool operator==(Presentation const& other) const noexcept;

 private:
  struct Impl;
  std::shared_ptr<Impl const> impl_;
};

// Format: `letters: <id> ...`, then `rel: <word> = <word>` per relation,
// `#` starts a comment. When the letters line is absent the alphabet is the
// set of single-character letters used by the relations, in order of first
// use.
Presentation parse_presentation(std::string_view text);
Presentation parse_presentation(std::istream& in);

// A single relation application (left, from -> to, right).
struct RewriteEdge {
  Word left;
  std::size_t relation = 0;
  Direction direction = Direction::forward;
  Word right;

  std::size_t offset() const noexcept { return left.size(); }
  Word source(Presentation const& p) const;
  Word target(Presentation const& p) const;
  RewriteEdge reversed() const;

  friend bool operator==(RewriteEdge const&, RewriteEdge const&) = default;
  friend auto operator<=>(RewriteEdge const&, RewriteEdge const&) = default;
};

using Derivation = std::vector<RewriteEdge>;

std::string to_string(Presentation const& p, RewriteEdge const& e);

// All decompositions w = a.u.b with u a relation side, ordered by
// (position, relation index, direction).
std::vector<RewriteEdge> one_step_rewrites(Presentation const& p, Word const& w);

// Applies each edge in turn, checking that its source matches the current
// word. Throws std::invalid_argument on mismatch.
Word replay(Presentation const& p, Word const& start, Derivation const& steps);

struct WordClass {
  std::vector<Word> words;  // breadth-first discovery order
  bool complete = false;
  Budget used;
};

WordClass enumerate_word_class(Presentation const& p, Word const& w,
                               Budget const& b);

// A sound invariant distinguishing two words modulo the presentation, if one
// of the built-in invariants applies (first letter, last letter, letter
// counts, letter closure).
std::optional<std::string> separating_invariant(Presentation const& p,
                                                Word const& w1, Word const& w2);

// Over-approximation of the letters occurring in words of [w]: closure of
// letters(w) under adding the letters of a relation side whenever the other
// side only uses letters already present.
std::vector<bool> letter_closure(Presentation const& p, Word const& w);

struct EqualityRefutation {
  std::vector<Word> closed_class;  // complete [w1], when refuted by enumeration
  std::string invariant;           // non-empty when refuted by an invariant
};

using EqualityVerdict = Verdict<Derivation, EqualityRefutation>;

EqualityVerdict words_equal_mod_p(Presentation const& p, Word const& w1,
                                  Word const& w2, Budget const& b);

}  // namespace dgroup
