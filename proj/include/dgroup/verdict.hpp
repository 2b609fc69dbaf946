#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace dgroup {

// Search limits. Equality modulo a presentation is undecidable in general,
// so every search in this library is bounded by one of these.
struct Budget {
  std::size_t max_word_length = 24;
  std::size_t max_words = 20000;
  std::size_t max_cells = 8;
  std::size_t max_depth = 64;

  // Throws std::invalid_argument unless every field is positive.
  void validate() const;

  friend bool operator==(Budget const&, Budget const&) = default;
};

enum class Status { proved, refuted, unknown };

std::string_view to_string(Status s) noexcept;

// Tri-state result. A proved or refuted verdict always carries the matching
// certificate; unknown verdicts may carry a note describing the evidence.
template <typename Proof, typename Refutation>
struct Verdict {
  Status status = Status::unknown;
  std::variant<std::monostate, Proof, Refutation> certificate;
  Budget used{};
  std::string note;

  static Verdict proved(Proof proof, Budget used = {}, std::string note = {}) {
    Verdict v;
    v.status = Status::proved;
    v.certificate.template emplace<1>(std::move(proof));
    v.used = used;
    v.note = std::move(note);
    return v;
  }

  static Verdict refuted(Refutation r, Budget used = {}, std::string note = {}) {
    Verdict v;
    v.status = Status::refuted;
    v.certificate.template emplace<2>(std::move(r));
    v.used = used;
    v.note = std::move(note);
    return v;
  }

  static Verdict unknown(Budget used = {}, std::string note = {}) {
    Verdict v;
    v.used = used;
    v.note = std::move(note);
    return v;
  }

  Proof const* proof() const noexcept {
    return certificate.index() == 1 ? &std::get<1>(certificate) : nullptr;
  }
  Refutation const* refutation() const noexcept {
    return certificate.index() == 2 ? &std::get<2>(certificate) : nullptr;
  }
};

// Raised when a computed object contradicts a structural theorem the
// library relies on (for example a one-sided hyperplane).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dgroup
