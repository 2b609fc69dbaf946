#include "dgroup/presentation.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>

namespace dgroup {

void Budget::validate() const {
  if (max_word_length == 0 || max_words == 0 || max_cells == 0
      || max_depth == 0) {
    throw std::invalid_argument("budget limits must be strictly positive");
  }
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::proved:
      return "proved";
    case Status::refuted:
      return "refuted";
    case Status::unknown:
      return "unknown";
  }
  return "unknown";
}

std::size_t WordHash::operator()(Word const& w) const noexcept {
  // FNV-1a over the letter ids
  std::size_t h = 1469598103934665603ULL;
  for (Letter x : w) {
    h ^= x + 0x9e3779b9U;
    h *= 1099511628211ULL;
  }
  return h ^ w.size();
}

Word concat(Word const& a, Word const& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word concat(Word const& a, Word const& b, Word const& c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool starts_with(Word const& w, Word const& prefix) {
  return prefix.size() <= w.size()
         && std::equal(prefix.begin(), prefix.end(), w.begin());
}

Word subword(Word const& w, std::size_t pos, std::size_t len) {
  if (pos > w.size() || len > w.size() - pos) {
    throw std::out_of_range("subword out of range");
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(pos),
              w.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

bool shortlex_less(Word const& a, Word const& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a < b;
}

ParseError::ParseError(std::string const& what, std::size_t line,
                       std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column "
                         + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

////////////////////////////////////////////////////////////////////////////////
// Presentation
////////////////////////////////////////////////////////////////////////////////

struct Presentation::Impl {
  std::vector<std::string> letters;
  std::map<std::string, Letter, std::less<>> lookup;
  std::vector<Relation> relations;
  bool single_char = true;
};

Presentation::Presentation(std::vector<std::string> letters,
                           std::vector<std::pair<Word, Word>> relations) {
  auto impl = std::make_shared<Impl>();
  if (letters.empty()) {
    throw std::invalid_argument("alphabet is empty");
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    auto const& name = letters[i];
    if (name.empty()) {
      throw std::invalid_argument("empty letter id");
    }
    if (!impl->lookup.emplace(name, static_cast<Letter>(i)).second) {
      throw std::invalid_argument("letter '" + name + "' declared twice");
    }
    impl->single_char = impl->single_char && name.size() == 1;
  }
  impl->letters = std::move(letters);

  std::map<std::pair<Word, Word>, std::size_t> seen;
  for (auto& [lhs, rhs] : relations) {
    if (lhs.empty() || rhs.empty()) {
      throw std::invalid_argument("relation sides must be non-empty");
    }
    for (Word const* side : {&lhs, &rhs}) {
      for (Letter x : *side) {
        if (x >= impl->letters.size()) {
          throw std::invalid_argument("relation uses an undeclared letter");
        }
      }
    }
    if (lhs == rhs) {
      throw std::invalid_argument("relation u = u is not allowed");
    }
    auto key = std::minmax(lhs, rhs);
    if (!seen.emplace(std::make_pair(key.first, key.second), 0).second) {
      throw std::invalid_argument("duplicate relation pair");
    }
    Relation r;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.index = impl->relations.size();
    impl->relations.push_back(std::move(r));
  }
  impl_ = std::move(impl);
}

std::size_t Presentation::alphabet_size() const noexcept {
  return impl_->letters.size();
}

std::string const& Presentation::letter_name(Letter x) const {
  return impl_->letters.at(x);
}

std::optional<Letter> Presentation::find_letter(std::string_view name) const {
  auto it = impl_->lookup.find(name);
  if (it == impl_->lookup.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<Relation> const& Presentation::relations() const noexcept {
  return impl_->relations;
}

Relation const& Presentation::relation(std::size_t i) const {
  return impl_->relations.at(i);
}

std::string Presentation::format(Word const& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!impl_->single_char && i > 0) {
      out += '.';
    }
    out += impl_->letters.at(w[i]);
  }
  return out;
}

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  auto letter = [&](std::string_view name) {
    auto x = find_letter(name);
    if (!x) {
      throw std::invalid_argument("letter '" + std::string(name)
                                  + "' is not declared");
    }
    w.push_back(*x);
  };
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('.', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto token = text.substr(start, end - start);
      if (token.empty()) {
        throw std::invalid_argument("empty letter in '" + std::string(text)
                                    + "'");
      }
      letter(token);
      start = end + 1;
    }
    return w;
  }
  if (!impl_->single_char && find_letter(text)) {
    letter(text);
    return w;
  }
  for (char ch : text) {
    letter(std::string_view(&ch, 1));
  }
  return w;
}

std::string Presentation::to_text() const {
  std::string out = "letters:";
  for (auto const& name : impl_->letters) {
    out += ' ';
    out += name;
  }
  out += '\n';
  for (auto const& r : impl_->relations) {
    out += "rel: " + format(r.lhs) + " = " + format(r.rhs) + '\n';
  }
  return out;
}

bool Presentation::operator==(Presentation const& other) const noexcept {
  return impl_ == other.impl_
         || (impl_->letters == other.impl_->letters
             && std::equal(impl_->relations.begin(), impl_->relations.end(),
                           other.impl_->relations.begin(),
                           other.impl_->relations.end(),
                           [](Relation const& a, Relation const& b) {
                             return a.lhs == b.lhs && a.rhs == b.rhs;
                           }));
}

////////////////////////////////////////////////////////////////////////////////
// Parsing
////////////////////////////////////////////////////////////////////////////////

namespace {

  std::string_view trim(std::string_view s) {
    auto const ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
      return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  }

  struct RawRelation {
    std::string lhs;
    std::string rhs;
    std::size_t line;
    std::size_t lhs_col;
    std::size_t rhs_col;
  };

  bool valid_id(std::string_view id) {
    return !id.empty()
           && id.find_first_of(".=#: \t") == std::string_view::npos;
  }

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::optional<std::vector<std::string>> letters;
  std::vector<RawRelation> raw;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    auto const line_start = pos;
    pos = nl + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto body = trim(line);
    if (body.empty()) {
      continue;
    }
    auto column_of = [&](std::string_view sub) {
      return static_cast<std::size_t>(sub.data() - text.data()) - line_start
             + 1;
    };
    auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'letters:' or 'rel:'", line_no,
                       column_of(body));
    }
    auto keyword = trim(body.substr(0, colon));
    auto rest = body.substr(colon + 1);
    if (keyword == "letters") {
      if (letters) {
        throw ParseError("second 'letters:' line", line_no, column_of(body));
      }
      letters.emplace();
      std::size_t i = 0;
      while (i < rest.size()) {
        while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t'
                                   || rest[i] == '\r')) {
          ++i;
        }
        std::size_t j = i;
        while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t'
               && rest[j] != '\r') {
          ++j;
        }
        if (j > i) {
          auto id = rest.substr(i, j - i);
          if (!valid_id(id)) {
            throw ParseError("invalid letter id '" + std::string(id) + "'",
                             line_no, column_of(id));
          }
          if (std::find(letters->begin(), letters->end(), id)
              != letters->end()) {
            throw ParseError("letter '" + std::string(id) + "' declared twice",
                             line_no, column_of(id));
          }
          letters->emplace_back(id);
        }
        i = j;
      }
      if (letters->empty()) {
        throw ParseError("empty alphabet", line_no, column_of(body));
      }
    } else if (keyword == "rel") {
      auto eq = rest.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("expected '<word> = <word>'", line_no,
                         column_of(rest.empty() ? body : rest));
      }
      if (rest.find('=', eq + 1) != std::string_view::npos) {
        throw ParseError("more than one '=' in relation", line_no,
                         column_of(rest.substr(rest.find('=', eq + 1))));
      }
      auto lhs = trim(rest.substr(0, eq));
      auto rhs = trim(rest.substr(eq + 1));
      if (lhs.empty() || rhs.empty()) {
        throw ParseError("relation sides must be non-empty", line_no,
                         column_of(rest.substr(eq)));
      }
      raw.push_back({std::string(lhs), std::string(rhs), line_no,
                     column_of(lhs), column_of(rhs)});
    } else {
      throw ParseError("unknown keyword '" + std::string(keyword) + "'",
                       line_no, column_of(body));
    }
    if (nl == text.size()) {
      break;
    }
  }

  if (!letters) {
    letters.emplace();
    for (auto const& r : raw) {
      for (auto const* side : {&r.lhs, &r.rhs}) {
        for (char ch : *side) {
          std::string id(1, ch);
          if (!valid_id(id)) {
            throw ParseError("invalid letter '" + id + "'", r.line, r.lhs_col);
          }
          if (std::find(letters->begin(), letters->end(), id)
              == letters->end()) {
            letters->push_back(id);
          }
        }
      }
    }
    if (letters->empty()) {
      throw ParseError("no letters declared", line_no, 1);
    }
  }

  // A throwaway presentation gives us the word parser for this alphabet.
  Presentation alphabet_only(*letters, {});
  std::vector<std::pair<Word, Word>> relations;
  std::map<std::pair<Word, Word>, std::size_t> seen;
  for (auto const& r : raw) {
    Word lhs;
    Word rhs;
    try {
      lhs = alphabet_only.parse_word(r.lhs);
    } catch (std::invalid_argument const& e) {
      throw ParseError(e.what(), r.line, r.lhs_col);
    }
    try {
      rhs = alphabet_only.parse_word(r.rhs);
    } catch (std::invalid_argument const& e) {
      throw ParseError(e.what(), r.line, r.rhs_col);
    }
    if (lhs == rhs) {
      throw ParseError("relation u = u is not allowed", r.line, r.lhs_col);
    }
    auto key = std::minmax(lhs, rhs);
    auto [it, inserted]
        = seen.emplace(std::make_pair(key.first, key.second), r.line);
    if (!inserted) {
      throw ParseError("duplicate relation pair (first given on line "
                           + std::to_string(it->second) + ")",
                       r.line, r.lhs_col);
    }
    relations.emplace_back(std::move(lhs), std::move(rhs));
  }
  return Presentation(std::move(*letters), std::move(relations));
}

Presentation parse_presentation(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_presentation(text);
}

////////////////////////////////////////////////////////////////////////////////
// Rewrites
////////////////////////////////////////////////////////////////////////////////

Word RewriteEdge::source(Presentation const& p) const {
  return concat(left, p.relation(relation).from(direction), right);
}

Word RewriteEdge::target(Presentation const& p) const {
  return concat(left, p.relation(relation).to(direction), right);
}

RewriteEdge RewriteEdge::reversed() const {
  return RewriteEdge{left, relation, flip(direction), right};
}

std::string to_string(Presentation const& p, RewriteEdge const& e) {
  auto const& r = p.relation(e.relation);
  return "(" + p.format(e.left) + ", " + p.format(r.from(e.direction)) + " -> "
         + p.format(r.to(e.direction)) + ", " + p.format(e.right) + ")";
}

std::vector<RewriteEdge> one_step_rewrites(Presentation const& p,
                                           Word const& w) {
  std::vector<RewriteEdge> out;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (auto const& r : p.relations()) {
      for (Direction d : {Direction::forward, Direction::backward}) {
        Word const& side = r.from(d);
        if (side.size() > w.size() - pos) {
          continue;
        }
        if (!std::equal(side.begin(), side.end(),
                        w.begin() + static_cast<std::ptrdiff_t>(pos))) {
          continue;
        }
        out.push_back(RewriteEdge{
            subword(w, 0, pos), r.index, d,
            subword(w, pos + side.size(), w.size() - pos - side.size())});
      }
    }
  }
  return out;
}

Word replay(Presentation const& p, Word const& start,
            Derivation const& steps) {
  Word current = start;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].source(p) != current) {
      throw std::invalid_argument("derivation step "
                                  + std::to_string(i)
                                  + " does not apply to the current word");
    }
    current = steps[i].target(p);
  }
  return current;
}

////////////////////////////////////////////////////////////////////////////////
// Bounded class enumeration
////////////////////////////////////////////////////////////////////////////////

namespace {

  // Breadth-first closure with optional parent tracking; stops early when
  // `stop` is reached.
  struct ClassSearch {
    std::vector<Word> words;
    std::unordered_map<Word, std::size_t, WordHash> index;
    std::vector<std::size_t> parent;
    std::vector<RewriteEdge> via;
    bool complete = true;
    bool found = false;
    Budget used{0, 0, 0, 0};
  };

  ClassSearch search_class(Presentation const& p, Word const& w,
                           Budget const& b, Word const* stop) {
    b.validate();
    ClassSearch s;
    auto add = [&](Word word, std::size_t parent, RewriteEdge via) {
      s.used.max_word_length = std::max(s.used.max_word_length, word.size());
      s.index.emplace(word, s.words.size());
      s.words.push_back(std::move(word));
      s.parent.push_back(parent);
      s.via.push_back(std::move(via));
    };
    if (w.size() > b.max_word_length) {
      s.complete = false;
      return s;
    }
    add(w, 0, {});
    std::vector<std::size_t> depth{0};
    if (stop != nullptr && w == *stop) {
      s.found = true;
      return s;
    }
    for (std::size_t head = 0; head < s.words.size(); ++head) {
      for (auto& e : one_step_rewrites(p, s.words[head])) {
        Word next = e.target(p);
        if (s.index.count(next) != 0) {
          continue;
        }
        if (next.size() > b.max_word_length || depth[head] >= b.max_depth
            || s.words.size() >= b.max_words) {
          s.complete = false;
          continue;
        }
        bool const hit = stop != nullptr && next == *stop;
        add(std::move(next), head, std::move(e));
        depth.push_back(depth[head] + 1);
        s.used.max_depth = std::max(s.used.max_depth, depth.back());
        if (hit) {
          s.found = true;
          s.used.max_words = s.words.size();
          return s;
        }
      }
      if (!s.complete && s.words.size() >= b.max_words) {
        break;
      }
    }
    s.used.max_words = s.words.size();
    return s;
  }

}  // namespace

WordClass enumerate_word_class(Presentation const& p, Word const& w,
                               Budget const& b) {
  if (w.empty()) {
    throw std::invalid_argument("base word must be non-empty");
  }
  auto s = search_class(p, w, b, nullptr);
  return WordClass{std::move(s.words), s.complete, s.used};
}

std::vector<bool> letter_closure(Presentation const& p, Word const& w) {
  std::vector<bool> in(p.alphabet_size(), false);
  for (Letter x : w) {
    in[x] = true;
  }
  auto covered = [&](Word const& side) {
    return std::all_of(side.begin(), side.end(),
                       [&](Letter x) { return in[x]; });
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const& r : p.relations()) {
      for (Direction d : {Direction::forward, Direction::backward}) {
        if (covered(r.from(d)) && !covered(r.to(d))) {
          for (Letter x : r.to(d)) {
            in[x] = true;
          }
          changed = true;
        }
      }
    }
  }
  return in;
}

std::optional<std::string> separating_invariant(Presentation const& p,
                                                Word const& w1,
                                                Word const& w2) {
  auto const& rels = p.relations();
  bool first = true;
  bool last = true;
  bool counts = true;
  bool length = true;
  for (auto const& r : rels) {
    first = first && r.lhs.front() == r.rhs.front();
    last = last && r.lhs.back() == r.rhs.back();
    length = length && r.lhs.size() == r.rhs.size();
    Word a = r.lhs;
    Word b = r.rhs;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    counts = counts && a == b;
  }
  if (first && w1.front() != w2.front()) {
    return std::string("first-letter");
  }
  if (last && w1.back() != w2.back()) {
    return std::string("last-letter");
  }
  if (length && w1.size() != w2.size()) {
    return std::string("length");
  }
  if (counts) {
    Word a = w1;
    Word b = w2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      return std::string("letter-counts");
    }
  }
  auto closure = letter_closure(p, w1);
  for (Letter x : w2) {
    if (!closure[x]) {
      return std::string("letter-closure");
    }
  }
  return std::nullopt;
}

EqualityVerdict words_equal_mod_p(Presentation const& p, Word const& w1,
                                  Word const& w2, Budget const& b) {
  if (w1.empty() || w2.empty()) {
    throw std::invalid_argument("words must be non-empty");
  }
  if (w1 == w2) {
    return EqualityVerdict::proved({}, Budget{1, 1, 1, 1});
  }
  if (auto inv = separating_invariant(p, w1, w2)) {
    EqualityRefutation r;
    r.invariant = *inv;
    return EqualityVerdict::refuted(std::move(r), Budget{1, 1, 1, 1},
                                    "separated by the " + *inv + " invariant");
  }
  auto s = search_class(p, w1, b, &w2);
  if (s.found) {
    Derivation d;
    for (std::size_t i = s.words.size() - 1; i != 0; i = s.parent[i]) {
      d.push_back(s.via[i]);
    }
    std::reverse(d.begin(), d.end());
    return EqualityVerdict::proved(std::move(d), s.used);
  }
  if (s.complete) {
    EqualityRefutation r;
    r.closed_class = std::move(s.words);
    return EqualityVerdict::refuted(std::move(r), s.used,
                                    "class of the first word is complete");
  }
  return EqualityVerdict::unknown(s.used, "budget exhausted");
}

}  // namespace dgroup
