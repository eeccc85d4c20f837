#include "cqg/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"

namespace cqg {

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> l = a.letters_;
  l.insert(l.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(l));
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const auto& l = letters_[i];
    if (i) s += ';';
    if (l.factor) s += std::to_string(l.factor) + ':';
    s += std::to_string(l.row) + ',' + std::to_string(l.col);
    if (l.starred) s += '*';
  }
  return s;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const auto& l : w.letters()) {
    const std::size_t v = (std::size_t(l.factor) << 24) | (std::size_t(l.row) << 16) |
                          (std::size_t(l.col) << 8) | (l.starred ? 1 : 0);
    h = (h ^ v) * 1099511628211ull;
  }
  return h;
}

Letter make_letter(const GroupSpec& group, std::uint32_t factor, std::uint32_t row,
                   std::uint32_t col, bool starred) {
  if (group.is_free_product() && factor == 0)
    throw ArgumentError("letter of a free product needs a factor tag");
  if (!group.is_free_product() && factor != 0)
    throw ArgumentError("factor tag on a letter of non-free-product group " + group.name());
  const GroupSpec& g = group.factor(factor);
  if (row < 1 || row > g.n() || col < 1 || col > g.n()) {
    throw ArgumentError("generator index (" + std::to_string(row) + "," + std::to_string(col) +
                        ") out of range for " + g.name());
  }
  Letter l;
  l.factor = static_cast<std::uint8_t>(factor);
  l.row = static_cast<std::uint8_t>(row);
  l.col = static_cast<std::uint8_t>(col);
  l.self_adjoint = g.self_adjoint_entries();
  l.starred = starred && !l.self_adjoint;
  return l;
}

Word make_word(const GroupSpec& group, std::vector<Letter> letters) {
  for (auto& l : letters) l = make_letter(group, l.factor, l.row, l.col, l.starred);
  return Word(std::move(letters));
}

namespace {

unsigned parse_uint(std::string_view s, std::string_view whole) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad integer '" + std::string(s) + "' in word '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Word parse_word(std::string_view text, const GroupSpec& group) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::vector<Letter> letters;
  if (s.empty()) return Word{};
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string_view tok(s.data() + start, end - start);
    if (tok.empty()) throw ParseError("empty letter in word '" + s + "'");
    bool starred = false;
    if (tok.back() == '*') {
      starred = true;
      tok.remove_suffix(1);
    }
    unsigned factor = 0;
    if (auto colon = tok.find(':'); colon != std::string_view::npos) {
      factor = parse_uint(tok.substr(0, colon), s);
      tok = tok.substr(colon + 1);
    }
    const auto comma = tok.find(',');
    if (comma == std::string_view::npos) throw ParseError("letter without ',' in word '" + s + "'");
    const unsigned row = parse_uint(tok.substr(0, comma), s);
    const unsigned col = parse_uint(tok.substr(comma + 1), s);
    try {
      letters.push_back(make_letter(group, factor, row, col, starred));
    } catch (const ParseError&) {
      throw;
    } catch (const ArgumentError& e) {
      throw ParseError(e.what());
    }
    start = end + 1;
  }
  return Word(std::move(letters));
}

Word adjoint(const Word& w) {
  std::vector<Letter> l(w.letters().rbegin(), w.letters().rend());
  for (auto& x : l) x.starred = !x.starred && !x.self_adjoint;
  return Word(std::move(l));
}

Word antipode(const Word& w) {
  std::vector<Letter> l(w.letters().rbegin(), w.letters().rend());
  for (auto& x : l) {
    std::swap(x.row, x.col);
    x.starred = !x.starred && !x.self_adjoint;
  }
  return Word(std::move(l));
}

int counit(const Word& w) {
  for (const auto& l : w.letters())
    if (l.row != l.col) return 0;
  return 1;
}

std::uint64_t coproduct_size(const Word& w, const GroupSpec& group) {
  if (w.degree() > caps().max_word_degree) {
    throw ResourceError("coproduct of a degree-" + std::to_string(w.degree()) +
                        " word exceeds the degree cap " +
                        std::to_string(caps().max_word_degree));
  }
  std::uint64_t count = 1;
  for (const auto& l : w.letters()) {
    count *= group.factor(l.factor).n();
    if (count > caps().max_coproduct_pairs)
      throw ResourceError("coproduct expansion exceeds " +
                          std::to_string(caps().max_coproduct_pairs) + " pairs");
  }
  return count;
}

void for_each_coproduct_term(const Word& w, const GroupSpec& group,
                             const std::function<void(const Word&, const Word&)>& fn) {
  coproduct_size(w, group);
  const std::size_t d = w.degree();
  std::vector<std::uint8_t> dims(d);
  for (std::size_t t = 0; t < d; ++t)
    dims[t] = static_cast<std::uint8_t>(group.factor(w[t].factor).n());
  std::vector<Letter> left = w.letters();
  std::vector<Letter> right = w.letters();
  std::vector<std::uint8_t> k(d, 1);
  for (std::size_t t = 0; t < d; ++t) {
    left[t].col = 1;
    right[t].row = 1;
  }
  while (true) {
    fn(Word(left), Word(right));
    std::size_t t = d;
    while (t > 0) {
      --t;
      if (k[t] < dims[t]) {
        ++k[t];
        left[t].col = right[t].row = k[t];
        break;
      }
      k[t] = 1;
      left[t].col = right[t].row = 1;
      if (t == 0) return;
    }
    if (d == 0) return;
  }
}

std::vector<std::pair<Word, Word>> coproduct_expand(const Word& w, const GroupSpec& group) {
  std::vector<std::pair<Word, Word>> out;
  out.reserve(coproduct_size(w, group));
  for_each_coproduct_term(w, group,
                          [&](const Word& l, const Word& r) { out.emplace_back(l, r); });
  return out;
}

WordSum::WordSum(const Word& w, Scalar c) {
  if (!c.is_zero()) terms_.emplace(w, std::move(c));
}

Scalar WordSum::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

bool WordSum::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_exact(); });
}

void WordSum::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WordSum& WordSum::operator+=(const WordSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

WordSum& WordSum::operator-=(const WordSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

WordSum& WordSum::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second.is_zero()) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

WordSum operator*(const WordSum& a, const WordSum& b) {
  if (static_cast<std::uint64_t>(a.size()) * b.size() > caps().max_expansion_terms)
    throw ResourceError("word-sum product exceeds the expansion cap");
  WordSum out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
  return out;
}

std::string WordSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    os << (first ? "" : " + ") << c << "*[" << w.to_string() << ']';
    first = false;
  }
  return os.str();
}

WordSum adjoint(const WordSum& s) {
  WordSum out;
  for (const auto& [w, c] : s.terms()) out.add(adjoint(w), c);
  return out;
}

}  // namespace cqg
