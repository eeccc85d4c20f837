#include "cqg/group.hpp"

#include <cctype>
#include <charconv>

#include "cqg/errors.hpp"

namespace cqg {

const GroupSpec& GroupSpec::factor(std::uint32_t f) const {
  if (f == 0) return *this;
  if (family_ != Family::FreeProduct || f > factors_.size())
    throw ArgumentError("factor index " + std::to_string(f) + " out of range for " + name());
  return factors_[f - 1];
}

bool GroupSpec::self_adjoint_entries() const {
  switch (family_) {
    case Family::OClassical:
    case Family::OPlus:
    case Family::SClassical:
    case Family::SPlus:
      return true;
    default:
      return false;
  }
}

std::string GroupSpec::name() const {
  const std::string ns = std::to_string(n_);
  switch (family_) {
    case Family::OClassical:
      return "o:" + ns;
    case Family::OPlus:
      return "o+:" + ns;
    case Family::UClassical:
      return "u:" + ns;
    case Family::UPlus:
      return "u+:" + ns;
    case Family::SClassical:
      return "s:" + ns;
    case Family::SPlus:
      return "s+:" + ns;
    case Family::Torus:
      return "t";
    case Family::FreeProduct: {
      std::string s = "free(";
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "," : "") + factors_[i].name();
      return s + ")";
    }
  }
  return "?";
}

GroupSpec make_group(Family family, std::uint32_t n) {
  if (family == Family::FreeProduct)
    throw ArgumentError("make_group: use make_free_product for free products");
  if (n == 0) throw ArgumentError("make_group: n must be at least 1");
  if (n > 255) throw ArgumentError("make_group: n must be at most 255");
  if (family == Family::Torus && n != 1) throw ArgumentError("make_group: the torus has n = 1");
  GroupSpec g;
  g.family_ = family;
  g.n_ = n;
  return g;
}

GroupSpec make_free_product(const std::vector<GroupSpec>& factors) {
  GroupSpec g;
  g.family_ = Family::FreeProduct;
  g.n_ = 0;
  for (const auto& f : factors) {
    if (f.is_free_product()) {
      g.factors_.insert(g.factors_.end(), f.factors_.begin(), f.factors_.end());
    } else {
      g.factors_.push_back(f);
    }
  }
  if (g.factors_.size() < 2) throw ArgumentError("make_free_product: need at least two factors");
  if (g.factors_.size() > 255) throw ArgumentError("make_free_product: too many factors");
  return g;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

GroupSpec parse_simple(std::string_view s) {
  if (s == "t") return make_group(Family::Torus, 1);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError("bad group name '" + std::string(s) + "'");
  const std::string_view head = s.substr(0, colon);
  const std::string_view tail = s.substr(colon + 1);
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
  if (ec != std::errc() || ptr != tail.data() + tail.size())
    throw ParseError("bad group dimension in '" + std::string(s) + "'");
  Family fam;
  if (head == "o") fam = Family::OClassical;
  else if (head == "o+") fam = Family::OPlus;
  else if (head == "u") fam = Family::UClassical;
  else if (head == "u+") fam = Family::UPlus;
  else if (head == "s") fam = Family::SClassical;
  else if (head == "s+") fam = Family::SPlus;
  else throw ParseError("unknown group family '" + std::string(head) + "'");
  try {
    return make_group(fam, n);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

GroupSpec parse_group(std::string_view text) {
  const std::string s = strip(text);
  if (s.rfind("free(", 0) == 0) {
    if (s.back() != ')') throw ParseError("unterminated free(...) group");
    std::vector<GroupSpec> factors;
    std::size_t depth = 0, start = 5;
    for (std::size_t i = 5; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')') --depth;
      else if (s[i] == ',' && depth == 0) {
        factors.push_back(parse_group(s.substr(start, i - start)));
        start = i + 1;
      }
    }
    factors.push_back(parse_group(s.substr(start, s.size() - 1 - start)));
    try {
      return make_free_product(factors);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what());
    }
  }
  return parse_simple(s);
}

}  // namespace cqg
