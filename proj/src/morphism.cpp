#include "cqg/morphism.hpp"

#include <algorithm>
#include <cmath>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"

namespace cqg {

Morphism::Morphism(std::string name, GroupSpec source, GroupSpec target,
                   std::vector<WordSum> images)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (source_.is_free_product())
    throw ArgumentError("Morphism: free-product sources are not supported");
  const std::size_t n = source_.n();
  if (images_.size() != n * n)
    throw ArgumentError("Morphism " + name_ + ": expected n^2 generator images");
  for (const auto& img : images_) {
    if (img.size() > caps().max_terms_per_generator)
      throw ResourceError("Morphism " + name_ + ": generator image exceeds the term cap");
    for (const auto& [w, c] : img.terms()) {
      for (const auto& l : w.letters()) {
        const GroupSpec& f = target_.factor(l.factor);
        if (l.row < 1 || l.row > f.n() || l.col < 1 || l.col > f.n())
          throw ArgumentError("Morphism " + name_ + ": image letter outside " + target_.name());
        if ((l.factor == 0) == target_.is_free_product())
          throw ArgumentError("Morphism " + name_ + ": image factor tags do not match target");
      }
    }
  }
}

const WordSum& Morphism::image(std::uint32_t i, std::uint32_t j) const {
  const std::uint32_t n = source_.n();
  if (i < 1 || i > n || j < 1 || j > n) throw ArgumentError("Morphism::image: index out of range");
  return images_[(i - 1) * n + (j - 1)];
}

WordSum Morphism::image(const Letter& l) const {
  const WordSum& img = image(l.row, l.col);
  return l.starred ? adjoint(img) : img;
}

WordSum Morphism::apply(const Word& w) const {
  std::uint64_t bound = 1;
  for (const auto& l : w.letters()) {
    bound *= std::max<std::size_t>(1, image(l.row, l.col).size());
    if (bound > caps().max_expansion_terms)
      throw ResourceError("morphism " + name_ + ": image of " + w.to_string() +
                          " exceeds the expansion cap");
  }
  WordSum acc = WordSum::constant(Scalar(1));
  for (const auto& l : w.letters()) {
    acc = acc * image(l);
    if (acc.is_zero()) break;
  }
  return acc;
}

WordSum Morphism::apply(const WordSum& s) const {
  WordSum out;
  for (const auto& [w, c] : s.terms()) out += c * apply(w);
  return out;
}

bool Morphism::is_exact() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const WordSum& s) { return s.is_exact(); });
}

Morphism compose(const Morphism& first, const Morphism& second) {
  if (!(first.target() == second.source()))
    throw ArgumentError("compose: " + first.name() + " target is not " + second.name() + " source");
  const std::uint32_t n = first.source().n();
  std::vector<WordSum> images;
  images.reserve(n * n);
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) images.push_back(second.apply(first.image(i, j)));
  return Morphism(second.name() + "." + first.name(), first.source(), second.target(),
                  std::move(images));
}

namespace {

void add_tensor(TensorSum& t, const Word& a, const Word& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

}  // namespace

Scalar coproduct_intertwining_residual(const Morphism& pi) {
  const std::uint32_t n = pi.source().n();
  Scalar worst(0);
  bool exact = true;
  double worst_f = 0.0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = 1; j <= n; ++j) {
      TensorSum diff;
      for (std::uint32_t k = 1; k <= n; ++k) {
        for (const auto& [wl, cl] : pi.image(i, k).terms())
          for (const auto& [wr, cr] : pi.image(k, j).terms()) add_tensor(diff, wl, wr, cl * cr);
      }
      for (const auto& [w, c] : pi.image(i, j).terms()) {
        for_each_coproduct_term(w, pi.target(), [&](const Word& l, const Word& r) {
          add_tensor(diff, l, r, -c);
        });
      }
      for (const auto& [key, c] : diff) {
        if (c.is_exact()) {
          mpq_class a = abs(c.exact());
          if (worst.is_exact() && a > worst.exact()) worst = Scalar(a);
        } else {
          exact = false;
          worst_f = std::max(worst_f, std::abs(c.to_double()));
        }
      }
    }
  }
  if (!exact) return Scalar::real(std::max(worst_f, worst.to_double()));
  return worst;
}

namespace {

void append_relations(const GroupSpec& g, std::uint8_t tag, std::vector<WordSum>& out) {
  const GroupSpec& top = g;
  auto letter = [&](std::uint32_t i, std::uint32_t j, bool star) {
    Letter l;
    l.factor = tag;
    l.row = static_cast<std::uint8_t>(i);
    l.col = static_cast<std::uint8_t>(j);
    l.self_adjoint = top.self_adjoint_entries();
    l.starred = star && !l.self_adjoint;
    return l;
  };
  auto word = [](std::initializer_list<Letter> ls) { return Word(std::vector<Letter>(ls)); };
  const std::uint32_t n = g.n();
  const auto one = WordSum::constant(Scalar(1));
  switch (g.family()) {
    case Family::Torus:
      out.push_back(WordSum(word({letter(1, 1, false), letter(1, 1, true)})) - one);
      out.push_back(WordSum(word({letter(1, 1, true), letter(1, 1, false)})) - one);
      return;
    case Family::OClassical:
    case Family::OPlus:
    case Family::UClassical:
    case Family::UPlus: {
      const bool unitary = !g.self_adjoint_entries();
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = 1; j <= n; ++j) {
          WordSum a, b, c, d;
          for (std::uint32_t k = 1; k <= n; ++k) {
            // u ubar^t, ubar^t u, u^t ubar, ubar u^t (collapse for O-type).
            a.add(word({letter(i, k, false), letter(j, k, true)}), Scalar(1));
            b.add(word({letter(k, i, true), letter(k, j, false)}), Scalar(1));
            if (unitary) {
              c.add(word({letter(k, i, false), letter(k, j, true)}), Scalar(1));
              d.add(word({letter(i, k, true), letter(j, k, false)}), Scalar(1));
            }
          }
          if (i == j) {
            a -= one;
            b -= one;
            if (unitary) {
              c -= one;
              d -= one;
            }
          }
          out.push_back(a);
          out.push_back(b);
          if (unitary) {
            out.push_back(c);
            out.push_back(d);
          }
        }
      }
      break;
    }
    case Family::SClassical:
    case Family::SPlus:
      for (std::uint32_t i = 1; i <= n; ++i) {
        WordSum row = WordSum::constant(Scalar(-1)), col = WordSum::constant(Scalar(-1));
        for (std::uint32_t k = 1; k <= n; ++k) {
          row.add(word({letter(i, k, false)}), Scalar(1));
          col.add(word({letter(k, i, false)}), Scalar(1));
        }
        out.push_back(row);
        out.push_back(col);
        for (std::uint32_t j = 1; j <= n; ++j) {
          // Projections, orthogonal along rows and columns.
          out.push_back(WordSum(word({letter(i, j, false), letter(i, j, false)})) -
                        WordSum(word({letter(i, j, false)})));
          for (std::uint32_t k = 1; k <= n; ++k) {
            if (k != j) out.push_back(WordSum(word({letter(i, j, false), letter(i, k, false)})));
            if (k != i) out.push_back(WordSum(word({letter(i, j, false), letter(k, j, false)})));
          }
        }
      }
      break;
    case Family::FreeProduct:
      for (std::uint32_t f = 1; f <= g.factor_count(); ++f)
        append_relations(g.factor(f), static_cast<std::uint8_t>(f), out);
      return;
  }
  if (g.is_classical()) {
    // Commutativity of all generators (and adjoints for U_n).
    std::vector<Letter> gens;
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j <= n; ++j) {
        gens.push_back(letter(i, j, false));
        if (!g.self_adjoint_entries()) gens.push_back(letter(i, j, true));
      }
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        out.push_back(WordSum(word({gens[a], gens[b]})) - WordSum(word({gens[b], gens[a]})));
  }
}

}  // namespace

std::vector<WordSum> relation_expressions(const GroupSpec& group) {
  std::vector<WordSum> out;
  append_relations(group, 0, out);
  return out;
}

}  // namespace cqg
