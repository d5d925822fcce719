#include "fusionlab/element.hpp"

#include <cctype>

#include "fusionlab/error.hpp"

namespace fusionlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_same(const Element& a, const Element& b) {
  if (!a.ring().same_ring(b.ring())) throw ComputationError("elements belong to different rings");
}

Rational parse_real(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_exact_decimal(text);
  const Rational den = parse_exact_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return parse_exact_decimal(trim(text.substr(0, slash))) / den;
}

// Real or Gaussian coefficient: "3", "-1/2", "0.25", "i", "2i", "(1-i)".
Scalar parse_coefficient(std::string_view text, ArithmeticMode mode) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = trim(text.substr(1, text.size() - 2));
  if (text.empty()) throw InputError("empty coefficient");
  Rational re = 0;
  Rational im = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= text.size(); ++i) {
    const bool at_end = i == text.size();
    const bool split = !at_end && (text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E' &&
                       text[i - 1] != '/';
    if (!at_end && !split) continue;
    std::string_view part = trim(text.substr(start, i - start));
    if (!part.empty() && part.back() == 'i') {
      std::string body(trim(part.substr(0, part.size() - 1)));
      if (body.empty() || body == "+") body = "1";
      if (body == "-") body = "-1";
      if (body.back() == '*') body.pop_back();
      im += parse_real(body);
    } else {
      re += parse_real(part);
    }
    start = i;
  }
  return Scalar(re, im).in_mode(mode);
}

std::optional<Label> try_label(const FusionRing& ring, std::string_view text) {
  return ring.rule().parse(text);
}

}  // namespace

Element::Element(FusionRing ring, Label l) : ring_(std::move(ring)) { add(l, Scalar::one(ring_.mode())); }

Element::Element(FusionRing ring, Terms terms) : ring_(std::move(ring)) {
  for (auto& [l, c] : terms) add(l, c);
}

Scalar Element::coefficient(Label l) const {
  const auto it = terms_.find(l);
  return it == terms_.end() ? Scalar::zero(ring_.mode()) : it->second;
}

void Element::add(Label l, const Scalar& c) {
  if (!ring_.contains(l)) throw InputError("label id " + std::to_string(l.id) + " is not in ring " + ring_.spec());
  const Scalar value = c.in_mode(ring_.mode());
  if (value.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(l, value);
  if (inserted) return;
  it->second += value;
  if (it->second.is_zero()) terms_.erase(it);
}

Element Element::parse(const FusionRing& ring, std::string_view text) {
  Element out(ring);
  text = trim(text);
  if (text.empty() || text == "0") return out;

  // Split on top-level signs that follow a complete term.
  std::vector<std::pair<bool, std::string_view>> chunks;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  char prev = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool sign = c == '+' || c == '-';
    if (sign && depth == 0 && prev != 0 && prev != '*' && prev != '^' && prev != '+' && prev != '-') {
      chunks.emplace_back(negative, trim(text.substr(start, i - start)));
      negative = c == '-';
      start = i + 1;
      prev = c;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  if (depth != 0) throw InputError("unbalanced parentheses in element '" + std::string(text) + "'");
  chunks.emplace_back(negative, trim(text.substr(start)));

  for (auto [neg, chunk] : chunks) {
    if (chunk.empty()) throw InputError("empty term in element '" + std::string(text) + "'");
    Scalar coeff = Scalar::one(ring.mode());
    Label label = ring.unit();
    int level = 0;
    std::size_t star_pos = std::string_view::npos;
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (chunk[i] == '(') ++level;
      if (chunk[i] == ')') --level;
      if (chunk[i] == '*' && level == 0) {
        star_pos = i;
        break;
      }
    }
    if (star_pos != std::string_view::npos) {
      coeff = parse_coefficient(chunk.substr(0, star_pos), ring.mode());
      label = ring.label(trim(chunk.substr(star_pos + 1)));
    } else if (auto l = try_label(ring, chunk)) {
      label = *l;
    } else {
      try {
        coeff = parse_coefficient(chunk, ring.mode());
      } catch (const InputError&) {
        throw InputError("'" + std::string(chunk) + "' is neither a label of " + ring.spec() + " nor a coefficient");
      }
    }
    out.add(label, neg ? -coeff : coeff);
  }
  return out;
}

Element Element::star() const {
  Element out(ring_);
  for (const auto& [l, c] : terms_) out.add(ring_.conj(l), c.conj());
  return out;
}

Element Element::operator-() const {
  Element out(ring_);
  for (const auto& [l, c] : terms_) out.terms_.emplace(l, -c);
  return out;
}

Element operator+(const Element& a, const Element& b) {
  require_same(a, b);
  Element out = a;
  for (const auto& [l, c] : b.terms_) out.add(l, c);
  return out;
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator*(const Element& a, const Element& b) {
  require_same(a, b);
  const FusionRing& ring = a.ring_;
  Element out(ring);
  for (const auto& [la, ca] : a.terms_) {
    for (const auto& [lb, cb] : b.terms_) {
      const Scalar prod = ca * cb;
      for (const FusionTerm& t : ring.fuse(la, lb)) {
        out.add(t.label, Scalar(static_cast<long long>(t.multiplicity)).in_mode(ring.mode()) * prod);
      }
    }
  }
  return out;
}

Element operator*(const Scalar& s, const Element& x) {
  Element out(x.ring_);
  for (const auto& [l, c] : x.terms_) out.add(l, s.in_mode(x.ring_.mode()) * c);
  return out;
}

bool operator==(const Element& a, const Element& b) { return a.ring_.same_ring(b.ring_) && a.terms_ == b.terms_; }

bool Element::integral() const {
  for (const auto& [l, c] : terms_) {
    if (!c.is_integer()) return false;
  }
  return true;
}

std::size_t Element::max_word_length() const {
  std::size_t best = 0;
  for (const auto& [l, c] : terms_) best = std::max(best, ring_.word_length(l));
  return best;
}

double Element::l1_dim_norm() const {
  double total = 0;
  for (const auto& [l, c] : terms_) total += c.abs() * ring_.dim_double(l);
  return total;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [l, c] : terms_) {
    Scalar shown = c;
    bool negative = false;
    if (c.is_exact() && c.is_real() && c.re() < 0) {
      negative = true;
      shown = -c;
    } else if (!c.is_exact() && c.to_complex().imag() == 0 && c.to_complex().real() < 0) {
      negative = true;
      shown = -c;
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (shown == Scalar::one(ring_.mode())) {
      out += ring_.name(l);
    } else {
      out += shown.str() + "*" + ring_.name(l);
    }
  }
  return out;
}

Element multiply(const Element& x, const Element& y) { return x * y; }

Element star(const Element& x) { return x.star(); }

Element symmetrized_generator(const FusionRing& ring, const std::vector<Label>& gens) {
  if (gens.empty()) throw InputError("generator list is empty");
  Element x(ring);
  for (Label g : gens) {
    x.add(g, Scalar::one(ring.mode()));
    x.add(ring.conj(g), Scalar::one(ring.mode()));
  }
  return x;
}

}  // namespace fusionlab
