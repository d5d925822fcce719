#pragma once

#include <map>
#include <string>
#include <string_view>

#include "fusionlab/fusion_ring.hpp"
#include "fusionlab/scalar.hpp"

namespace fusionlab {

/// Finite linear combination of labels in C[C]. Zero coefficients are never
/// stored; the empty element is zero.
class Element {
 public:
  using Terms = std::map<Label, Scalar>;

  explicit Element(FusionRing ring) : ring_(std::move(ring)) {}
  Element(FusionRing ring, Label l);
  Element(FusionRing ring, Terms terms);

  /// Parses "2*a1 + (1+i)*tau - g^-2"; a bare token is a label with
  /// coefficient 1, a bare number is a multiple of the unit.
  static Element parse(const FusionRing& ring, std::string_view text);

  const FusionRing& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(Label l) const;

  void add(Label l, const Scalar& c);

  Element star() const;
  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& s, const Element& x);
  friend bool operator==(const Element& a, const Element& b);

  /// True when every coefficient is an exact real integer.
  bool integral() const;
  /// Largest word length of a label in the support (0 for zero).
  std::size_t max_word_length() const;
  /// Sum of |c_a| d(a).
  double l1_dim_norm() const;

  std::string str() const;

 private:
  FusionRing ring_;
  Terms terms_;
};

Element multiply(const Element& x, const Element& y);
Element star(const Element& x);

/// x = sum over g in gens of (g + conj g), self-conjugate g counted twice.
Element symmetrized_generator(const FusionRing& ring, const std::vector<Label>& gens);

}  // namespace fusionlab
