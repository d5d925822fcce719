#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusionlab/number.hpp"
#include "fusionlab/scalar.hpp"

namespace fusionlab {

/// An element of Irr(C). The id is assigned by the ring's rule; ids are
/// canonical, so ordering labels by id is the stable catalog order.
struct Label {
  std::uint64_t id = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct LabelHash {
  std::size_t operator()(Label l) const noexcept { return std::hash<std::uint64_t>{}(l.id); }
};

/// One fusion channel gamma of alpha (x) beta with its multiplicity.
struct FusionTerm {
  Label label;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const FusionTerm&, const FusionTerm&) = default;
};

/// Sparse row gamma -> N_{alpha beta}^gamma, sorted by label, no zeros.
using FusionRow = std::vector<FusionTerm>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Rule plug-in behind a FusionRing. Implementations are immutable and
/// must be safe to call concurrently.
class FusionRule {
 public:
  virtual ~FusionRule() = default;

  /// Canonical catalog spec ("tl:3", "free:2", or "file:<name>").
  virtual std::string spec() const = 0;
  virtual bool finite() const = 0;
  /// All labels in id order; only meaningful for finite rings.
  virtual std::vector<Label> labels() const { return {}; }
  virtual bool contains(Label l) const = 0;

  virtual Label unit() const = 0;
  virtual Label conj(Label l) const = 0;
  virtual Number dim(Label l) const = 0;
  virtual FusionRow fuse(Label a, Label b) const = 0;
  virtual std::vector<Label> generators() const = 0;

  virtual std::string name(Label l) const = 0;
  virtual std::optional<Label> parse(std::string_view text) const = 0;

  /// First BFS layer in which l appears when growing from the unit with
  /// the default generators and their conjugates.
  virtual std::size_t word_length(Label l) const = 0;
};

/// Value handle on an immutable fusion ring together with its coefficient
/// arithmetic mode. Copies share the rule.
class FusionRing {
 public:
  FusionRing(std::shared_ptr<const FusionRule> rule, ArithmeticMode mode = ArithmeticMode::exact);

  const FusionRule& rule() const { return *rule_; }
  ArithmeticMode mode() const { return mode_; }
  std::string spec() const { return rule_->spec(); }
  bool finite() const { return rule_->finite(); }
  std::vector<Label> labels() const { return rule_->labels(); }
  bool contains(Label l) const { return rule_->contains(l); }

  Label unit() const { return rule_->unit(); }
  Label conj(Label l) const { return rule_->conj(l); }
  Number dim(Label l) const { return rule_->dim(l); }
  double dim_double(Label l) const { return rule_->dim(l).to_double(); }
  FusionRow fuse(Label a, Label b) const { return rule_->fuse(a, b); }
  /// N_{a b}^c.
  std::uint64_t multiplicity(Label a, Label b, Label c) const;
  std::vector<Label> generators() const { return rule_->generators(); }

  std::string name(Label l) const { return rule_->name(l); }
  /// Parses a label name; throws InputError for names outside the ring.
  Label label(std::string_view text) const;
  std::size_t word_length(Label l) const { return rule_->word_length(l); }

  /// Labels reachable by products of at most `radius` factors from the
  /// default generators and their conjugates, ordered by first-reached word
  /// length then id.
  std::vector<Label> ball(int radius) const { return ball(generators(), radius); }
  std::vector<Label> ball(const std::vector<Label>& generators, int radius) const;

  /// Same underlying rule (and hence the same label space).
  bool same_ring(const FusionRing& other) const { return rule_ == other.rule_; }
  FusionRing with_mode(ArithmeticMode mode) const { return FusionRing(rule_, mode); }

 private:
  std::shared_ptr<const FusionRule> rule_;
  ArithmeticMode mode_;
};

/// Per-axiom outcome of validate_axioms.
struct AxiomViolation {
  std::vector<Label> witness;
  std::string lhs;
  std::string rhs;
};

struct AxiomResult {
  std::string name;
  std::string identity;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first kMaxListedViolations
};

struct ValidationReport {
  int radius = 0;
  std::size_t ball_size = 0;
  bool exact_dimensions = true;
  double tolerance = 1e-9;
  std::string associativity_scope;
  std::vector<AxiomResult> axioms;

  bool passed() const;
  const AxiomResult* find(std::string_view name) const;
};

inline constexpr std::size_t kMaxListedViolations = 20;

/// Checks every fusion-ring axiom on ball(radius). Failures are entries of
/// the report, never exceptions.
ValidationReport validate_axioms(const FusionRing& ring, int radius);

}  // namespace fusionlab
