#include "fusionlab/catalog.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "fusionlab/error.hpp"

namespace fusionlab {

namespace {

using u128 = unsigned __int128;

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  if (s.empty()) return std::nullopt;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

long long require_int(std::string_view s, std::string_view what) {
  auto v = parse_int(s);
  if (!v) throw InputError("expected an integer " + std::string(what) + ", got '" + std::string(s) + "'");
  return *v;
}

FusionRow single(Label l) { return {{l, 1}}; }

// ---------------------------------------------------------------- cyclic:n

class CyclicRule final : public FusionRule {
 public:
  explicit CyclicRule(std::uint64_t n) : n_(n) {}
  std::string spec() const override { return "cyclic:" + std::to_string(n_); }
  bool finite() const override { return true; }
  std::vector<Label> labels() const override {
    std::vector<Label> out;
    for (std::uint64_t k = 0; k < n_; ++k) out.push_back({k});
    return out;
  }
  bool contains(Label l) const override { return l.id < n_; }
  Label unit() const override { return {0}; }
  Label conj(Label l) const override { return {(n_ - l.id) % n_}; }
  Number dim(Label) const override { return Number(1); }
  FusionRow fuse(Label a, Label b) const override { return single({(a.id + b.id) % n_}); }
  std::vector<Label> generators() const override {
    if (n_ < 2) return {};
    return {{1}};
  }
  std::string name(Label l) const override { return std::to_string(l.id); }
  std::optional<Label> parse(std::string_view text) const override {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    const long long n = static_cast<long long>(n_);
    return Label{static_cast<std::uint64_t>(((*v % n) + n) % n)};
  }
  std::size_t word_length(Label l) const override { return std::min(l.id, n_ - l.id); }

 private:
  std::uint64_t n_;
};

// ---------------------------------------------------------------- int

class IntegerRule final : public FusionRule {
 public:
  static Label encode(long long k) {
    if (k > 0) return {2 * static_cast<std::uint64_t>(k) - 1};
    return {2 * static_cast<std::uint64_t>(-k)};
  }
  static long long decode(Label l) {
    if (l.id % 2 == 1) return static_cast<long long>((l.id + 1) / 2);
    return -static_cast<long long>(l.id / 2);
  }

  std::string spec() const override { return "int"; }
  bool finite() const override { return false; }
  bool contains(Label l) const override { return l.id < (std::uint64_t{1} << 62); }
  Label unit() const override { return {0}; }
  Label conj(Label l) const override { return encode(-decode(l)); }
  Number dim(Label) const override { return Number(1); }
  FusionRow fuse(Label a, Label b) const override { return single(encode(decode(a) + decode(b))); }
  std::vector<Label> generators() const override { return {encode(1)}; }
  std::string name(Label l) const override { return std::to_string(decode(l)); }
  std::optional<Label> parse(std::string_view text) const override {
    if (text == "e") return encode(0);
    if (text == "g") return encode(1);
    if (text.starts_with("g^")) {
      if (auto v = parse_int(text.substr(2))) return encode(*v);
      return std::nullopt;
    }
    if (auto v = parse_int(text)) return encode(*v);
    return std::nullopt;
  }
  std::size_t word_length(Label l) const override {
    const long long k = decode(l);
    return static_cast<std::size_t>(k < 0 ? -k : k);
  }
};

// ---------------------------------------------------------------- free:k
// Reduced words over a, A=a^-1, b, B, ...; the id is the rank of the word
// in shortlex order, so id order is the canonical label order.

class FreeGroupRule final : public FusionRule {
 public:
  using Word = std::vector<int>;

  explicit FreeGroupRule(int k) : k_(k), letters_(2 * k) {}

  std::string spec() const override { return "free:" + std::to_string(k_); }
  bool finite() const override { return false; }
  bool contains(Label) const override { return true; }
  Label unit() const override { return {0}; }
  Label conj(Label l) const override {
    Word w = decode(l);
    std::reverse(w.begin(), w.end());
    for (int& c : w) c ^= 1;
    return encode(w);
  }
  Number dim(Label) const override { return Number(1); }
  FusionRow fuse(Label a, Label b) const override {
    Word w = decode(a);
    for (int c : decode(b)) {
      if (!w.empty() && w.back() == (c ^ 1)) {
        w.pop_back();
      } else {
        w.push_back(c);
      }
    }
    return single(encode(w));
  }
  std::vector<Label> generators() const override {
    std::vector<Label> out;
    for (int i = 0; i < k_; ++i) out.push_back(encode(Word{2 * i}));
    return out;
  }
  std::string name(Label l) const override {
    const Word w = decode(l);
    if (w.empty()) return "e";
    std::string s;
    for (int c : w) {
      const char base = static_cast<char>('a' + c / 2);
      s.push_back(c % 2 ? static_cast<char>(std::toupper(base)) : base);
    }
    return s;
  }
  std::optional<Label> parse(std::string_view text) const override {
    if (text == "e" || text == "1") return unit();
    Word w;
    for (char ch : text) {
      int c = 0;
      if (ch >= 'a' && ch < 'a' + k_) {
        c = 2 * (ch - 'a');
      } else if (ch >= 'A' && ch < 'A' + k_) {
        c = 2 * (ch - 'A') + 1;
      } else {
        return std::nullopt;
      }
      if (!w.empty() && w.back() == (c ^ 1)) {
        w.pop_back();
      } else {
        w.push_back(c);
      }
    }
    return encode(w);
  }
  std::size_t word_length(Label l) const override { return decode(l).size(); }

  Label encode(const Word& w) const {
    const u128 branch = static_cast<u128>(letters_ - 1);
    u128 offset = 0;
    u128 count = 1;
    for (std::size_t len = 0; len < w.size(); ++len) {
      offset += count;
      count = len == 0 ? static_cast<u128>(letters_) : count * branch;
      check(offset + count);
    }
    u128 rank = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i == 0) {
        rank = static_cast<u128>(w[0]);
      } else {
        const int excluded = w[i - 1] ^ 1;
        const int digit = w[i] < excluded ? w[i] : w[i] - 1;
        rank = rank * branch + static_cast<u128>(digit);
      }
    }
    return {static_cast<std::uint64_t>(offset + rank)};
  }

  Word decode(Label l) const {
    u128 rank = l.id;
    std::size_t len = 0;
    u128 count = 1;
    while (rank >= count) {
      rank -= count;
      count = len == 0 ? static_cast<u128>(letters_) : count * static_cast<u128>(letters_ - 1);
      ++len;
    }
    Word digits(len);
    const u128 branch = static_cast<u128>(letters_ - 1);
    for (std::size_t i = len; i-- > 1;) {
      digits[i] = static_cast<int>(rank % branch);
      rank /= branch;
    }
    Word w(len);
    if (len > 0) {
      w[0] = static_cast<int>(rank);
      for (std::size_t i = 1; i < len; ++i) {
        const int excluded = w[i - 1] ^ 1;
        w[i] = digits[i] < excluded ? digits[i] : digits[i] + 1;
      }
    }
    return w;
  }

 private:
  static void check(u128 value) {
    if (value > std::numeric_limits<std::uint64_t>::max()) {
      throw ComputationError("free group word too long for a 64-bit label id");
    }
  }

  int k_;
  int letters_;
};

// ---------------------------------------------------------------- tl:δ
// Clebsch-Gordan rules a_m a_n = a_|m-n| + ... + a_(m+n); d(a_n) = [n+1]_q
// with q + 1/q = δ.

class TemperleyLiebRule final : public FusionRule {
 public:
  explicit TemperleyLiebRule(std::string delta_text) : text_(std::move(delta_text)) {
    delta_ = parse_exact_decimal(text_);
    if (delta_ < 2) throw InputError("Temperley-Lieb parameter must satisfy δ >= 2, got " + text_);
    exact_ = boost::multiprecision::denominator(delta_) == 1;
  }

  std::string spec() const override { return "tl:" + text_; }
  bool finite() const override { return false; }
  bool contains(Label l) const override { return l.id < (std::uint64_t{1} << 62); }
  Label unit() const override { return {0}; }
  Label conj(Label l) const override { return l; }
  Number dim(Label l) const override {
    if (exact_) {
      Rational prev = 0;
      Rational cur = 1;
      for (std::uint64_t i = 0; i < l.id; ++i) {
        Rational next = delta_ * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
      return Number(cur);
    }
    const Decimal delta = Number(delta_).decimal();
    Decimal prev = 0;
    Decimal cur = 1;
    for (std::uint64_t i = 0; i < l.id; ++i) {
      Decimal next = delta * cur - prev;
      prev = cur;
      cur = next;
    }
    return Number(cur);
  }
  FusionRow fuse(Label a, Label b) const override {
    const std::uint64_t lo = a.id > b.id ? a.id - b.id : b.id - a.id;
    FusionRow row;
    for (std::uint64_t k = lo; k <= a.id + b.id; k += 2) row.push_back({{k}, 1});
    return row;
  }
  std::vector<Label> generators() const override { return {{1}}; }
  std::string name(Label l) const override { return "a" + std::to_string(l.id); }
  std::optional<Label> parse(std::string_view text) const override {
    if (text.starts_with("a")) text.remove_prefix(1);
    auto v = parse_int(text);
    if (!v || *v < 0) return std::nullopt;
    return Label{static_cast<std::uint64_t>(*v)};
  }
  std::size_t word_length(Label l) const override { return l.id; }

 private:
  std::string text_;
  Rational delta_;
  bool exact_ = false;
};

// ---------------------------------------------------------------- su2:k
// Level-k Verlinde rules on labels 0..k (twice the spin).

class SU2Rule final : public FusionRule {
 public:
  explicit SU2Rule(std::uint64_t k) : k_(k) {
    const Decimal pi = boost::math::constants::pi<Decimal>();
    const Decimal denom = sin(pi / Decimal(k + 2));
    for (std::uint64_t j = 0; j <= k; ++j) {
      if (j == 0 || j == k) {
        dims_.emplace_back(1);
      } else {
        dims_.emplace_back(Decimal(sin(Decimal(j + 1) * pi / Decimal(k + 2)) / denom));
      }
    }
  }

  std::string spec() const override { return "su2:" + std::to_string(k_); }
  bool finite() const override { return true; }
  std::vector<Label> labels() const override {
    std::vector<Label> out;
    for (std::uint64_t j = 0; j <= k_; ++j) out.push_back({j});
    return out;
  }
  bool contains(Label l) const override { return l.id <= k_; }
  Label unit() const override { return {0}; }
  Label conj(Label l) const override { return l; }
  Number dim(Label l) const override { return dims_.at(l.id); }
  FusionRow fuse(Label a, Label b) const override {
    const std::uint64_t lo = a.id > b.id ? a.id - b.id : b.id - a.id;
    const std::uint64_t hi = std::min(a.id + b.id, 2 * k_ - a.id - b.id);
    FusionRow row;
    for (std::uint64_t c = lo; c <= hi; c += 2) row.push_back({{c}, 1});
    return row;
  }
  std::vector<Label> generators() const override { return {{1}}; }
  std::string name(Label l) const override { return std::to_string(l.id); }
  std::optional<Label> parse(std::string_view text) const override {
    auto v = parse_int(text);
    if (!v || *v < 0 || static_cast<std::uint64_t>(*v) > k_) return std::nullopt;
    return Label{static_cast<std::uint64_t>(*v)};
  }
  std::size_t word_length(Label l) const override { return l.id; }

 private:
  std::uint64_t k_;
  std::vector<Number> dims_;
};

// ---------------------------------------------------------------- finite table

class FiniteRule final : public FusionRule {
 public:
  struct Table {
    std::string spec;
    std::vector<std::string> names;
    std::size_t unit = 0;
    std::vector<std::size_t> conj;
    std::vector<Number> dims;
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, std::uint64_t>> fusion;
    std::vector<std::size_t> generators;
  };

  explicit FiniteRule(Table t) : t_(std::move(t)) {
    const std::size_t n = t_.names.size();
    rows_.resize(n * n);
    for (const auto& [pair, targets] : t_.fusion) {
      FusionRow& row = rows_[pair.first * n + pair.second];
      for (const auto& [c, mult] : targets) {
        if (mult != 0) row.push_back({{c}, mult});
      }
    }
    // BFS word lengths from the generators.
    lengths_.assign(n, kUnreachable);
    lengths_[t_.unit] = 0;
    std::deque<std::size_t> queue{t_.unit};
    std::vector<std::size_t> steps;
    for (std::size_t g : t_.generators) {
      steps.push_back(g);
      steps.push_back(t_.conj[g]);
    }
    while (!queue.empty()) {
      const std::size_t b = queue.front();
      queue.pop_front();
      for (std::size_t s : steps) {
        for (const FusionTerm& term : rows_[s * n + b]) {
          if (lengths_[term.label.id] == kUnreachable) {
            lengths_[term.label.id] = lengths_[b] + 1;
            queue.push_back(term.label.id);
          }
        }
      }
    }
  }

  const Table& table() const { return t_; }

  std::string spec() const override { return t_.spec; }
  bool finite() const override { return true; }
  std::vector<Label> labels() const override {
    std::vector<Label> out;
    for (std::uint64_t i = 0; i < t_.names.size(); ++i) out.push_back({i});
    return out;
  }
  bool contains(Label l) const override { return l.id < t_.names.size(); }
  Label unit() const override { return {t_.unit}; }
  Label conj(Label l) const override { return {t_.conj.at(l.id)}; }
  Number dim(Label l) const override { return t_.dims.at(l.id); }
  FusionRow fuse(Label a, Label b) const override {
    const std::size_t n = t_.names.size();
    if (a.id >= n || b.id >= n) throw InputError("label outside finite ring " + t_.spec);
    return rows_[a.id * n + b.id];
  }
  std::vector<Label> generators() const override {
    std::vector<Label> out;
    for (std::size_t g : t_.generators) out.push_back({g});
    return out;
  }
  std::string name(Label l) const override { return t_.names.at(l.id); }
  std::optional<Label> parse(std::string_view text) const override {
    for (std::size_t i = 0; i < t_.names.size(); ++i) {
      if (t_.names[i] == text) return Label{i};
    }
    return std::nullopt;
  }
  std::size_t word_length(Label l) const override { return lengths_.at(l.id); }

 private:
  Table t_;
  std::vector<FusionRow> rows_;
  std::vector<std::size_t> lengths_;
};

std::shared_ptr<const FusionRule> fibonacci_rule() {
  FiniteRule::Table t;
  t.spec = "fibonacci";
  t.names = {"1", "tau"};
  t.unit = 0;
  t.conj = {0, 1};
  const Decimal phi = (Decimal(1) + sqrt(Decimal(5))) / 2;
  t.dims = {Number(1), Number(phi)};
  t.fusion[{0, 0}] = {{0, 1}};
  t.fusion[{0, 1}] = {{1, 1}};
  t.fusion[{1, 0}] = {{1, 1}};
  t.fusion[{1, 1}] = {{0, 1}, {1, 1}};
  t.generators = {1};
  return std::make_shared<FiniteRule>(std::move(t));
}

std::shared_ptr<const FusionRule> ising_rule() {
  FiniteRule::Table t;
  t.spec = "ising";
  t.names = {"1", "sigma", "psi"};
  t.unit = 0;
  t.conj = {0, 1, 2};
  t.dims = {Number(1), Number(Decimal(sqrt(Decimal(2)))), Number(1)};
  for (std::size_t a = 0; a < 3; ++a) {
    t.fusion[{0, a}] = {{a, 1}};
    t.fusion[{a, 0}] = {{a, 1}};
  }
  t.fusion[{1, 1}] = {{0, 1}, {2, 1}};
  t.fusion[{1, 2}] = {{1, 1}};
  t.fusion[{2, 1}] = {{1, 1}};
  t.fusion[{2, 2}] = {{0, 1}};
  t.generators = {1};
  return std::make_shared<FiniteRule>(std::move(t));
}

// ---------------------------------------------------------------- product
// Label ids are Cantor pairs of the factor ids.

class ProductRule final : public FusionRule {
 public:
  ProductRule(std::shared_ptr<const FusionRule> a, std::shared_ptr<const FusionRule> b)
      : a_(std::move(a)), b_(std::move(b)) {}

  static Label pair(Label x, Label y) {
    const u128 s = static_cast<u128>(x.id) + y.id;
    const u128 z = s * (s + 1) / 2 + y.id;
    if (z > std::numeric_limits<std::uint64_t>::max()) {
      throw ComputationError("product label id overflow");
    }
    return {static_cast<std::uint64_t>(z)};
  }
  static std::pair<Label, Label> unpair(Label l) {
    const u128 z = l.id;
    auto w = static_cast<u128>((std::sqrt(8.0L * static_cast<long double>(l.id) + 1.0L) - 1.0L) / 2.0L);
    while (w * (w + 1) / 2 > z) --w;
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    const u128 y = z - w * (w + 1) / 2;
    return {{static_cast<std::uint64_t>(w - y)}, {static_cast<std::uint64_t>(y)}};
  }

  std::string spec() const override { return "product:" + a_->spec() + "," + b_->spec(); }
  bool finite() const override { return a_->finite() && b_->finite(); }
  std::vector<Label> labels() const override {
    std::vector<Label> out;
    for (Label x : a_->labels()) {
      for (Label y : b_->labels()) out.push_back(pair(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  bool contains(Label l) const override {
    const auto [x, y] = unpair(l);
    return a_->contains(x) && b_->contains(y);
  }
  Label unit() const override { return pair(a_->unit(), b_->unit()); }
  Label conj(Label l) const override {
    const auto [x, y] = unpair(l);
    return pair(a_->conj(x), b_->conj(y));
  }
  Number dim(Label l) const override {
    const auto [x, y] = unpair(l);
    return a_->dim(x) * b_->dim(y);
  }
  FusionRow fuse(Label l, Label r) const override {
    const auto [x1, y1] = unpair(l);
    const auto [x2, y2] = unpair(r);
    FusionRow row;
    for (const FusionTerm& s : a_->fuse(x1, x2)) {
      for (const FusionTerm& t : b_->fuse(y1, y2)) {
        row.push_back({pair(s.label, t.label), s.multiplicity * t.multiplicity});
      }
    }
    std::sort(row.begin(), row.end(), [](const FusionTerm& p, const FusionTerm& q) { return p.label < q.label; });
    return row;
  }
  std::vector<Label> generators() const override {
    std::vector<Label> out;
    for (Label g : a_->generators()) out.push_back(pair(g, b_->unit()));
    for (Label h : b_->generators()) out.push_back(pair(a_->unit(), h));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::string name(Label l) const override {
    const auto [x, y] = unpair(l);
    return "(" + a_->name(x) + "," + b_->name(y) + ")";
  }
  std::optional<Label> parse(std::string_view text) const override {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
    const std::string_view inner = text.substr(1, text.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const char c = inner[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        auto x = a_->parse(inner.substr(0, i));
        auto y = b_->parse(inner.substr(i + 1));
        if (x && y) return pair(*x, *y);
      }
    }
    return std::nullopt;
  }
  std::size_t word_length(Label l) const override {
    const auto [x, y] = unpair(l);
    const std::size_t p = a_->word_length(x);
    const std::size_t q = b_->word_length(y);
    if (p == kUnreachable || q == kUnreachable) return kUnreachable;
    return p + q;
  }

 private:
  std::shared_ptr<const FusionRule> a_;
  std::shared_ptr<const FusionRule> b_;
};

// ---------------------------------------------------------------- parsing

std::shared_ptr<const FusionRule> parse_rule(std::string_view spec);

std::shared_ptr<const FusionRule> parse_product(std::string_view args) {
  int depth = 0;
  std::string last_error = "product spec needs two comma-separated factors";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == '(') ++depth;
    if (args[i] == ')') --depth;
    if (args[i] != ',' || depth != 0) continue;
    try {
      auto left = parse_rule(args.substr(0, i));
      auto right = parse_rule(args.substr(i + 1));
      return std::make_shared<ProductRule>(std::move(left), std::move(right));
    } catch (const InputError& e) {
      last_error = e.what();
    }
  }
  throw InputError("malformed product spec '" + std::string(args) + "': " + last_error);
}

std::shared_ptr<const FusionRule> parse_rule(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;
  auto no_args = [&] {
    if (has_args) throw InputError("catalog ring '" + std::string(head) + "' takes no parameters");
  };

  if (head == "cyclic") {
    const long long n = require_int(args, "order for cyclic:n");
    if (n < 1) throw InputError("cyclic:n needs n >= 1");
    return std::make_shared<CyclicRule>(static_cast<std::uint64_t>(n));
  }
  if (head == "int") {
    no_args();
    return std::make_shared<IntegerRule>();
  }
  if (head == "free") {
    const long long k = require_int(args, "rank for free:k");
    if (k < 1 || k > 26) throw InputError("free:k needs 1 <= k <= 26");
    return std::make_shared<FreeGroupRule>(static_cast<int>(k));
  }
  if (head == "tl") {
    if (args.empty()) throw InputError("tl:δ needs a decimal parameter");
    return std::make_shared<TemperleyLiebRule>(std::string(args));
  }
  if (head == "su2") {
    const long long k = require_int(args, "level for su2:k");
    if (k < 1) throw InputError("su2:k needs k >= 1");
    return std::make_shared<SU2Rule>(static_cast<std::uint64_t>(k));
  }
  if (head == "fibonacci") {
    no_args();
    return fibonacci_rule();
  }
  if (head == "ising") {
    no_args();
    return ising_rule();
  }
  if (head == "product") return parse_product(args);
  throw InputError("unknown catalog ring '" + std::string(spec) + "'");
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

FusionRing parse_ring_file(std::string_view content, ArithmeticMode mode) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ring file: ") + e.what());
  }
  auto fail = [](const std::string& msg) -> void { throw InputError("malformed ring file: " + msg); };
  if (!doc.is_object()) fail("top level must be an object");
  for (const char* key : {"labels", "unit", "conj", "dim", "fusion"}) {
    if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
  }

  FiniteRule::Table t;
  t.spec = "file:" + (doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "unnamed");
  if (!doc["labels"].is_array() || doc["labels"].empty()) fail("'labels' must be a nonempty array");
  std::map<std::string, std::size_t> index;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) fail("labels must be strings");
    const auto name = l.get<std::string>();
    if (!index.emplace(name, t.names.size()).second) fail("duplicate label '" + name + "'");
    t.names.push_back(name);
  }
  auto lookup = [&](const json& v, const std::string& where) -> std::size_t {
    if (!v.is_string()) fail(where + ": label must be a string");
    const auto it = index.find(v.get<std::string>());
    if (it == index.end()) fail(where + ": unknown label '" + v.get<std::string>() + "'");
    return it->second;
  };
  t.unit = lookup(doc["unit"], "unit");

  const std::size_t n = t.names.size();
  if (!doc["conj"].is_object()) fail("'conj' must be an object");
  t.conj.assign(n, n);
  for (const auto& [key, value] : doc["conj"].items()) {
    t.conj[lookup(json(key), "conj")] = lookup(value, "conj");
  }
  if (!doc["dim"].is_object()) fail("'dim' must be an object");
  t.dims.assign(n, Number(0));
  std::vector<bool> has_dim(n, false);
  for (const auto& [key, value] : doc["dim"].items()) {
    const std::size_t i = lookup(json(key), "dim");
    if (value.is_string()) {
      t.dims[i] = Number::parse(trim(value.get<std::string>()));
    } else if (value.is_number_integer()) {
      t.dims[i] = Number(value.get<long long>());
    } else if (value.is_number()) {
      t.dims[i] = Number::parse(value.dump());
    } else {
      fail("dim values must be numbers or decimal strings");
    }
    has_dim[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.conj[i] == n) fail("missing conj for label '" + t.names[i] + "'");
    if (!has_dim[i]) fail("missing dim for label '" + t.names[i] + "'");
  }

  if (!doc["fusion"].is_array()) fail("'fusion' must be an array of [a, b, c, N]");
  for (const auto& triple : doc["fusion"]) {
    if (!triple.is_array() || triple.size() != 4) fail("fusion entries must be [a, b, c, N]");
    const std::size_t a = lookup(triple[0], "fusion");
    const std::size_t b = lookup(triple[1], "fusion");
    const std::size_t c = lookup(triple[2], "fusion");
    const json& coeff = triple[3];
    if (!coeff.is_number_integer() || coeff.get<long long>() < 0) {
      throw InputError("non-integer fusion coefficient " + coeff.dump() + " for (" + t.names[a] + "," +
                       t.names[b] + ";" + t.names[c] + ")");
    }
    auto& slot = t.fusion[{a, b}][c];
    if (slot != 0) fail("duplicate fusion entry (" + t.names[a] + "," + t.names[b] + ";" + t.names[c] + ")");
    slot = coeff.get<std::uint64_t>();
  }

  if (doc.contains("generators")) {
    for (const auto& g : doc["generators"]) t.generators.push_back(lookup(g, "generators"));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != t.unit) t.generators.push_back(i);
    }
  }
  return FusionRing(std::make_shared<FiniteRule>(std::move(t)), mode);
}

std::string write_ring_file(const FusionRing& ring) {
  if (!ring.finite()) throw InputError("only finite rings can be written to a file");
  nlohmann::ordered_json doc;
  doc["name"] = ring.spec();
  const auto labels = ring.labels();
  doc["labels"] = nlohmann::ordered_json::array();
  for (Label l : labels) doc["labels"].push_back(ring.name(l));
  doc["unit"] = ring.name(ring.unit());
  for (Label l : labels) doc["conj"][ring.name(l)] = ring.name(ring.conj(l));
  for (Label l : labels) doc["dim"][ring.name(l)] = ring.dim(l).str();
  doc["fusion"] = nlohmann::ordered_json::array();
  for (Label a : labels) {
    for (Label b : labels) {
      for (const FusionTerm& t : ring.fuse(a, b)) {
        doc["fusion"].push_back({ring.name(a), ring.name(b), ring.name(t.label), t.multiplicity});
      }
    }
  }
  doc["generators"] = nlohmann::ordered_json::array();
  for (Label g : ring.generators()) doc["generators"].push_back(ring.name(g));
  return doc.dump(2) + "\n";
}

FusionRing load_ring(std::string_view source, ArithmeticMode mode) {
  const std::string text = trim(source);
  if (text.empty()) throw InputError("empty ring spec");
  if (text.front() == '{') return parse_ring_file(text, mode);
  if (text.ends_with(".fusion") || std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    if (!in) throw InputError("cannot read ring file '" + text + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_ring_file(buffer.str(), mode);
  }
  return FusionRing(parse_rule(text), mode);
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"cyclic:n", "group ring of Z/n, labels 0..n-1, generator 1"},
      {"int", "group ring of Z, labels are integers, generator g = 1"},
      {"free:k", "group ring of the free group F_k, reduced words over a,A=a^-1,b,B,...; generators a,b,..."},
      {"tl:δ", "Temperley-Lieb / SU(2)_q fusion with q+1/q = δ >= 2, labels a0,a1,...; generator a1"},
      {"su2:k", "level-k SU(2) Verlinde fusion, labels 0..k; generator 1"},
      {"fibonacci", "labels 1, tau with tau*tau = 1 + tau"},
      {"ising", "labels 1, sigma, psi with sigma*sigma = 1 + psi"},
      {"product:<spec>,<spec>", "Deligne product of two rings, labels (x,y)"},
  };
}

}  // namespace fusionlab
