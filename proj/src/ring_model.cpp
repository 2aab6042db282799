#include "pisdim/ring_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>

#include "pisdim/error.hpp"

namespace pisdim {
namespace {

constexpr std::uint64_t kMaxTotalIdeals = std::uint64_t{1} << 62;

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

std::optional<PrimePower> as_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{n, 1};
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return PrimePower{p, k};
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_number(std::string_view digits, std::string_view token) {
  digits = trim(digits);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
    throw Error(ErrorKind::SyntaxError, "bad number in token '" + std::string(token) + "'");
  return value;
}

// Strips "prefix(" ... ")" and returns the inside, if the token has that shape.
std::optional<std::string_view> call_argument(std::string_view token, std::string_view prefix) {
  if (!token.starts_with(prefix)) return std::nullopt;
  auto rest = trim(token.substr(prefix.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return std::nullopt;
  return rest.substr(1, rest.size() - 2);
}

ChainComponent parse_component(std::string_view token) {
  const std::string tok(token);
  if (auto arg = call_argument(token, "GF")) {
    const auto q = parse_number(*arg, token);
    if (!as_prime_power(q))
      throw Error(ErrorKind::SyntaxError, "no field of order " + std::to_string(q));
    return {2, ChainComponent::Notation::Field, q, "GF(" + std::to_string(q) + ")"};
  }
  if (auto arg = call_argument(token, "chain")) {
    const auto c = parse_number(*arg, token);
    if (c < 2 || c > 1'000'000)
      throw Error(ErrorKind::SyntaxError, "chain(c) needs 2 <= c, got '" + tok + "'");
    return {static_cast<int>(c), ChainComponent::Notation::Chain, 0, ""};
  }
  if (token.size() >= 2 && (token.front() == 'F' || token.front() == 'Z') &&
      std::isdigit(static_cast<unsigned char>(token[1]))) {
    const auto n = parse_number(token.substr(1), token);
    if (token.front() == 'F') {
      if (!as_prime_power(n))
        throw Error(ErrorKind::SyntaxError, "no field of order " + std::to_string(n));
      return {2, ChainComponent::Notation::Field, n, tok};
    }
    if (n < 2) throw Error(ErrorKind::SyntaxError, "Z" + std::to_string(n) + " is not a nonzero ring");
    const auto pp = as_prime_power(n);
    if (!pp)
      throw Error(ErrorKind::NotChainRing,
                  tok + " is not local; write it as a product of prime-power factors");
    return {pp->exponent + 1, ChainComponent::Notation::Zmod, n, tok};
  }
  throw Error(ErrorKind::SyntaxError, "unrecognised component '" + tok + "'");
}

RingSpec parse_count_list(std::string_view text) {
  auto inner = trim(text.substr(1, text.size() - 2));
  std::vector<int> counts;
  while (!inner.empty()) {
    const auto comma = inner.find(',');
    const auto item = inner.substr(0, comma);
    const auto c = parse_number(item, text);
    if (c < 2 || c > 1'000'000)
      throw Error(ErrorKind::SyntaxError, "ideal counts must be >= 2 in '" + std::string(text) + "'");
    counts.push_back(static_cast<int>(c));
    if (comma == std::string_view::npos) break;
    inner = inner.substr(comma + 1);
    if (trim(inner).empty()) throw Error(ErrorKind::SyntaxError, "trailing comma");
  }
  if (counts.empty()) throw Error(ErrorKind::SyntaxError, "empty component list");
  return RingSpec::from_counts(counts);
}

}  // namespace

std::string ChainComponent::ideal_label(int j) const {
  if (j == 0) return "0";
  if (j == unit_index()) return name;
  switch (notation) {
    case Notation::Field:
      return name;  // unreachable: fields have only 0 and the unit ideal
    case Notation::Zmod: {
      const auto pp = as_prime_power(order);
      return "(" + std::to_string(ipow(pp->prime, pp->exponent - j)) + ")";
    }
    case Notation::Chain:
      break;
  }
  // Chain index j is the ideal m^(c-1-j).
  const std::string m = "m" + name.substr(1);
  const int e = unit_index() - j;
  return e == 1 ? m : m + "^" + std::to_string(e);
}

RingSpec::RingSpec(std::vector<ChainComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::SyntaxError, "a ring needs at least one component");
  total_ideals_ = 1;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    auto& c = components_[i];
    if (c.ideals < 2) throw Error(ErrorKind::SyntaxError, "a component needs at least two ideals");
    if (c.name.empty()) c.name = "R" + std::to_string(i + 1);
    if (total_ideals_ > kMaxTotalIdeals / static_cast<std::uint64_t>(c.ideals))
      throw Error(ErrorKind::TooLarge, "ideal count overflows");
    total_ideals_ *= static_cast<std::uint64_t>(c.ideals);
  }
}

RingSpec RingSpec::from_counts(const std::vector<int>& counts) {
  std::vector<ChainComponent> comps;
  comps.reserve(counts.size());
  for (int c : counts) comps.push_back({c, ChainComponent::Notation::Chain, 0, ""});
  return RingSpec(std::move(comps));
}

std::vector<int> RingSpec::counts() const {
  std::vector<int> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.ideals);
  return out;
}

bool RingSpec::is_reduced() const noexcept { return n_field() == static_cast<int>(arity()); }

int RingSpec::n_big() const noexcept {
  return static_cast<int>(std::ranges::count_if(components_, [](const auto& c) { return c.ideals >= 4; }));
}
int RingSpec::n_three() const noexcept {
  return static_cast<int>(std::ranges::count_if(components_, [](const auto& c) { return c.ideals == 3; }));
}
int RingSpec::n_field() const noexcept {
  return static_cast<int>(std::ranges::count_if(components_, [](const auto& c) { return c.ideals == 2; }));
}

std::string RingSpec::canonical() const {
  std::string out = "[";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(components_[i].ideals);
  }
  return out + "]";
}

std::string RingSpec::label(const IdealVec& a) const {
  check(a);
  std::string out;
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i) out += "×";
    out += components_[i].ideal_label(a.idx[i]);
  }
  return out;
}

IdealVec RingSpec::zero() const { return {std::vector<int>(arity(), 0)}; }

IdealVec RingSpec::unit() const {
  IdealVec v;
  for (const auto& c : components_) v.idx.push_back(c.unit_index());
  return v;
}

IdealVec RingSpec::jacobson() const {
  IdealVec v;
  for (const auto& c : components_) v.idx.push_back(c.maximal_index());
  return v;
}

std::vector<IdealVec> RingSpec::maximal_ideals() const {
  std::vector<IdealVec> out;
  for (std::size_t t = 0; t < arity(); ++t) {
    IdealVec v = unit();
    v.idx[t] = components_[t].maximal_index();
    out.push_back(std::move(v));
  }
  return out;
}

void RingSpec::check(const IdealVec& a) const {
  if (a.size() != arity())
    throw Error(ErrorKind::LengthMismatch, "ideal has " + std::to_string(a.size()) +
                                               " slots, ring has " + std::to_string(arity()));
  for (std::size_t i = 0; i < arity(); ++i)
    if (a.idx[i] < 0 || a.idx[i] >= components_[i].ideals)
      throw Error(ErrorKind::SyntaxError, "ideal index out of range in slot " + std::to_string(i));
}

bool RingSpec::is_vertex(const IdealVec& a) const { return a != zero() && a != unit(); }

RingSpec parse_ring_spec(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorKind::SyntaxError, "empty ring specification");
  if (text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorKind::SyntaxError, "unterminated component list");
    return parse_count_list(text);
  }
  // Normalise the multiplication sign to 'x' before splitting.
  std::string normalised(text);
  for (std::size_t pos; (pos = normalised.find("×")) != std::string::npos;)
    normalised.replace(pos, std::string_view("×").size(), "x");

  std::vector<ChainComponent> comps;
  std::string_view rest = normalised;
  while (true) {
    const auto sep = rest.find('x');
    const auto token = trim(rest.substr(0, sep));
    if (token.empty()) throw Error(ErrorKind::SyntaxError, "empty factor in '" + std::string(text) + "'");
    comps.push_back(parse_component(token));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 1);
  }
  return RingSpec(std::move(comps));
}

std::vector<IdealVec> enumerate_ideals(const RingSpec& spec, bool vertices_only) {
  const auto n = spec.arity();
  std::vector<IdealVec> out;
  out.reserve(vertices_only ? spec.vertex_count() : spec.total_ideals());
  IdealVec cur = spec.zero();
  for (std::uint64_t r = 0; r < spec.total_ideals(); ++r) {
    if (!vertices_only || (r != 0 && r + 1 != spec.total_ideals())) out.push_back(cur);
    // Mixed-radix increment, last slot fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++cur.idx[i] < spec.ideals(i)) break;
      cur.idx[i] = 0;
    }
  }
  return out;
}

IdealVec ideal_sum(const IdealVec& a, const IdealVec& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::LengthMismatch, "cannot add ideals of different arity");
  IdealVec s;
  s.idx.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s.idx[i] = std::max(a.idx[i], b.idx[i]);
  return s;
}

bool is_prime(const IdealVec& a, const RingSpec& spec) {
  spec.check(a);
  int maximal_slots = 0;
  for (std::size_t i = 0; i < spec.arity(); ++i) {
    const auto& c = spec.components()[i];
    if (a.idx[i] == c.maximal_index())
      ++maximal_slots;
    else if (a.idx[i] != c.unit_index())
      return false;
  }
  return maximal_slots == 1;
}

bool in_jacobson(const IdealVec& a, const RingSpec& spec) {
  spec.check(a);
  for (std::size_t i = 0; i < spec.arity(); ++i)
    if (a.idx[i] > spec.components()[i].maximal_index()) return false;
  return true;
}

std::size_t vertex_index(const RingSpec& spec, const IdealVec& a) {
  spec.check(a);
  if (!spec.is_vertex(a)) throw Error(ErrorKind::SyntaxError, "trivial ideal is not a vertex");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < spec.arity(); ++i)
    rank = rank * static_cast<std::uint64_t>(spec.ideals(i)) + static_cast<std::uint64_t>(a.idx[i]);
  return static_cast<std::size_t>(rank - 1);
}

}  // namespace pisdim
