#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pisdim {

// A local chain ring (every ideal is a power of the maximal ideal), described
// by the length of its ideal chain. Ideal index j runs from 0 (zero ideal) to
// c-1 (the whole component); index c-2 is the maximal ideal, and containment
// follows index order.
struct ChainComponent {
  enum class Notation { Chain, Field, Zmod };

  int ideals = 2;
  Notation notation = Notation::Chain;
  // q for GF(q), n for Z<n>, unused for chain(c).
  std::uint64_t order = 0;
  // Display name of the whole component ("Z4", "GF(3)", "R2").
  std::string name;

  bool is_field() const noexcept { return ideals == 2; }
  int maximal_index() const noexcept { return ideals - 2; }
  int unit_index() const noexcept { return ideals - 1; }

  // Human-readable name of ideal `j`, e.g. "(2)" in Z4 or "m1^2" in a chain.
  std::string ideal_label(int j) const;

  friend bool operator==(const ChainComponent& a, const ChainComponent& b) {
    return a.ideals == b.ideals;
  }
};

// An ideal of the product ring, one chain index per component.
struct IdealVec {
  std::vector<int> idx;

  std::size_t size() const noexcept { return idx.size(); }
  int operator[](std::size_t i) const { return idx[i]; }

  friend auto operator<=>(const IdealVec&, const IdealVec&) = default;
};

class RingSpec {
 public:
  RingSpec() = default;
  explicit RingSpec(std::vector<ChainComponent> components);

  // Components named R1, R2, ... with the given ideal counts.
  static RingSpec from_counts(const std::vector<int>& counts);

  const std::vector<ChainComponent>& components() const noexcept { return components_; }
  std::size_t arity() const noexcept { return components_.size(); }
  int ideals(std::size_t i) const { return components_[i].ideals; }
  std::vector<int> counts() const;

  std::uint64_t total_ideals() const noexcept { return total_ideals_; }
  std::uint64_t vertex_count() const noexcept { return total_ideals_ - 2; }

  bool is_reduced() const noexcept;
  int n_big() const noexcept;    // components with c >= 4
  int n_three() const noexcept;  // components with c == 3
  int n_field() const noexcept;  // components with c == 2

  // "[3,2,2]"
  std::string canonical() const;
  std::string label(const IdealVec& a) const;

  IdealVec zero() const;
  IdealVec unit() const;
  IdealVec jacobson() const;
  // Max(R) in component order: slot t maximal, every other slot full.
  std::vector<IdealVec> maximal_ideals() const;

  bool is_vertex(const IdealVec& a) const;
  // Throws LengthMismatch or SyntaxError when `a` is not an ideal of this ring.
  void check(const IdealVec& a) const;

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<ChainComponent> components_;
  std::uint64_t total_ideals_ = 0;
};

// Grammar: tokens separated by 'x' (or U+00D7), each one of GF(q), F<q>,
// Z<n> with n a prime power, or chain(c). A bracketed list "[3,2,2]" is
// accepted as the canonical form.
RingSpec parse_ring_spec(std::string_view text);

// Lexicographic order on idx (last component varies fastest).
std::vector<IdealVec> enumerate_ideals(const RingSpec& spec, bool vertices_only);

IdealVec ideal_sum(const IdealVec& a, const IdealVec& b);
bool is_prime(const IdealVec& a, const RingSpec& spec);
bool in_jacobson(const IdealVec& a, const RingSpec& spec);

// Position of a vertex in enumerate_ideals(spec, true).
std::size_t vertex_index(const RingSpec& spec, const IdealVec& a);

}  // namespace pisdim
