#include "pisdim/constructions.hpp"

#include <algorithm>

#include "pisdim/error.hpp"

namespace pisdim {
namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

bool admissible_group(int size) { return size == 0 || size >= 4; }

// Vector with every slot full except the given overrides.
IdealVec full_except(const RingSpec& spec, std::size_t slot, int value) {
  IdealVec v = spec.unit();
  v.idx[slot] = value;
  return v;
}

// Slot category under the chain-case equivalence.
int category(const ChainComponent& c, int j) {
  if (j == c.unit_index()) return 2;
  if (j == c.maximal_index()) return 1;
  return 0;
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::ReducedN3: return "reduced_n3";
    case TheoremId::ReducedGeneral: return "reduced_general";
    case TheoremId::ThreeN1: return "three_n1";
    case TheoremId::ThreeSmall: return "three_small";
    case TheoremId::ThreeGeneral: return "three_general";
    case TheoremId::ChainGeneral: return "chain_general";
    case TheoremId::ChainC4: return "chain_c4";
    case TheoremId::ChainN1Small: return "chain_n1_small";
    case TheoremId::MixedCorollary: return "mixed_corollary";
  }
  return "?";
}

std::int64_t mixed_formula_unchecked(const RingSpec& spec) {
  const auto v = static_cast<std::int64_t>(spec.vertex_count());
  return v - ipow(3, spec.n_big() + spec.n_three()) * ipow(2, spec.n_field()) + 2 * spec.n_three() +
         spec.n_field() + 2;
}

std::optional<FormulaResult> formula_metric_dim(const RingSpec& spec) {
  const int n = static_cast<int>(spec.arity());
  const int big = spec.n_big(), three = spec.n_three(), field = spec.n_field();
  const auto v = static_cast<std::int64_t>(spec.vertex_count());

  if (field == n) {
    if (n == 3) return FormulaResult{2, TheoremId::ReducedN3, "product of three fields"};
    if (n >= 4)
      return FormulaResult{n, TheoremId::ReducedGeneral, "product of n >= 4 fields: n"};
    return std::nullopt;  // single field or two fields
  }
  if (three == n) {
    if (n == 1) return FormulaResult{0, TheoremId::ThreeN1, "one nontrivial ideal: single vertex"};
    if (n <= 3)
      return FormulaResult{2 * n - 1, TheoremId::ThreeSmall, "n in {2,3} unique-nontrivial-ideal factors: 2n-1"};
    return FormulaResult{2 * n, TheoremId::ThreeGeneral, "n >= 4 unique-nontrivial-ideal factors: 2n"};
  }
  if (big == n) {
    if (n == 1 && spec.ideals(0) == 4)
      return FormulaResult{1, TheoremId::ChainN1Small, "single chain ring with two nontrivial ideals"};
    const bool all_four = std::ranges::all_of(spec.components(), [](const auto& c) { return c.ideals == 4; });
    const auto value = v - ipow(3, n) + 1;
    if (all_four) return FormulaResult{value, TheoremId::ChainC4, "n >= 2 factors with two nontrivial ideals: 4^n-3^n-1"};
    return FormulaResult{value, TheoremId::ChainGeneral, "chain factors with >= 2 nontrivial ideals: |V|-3^n+1"};
  }
  // At least two groups are nonempty here.
  if (admissible_group(big) && admissible_group(three) && admissible_group(field))
    return FormulaResult{mixed_formula_unchecked(spec), TheoremId::MixedCorollary,
                         "groups of sizes (" + std::to_string(big) + "," + std::to_string(three) + "," +
                             std::to_string(field) + "), each 0 or >= 4"};
  return std::nullopt;
}

std::vector<std::size_t> Construction::indices(const RingSpec& spec) const {
  std::vector<std::size_t> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(vertex_index(spec, m));
  std::ranges::sort(out);
  return out;
}

std::vector<int> chain_class_signature(const RingSpec& spec, const IdealVec& a) {
  spec.check(a);
  std::vector<int> sig(spec.arity());
  for (std::size_t i = 0; i < spec.arity(); ++i) sig[i] = category(spec.components()[i], a.idx[i]);
  return sig;
}

Construction construct_mixed(const RingSpec& spec) {
  Construction out{TheoremId::MixedCorollary, {}};
  // V1: vertices with some c>=4 slot strictly between 0 and the maximal ideal.
  for (auto& v : enumerate_ideals(spec, true)) {
    bool inside = false;
    for (std::size_t i = 0; i < spec.arity(); ++i) {
      const auto& c = spec.components()[i];
      if (c.ideals >= 4 && category(c, v.idx[i]) == 0 && v.idx[i] != 0) inside = true;
    }
    if (inside) out.members.push_back(std::move(v));
  }
  // V2 = B ∪ C over the c=3 slots, V3 over the field slots.
  for (std::size_t i = 0; i < spec.arity(); ++i)
    if (spec.ideals(i) == 3) out.members.push_back(full_except(spec, i, 0));
  for (std::size_t i = 0; i < spec.arity(); ++i)
    if (spec.ideals(i) == 3) out.members.push_back(full_except(spec, i, 1));
  for (std::size_t i = 0; i < spec.arity(); ++i)
    if (spec.ideals(i) == 2) out.members.push_back(full_except(spec, i, 0));
  return out;
}

Construction construct_resolving(const RingSpec& spec) {
  const auto formula = formula_metric_dim(spec);
  if (!formula) throw Error(ErrorKind::NotCovered, spec.canonical() + " is not covered by a closed form");
  const auto n = spec.arity();
  Construction out{formula->theorem, {}};
  switch (formula->theorem) {
    case TheoremId::ReducedN3:
      out.members = {IdealVec{{0, 1, 1}}, IdealVec{{1, 0, 1}}};
      break;
    case TheoremId::ReducedGeneral:
      out.members = spec.maximal_ideals();
      break;
    case TheoremId::ThreeN1:
      break;
    case TheoremId::ThreeSmall:
      if (n == 2) {
        out.members = {IdealVec{{2, 0}}, IdealVec{{0, 2}}, IdealVec{{2, 1}}};
      } else {
        out.members = {IdealVec{{0, 2, 2}}, IdealVec{{2, 0, 2}}, IdealVec{{2, 2, 0}},
                       IdealVec{{2, 1, 1}}, IdealVec{{1, 1, 2}}};
      }
      break;
    case TheoremId::ThreeGeneral:
      // A: one zero slot, B = Max(R): one maximal slot.
      for (std::size_t i = 0; i < n; ++i) out.members.push_back(full_except(spec, i, 0));
      for (auto& m : spec.maximal_ideals()) out.members.push_back(std::move(m));
      break;
    case TheoremId::ChainN1Small:
      out.members = {IdealVec{{1}}};
      break;
    case TheoremId::ChainGeneral:
    case TheoremId::ChainC4: {
      // Everything except the {0, m, R}-vectors and K = (1, ..., 1).
      const IdealVec k{std::vector<int>(n, 1)};
      for (auto& v : enumerate_ideals(spec, true)) {
        if (v == k) continue;
        bool in_a = true;
        for (std::size_t i = 0; i < n; ++i) {
          const auto& c = spec.components()[i];
          if (v.idx[i] != 0 && category(c, v.idx[i]) == 0) in_a = false;
        }
        if (!in_a) out.members.push_back(std::move(v));
      }
      break;
    }
    case TheoremId::MixedCorollary:
      out = construct_mixed(spec);
      break;
  }
  return out;
}

}  // namespace pisdim
