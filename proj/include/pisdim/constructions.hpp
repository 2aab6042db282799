#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pisdim/pis_graph.hpp"
#include "pisdim/ring_model.hpp"

namespace pisdim {

// Stable identifiers of the closed-form cases.
enum class TheoremId {
  ReducedN3,        // product of three fields
  ReducedGeneral,   // product of n >= 4 fields
  ThreeN1,          // single component with one nontrivial ideal
  ThreeSmall,       // n = 2, 3 components with one nontrivial ideal each
  ThreeGeneral,     // n >= 4 such components
  ChainGeneral,     // chain components with >= 2 nontrivial ideals
  ChainC4,          // n >= 2 chain components with exactly 2 nontrivial ideals
  ChainN1Small,     // single chain component with exactly 2 nontrivial ideals
  MixedCorollary,   // fields, c=3 and c>=4 groups, each group empty or >= 4
};

std::string_view theorem_name(TheoremId id);

struct FormulaResult {
  std::int64_t value = 0;
  TheoremId theorem = TheoremId::ReducedN3;
  std::string hypothesis_note;
};

// Closed-form metric dimension, or nullopt when no case applies. The vertex
// count Π c_i - 2 plays the role of the number of nontrivial ideals.
std::optional<FormulaResult> formula_metric_dim(const RingSpec& spec);

// |V| - 3^(n_big + n_three) 2^n_field + 2 n_three + n_field + 2, evaluated
// without checking the group-size side condition.
std::int64_t mixed_formula_unchecked(const RingSpec& spec);

struct Construction {
  TheoremId theorem = TheoremId::ReducedN3;
  std::vector<IdealVec> members;  // in the listing order of the construction

  std::vector<std::size_t> indices(const RingSpec& spec) const;  // ascending
};

// Resolving set for the covered case. Throws NotCovered otherwise.
Construction construct_resolving(const RingSpec& spec);

// The three-part set V1 ∪ V2 ∪ V3 for a mixed product, built for any group
// sizes (the side condition is not checked). Only informational below the
// admissible sizes.
Construction construct_mixed(const RingSpec& spec);

// The equivalence used for the chain case: slots agree on "below the maximal
// ideal", "maximal" or "unit". Returns the class key per slot (0, 1, 2).
std::vector<int> chain_class_signature(const RingSpec& spec, const IdealVec& a);

}  // namespace pisdim
