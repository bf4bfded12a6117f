#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "restrace/freecat.hpp"
#include "restrace/graphs.hpp"

namespace restrace {

/// Tags on generators and devices of the two factors.
inline const std::string kLeftTag = "l·";
inline const std::string kRightTag = "r·";

struct TensorResult {
  EffectfulGraph product;
  EffectfulGraphMorphism left;
  EffectfulGraphMorphism right;
};

/// The commuting tensor product over a shared pure part. Embedded pure
/// generators are identified under their pure name; all other generators and
/// all devices are tagged by side. Throws PureMismatch.
TensorResult commuting_tensor(const EffectfulGraph& g, const EffectfulGraph& h);

/// Legs into a free effectful category `apex`, each induced by a morphism of
/// effectful graphs.
struct Cospan {
  EffectfulGraph apex;
  EffectfulGraphMorphism left;
  EffectfulGraphMorphism right;
};

/// Morphisms with at most `max_events` events between words of `pool`.
struct SampleBudget {
  std::size_t max_events = 2;
  std::vector<Word> pool;
  std::size_t cap = 100000;
};

/// For every f in `left` and g in `right` (morphisms over g.impure and
/// h.impure), P(f) ∥ Q(g) in the apex.
bool is_commuting_cospan(const EffectfulGraph& g, const EffectfulGraph& h, const Cospan& k,
                         const std::vector<Morphism>& left, const std::vector<Morphism>& right);
/// Samples both sides with enumerate_morphisms. Throws BudgetExceeded.
bool is_commuting_cospan(const EffectfulGraph& g, const EffectfulGraph& h, const Cospan& k,
                         const SampleBudget& budget);

/// The map l·x ↦ P(x), r·y ↦ Q(y) out of the product, with identified pure
/// generators sent to their common image. Throws PureDisagreement when the
/// legs differ on the shared pure part and NotCommuting when the sampled
/// cospan does not commute.
EffectfulGraphMorphism mediating_morphism(const EffectfulGraph& g, const EffectfulGraph& h, const TensorResult& t,
                                          const Cospan& k, const SampleBudget& budget);

struct TensorReport {
  std::size_t cross_pairs = 0;
  std::size_t cross_failures = 0;
  std::size_t left_pairs = 0;
  std::size_t left_interfering = 0;
  std::size_t cospans = 0;
  std::size_t mediators_unique = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Desk-scale check that F(G ⊙ H) behaves as the commuting tensor of F(G) and
/// F(H): sampled left and right images interchange, and the cospans into the
/// product and into the threefold product G ⊙ H ⊙ H have exactly one
/// mediating generator map.
TensorReport theorem54_check(const EffectfulGraph& g, const EffectfulGraph& h, const SampleBudget& budget);

} // namespace restrace
