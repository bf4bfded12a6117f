#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "restrace/graphs.hpp"
#include "restrace/word.hpp"

namespace restrace {

using GraphRef = std::shared_ptr<const DeviceGraph>;

inline GraphRef share(DeviceGraph g) { return std::make_shared<const DeviceGraph>(std::move(g)); }

/// One firing of a generator, whiskered by `left` and `right`: left ▷ gen ◁ right.
struct Event {
  Name gen;
  Word left;
  Word right;

  /// Position of the span in the boundary the event acts on.
  [[nodiscard]] std::size_t start() const { return left.size(); }

  auto operator<=>(const Event&) const = default;
  bool operator==(const Event&) const = default;
};

/// `gen [left | right]`
std::string to_string(const Event& e);

/// A morphism of the free premonoidal category over a device graph: a flat,
/// boundary-threaded sequence of whiskered generators. Associativity and unit
/// laws hold on the representation; equality up to interchange is decided by
/// `morphisms_equal`.
class Morphism {
public:
  /// Checks boundary threading from `source`; throws UnknownName or BoundaryMismatch.
  Morphism(GraphRef graph, Word source, std::vector<Event> events);

  [[nodiscard]] const GraphRef& graph() const { return graph_; }
  [[nodiscard]] const Word& source() const { return source_; }
  [[nodiscard]] const Word& target() const { return target_; }
  [[nodiscard]] const std::vector<Event>& events() const { return events_; }
  [[nodiscard]] std::size_t size() const { return events_.size(); }
  [[nodiscard]] bool is_identity() const { return events_.empty(); }

  /// The boundary before event `i`; `boundary(size())` is the target.
  [[nodiscard]] Word boundary(std::size_t i) const;
  [[nodiscard]] const Signature& signature(std::size_t i) const { return graph_->signature(events_[i].gen); }

  /// Same graph, same boundaries, identical event sequence.
  [[nodiscard]] bool same_representation(const Morphism& other) const;

private:
  GraphRef graph_;
  Word source_;
  Word target_;
  std::vector<Event> events_;
};

/// Graphs are the same if they are the same object or compare equal.
bool same_graph(const GraphRef& a, const GraphRef& b);

Morphism identity(GraphRef g, Word w);
Morphism gen_event(GraphRef g, Word left, const Name& gen, Word right);
/// Throws GraphMismatch or BoundaryMismatch.
Morphism compose(const Morphism& u, const Morphism& v);
Morphism left_whisker(const Word& a, const Morphism& f);
Morphism right_whisker(const Morphism& f, const Word& a);

std::set<Name> devices_of(const Morphism& f);

enum class SwapBlock { None, SharedDevice, OverlappingSpan };

/// Whether events k and k+1 may interchange. Throws IndexOutOfRange.
SwapBlock swap_block(const Morphism& f, std::size_t k);

/// Every representation obtained by interchanging events k and k+1. Empty when
/// they may not interchange; two results when both events have zero width at
/// the meeting point and either may end up on the left.
std::vector<Morphism> swap_results(const Morphism& f, std::size_t k);

/// Interchanges events k and k+1, preferring the right-hand placement when
/// both placements are legal. Swapping the result back at k always can
/// return `f`; it does whenever the result has a single placement.
/// Throws NotSwappable or IndexOutOfRange.
Morphism swap_adjacent(const Morphism& f, std::size_t k);

/// Strand identifiers for every boundary. Strands 0..|source|-1 are the
/// source strands; every event then emits fresh identifiers in order.
struct StrandThreading {
  std::vector<std::vector<std::size_t>> boundaries;  // size() == events + 1
  std::vector<std::vector<std::size_t>> consumed;    // per event
  std::vector<std::vector<std::size_t>> emitted;     // per event
  std::size_t strand_count = 0;
};

StrandThreading thread_strands(const Morphism& f);

/// Edges i -> j (i < j) between events sharing a device or a strand.
struct DependenceRelation {
  std::size_t size = 0;
  std::set<std::pair<std::size_t, std::size_t>> device_edges;
  std::set<std::pair<std::size_t, std::size_t>> wire_edges;

  [[nodiscard]] bool depends(std::size_t i, std::size_t j) const {
    return device_edges.count({i, j}) != 0 || wire_edges.count({i, j}) != 0;
  }
};

DependenceRelation dependence(const Morphism& f);

/// Layered canonical representative of a morphism's interchange class.
struct CanonicalForm {
  Word source;
  Word target;
  std::vector<Event> events;
  std::vector<std::size_t> heights;  // 1-based layer per event, nondecreasing

  [[nodiscard]] std::size_t layer_count() const { return heights.empty() ? 0 : heights.back(); }
  /// Events grouped by layer.
  [[nodiscard]] std::vector<std::vector<Event>> layers() const;
  /// Injective textual key, suitable for hashing and ordering.
  [[nodiscard]] std::string key() const;

  bool operator==(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const Morphism& f);

/// The canonical form as a morphism (events in canonical order).
Morphism canonical_morphism(const Morphism& f);

/// Throws GraphMismatch.
bool morphisms_equal(const Morphism& f, const Morphism& g);

enum class Equivalence { Equal, Unequal, Inconclusive };

/// Every representation reachable from `f` by legal adjacent swaps, in
/// breadth-first order; nullopt if more than `max_states` are reachable.
std::optional<std::vector<Morphism>> swap_closure(const Morphism& f, std::size_t max_states);

/// Independent decision of the interchange congruence by exhaustive search.
Equivalence bfs_equiv(const Morphism& f, const Morphism& g, std::size_t max_states);

/// f ∥ g: (f ⋊ A')(B ⋉ g) = (A ⋉ g)(f ⋊ B') for f : A → B, g : A' → B'.
bool parallel(const Morphism& f, const Morphism& g);

/// f ∥ g and g ∥ f. Throws GraphMismatch.
bool interchange_holds(const Morphism& f, const Morphism& g);

/// f ⊗ g := (f ⋊ dom g)(cod f ⋉ g). Throws NotPure when a generator carries devices.
Morphism tensor_pure(const Morphism& f, const Morphism& g);

/// The free effectful category on an effectful graph: a free monoidal
/// category on the pure part (realised over its device-free graph) and a
/// free premonoidal category on the impure part.
class FreeEffectfulCategory {
public:
  /// Throws InvalidMorphism when the effectful graph does not validate.
  explicit FreeEffectfulCategory(EffectfulGraph graph);

  [[nodiscard]] const EffectfulGraph& graph() const { return graph_; }
  [[nodiscard]] const GraphRef& pure_side() const { return pure_side_; }
  [[nodiscard]] const GraphRef& impure_side() const { return impure_side_; }

private:
  EffectfulGraph graph_;
  GraphRef pure_side_;
  GraphRef impure_side_;
};

/// Maps a pure morphism through the embedding. Throws GraphMismatch when `f`
/// is not over the pure side, UnknownName for an unembedded generator.
Morphism embed_pure(const FreeEffectfulCategory& cat, const Morphism& f);

/// Applies the strict premonoidal functor induced by a device-graph morphism.
/// Throws InvalidMorphism if `alpha` fails the device-graph morphism check.
Morphism map_morphism(const DeviceGraphMorphism& alpha, const GraphRef& target, const Morphism& f);

/// Canonical-form-distinct morphisms with at most `max_events` events whose
/// source and target are both in `pool`, ordered by event count then by
/// canonical key. Throws BudgetExceeded when more than `cap` morphisms are
/// generated at any stage.
std::vector<Morphism> enumerate_morphisms(const GraphRef& g, std::size_t max_events,
                                          const std::vector<Word>& pool, std::size_t cap = 100000);

} // namespace restrace
