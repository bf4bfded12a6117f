#pragma once

#include <set>
#include <utility>
#include <vector>

#include "restrace/freecat.hpp"
#include "restrace/graphs.hpp"

namespace restrace {

using Symbol = Name;
using TraceWord = std::vector<Symbol>;

/// A reflexive, symmetric relation on a finite alphabet. Pairs are stored
/// with the smaller symbol first; reflexive pairs are always present.
class DependencyRelation {
public:
  DependencyRelation() = default;
  /// Throws UnknownName when a pair mentions a symbol outside the alphabet.
  DependencyRelation(std::set<Symbol> alphabet, const std::vector<std::pair<Symbol, Symbol>>& pairs);

  [[nodiscard]] const std::set<Symbol>& alphabet() const { return alphabet_; }
  [[nodiscard]] const std::set<std::pair<Symbol, Symbol>>& pairs() const { return pairs_; }
  [[nodiscard]] bool dependent(const Symbol& a, const Symbol& b) const;
  /// Pairs {a, b} with a ≠ b.
  [[nodiscard]] std::vector<std::pair<Symbol, Symbol>> proper_pairs() const;

  bool operator==(const DependencyRelation&) const = default;

private:
  std::set<Symbol> alphabet_;
  std::set<std::pair<Symbol, Symbol>> pairs_;
};

/// Foata normal form: layers of pairwise independent letters, each sorted.
using FoataLayers = std::vector<std::vector<Symbol>>;

/// Throws UnknownName for a letter outside the alphabet.
FoataLayers foata_nf(const DependencyRelation& d, const TraceWord& w);

/// Equal letter counts and equal projections onto every dependent pair.
bool trace_equal_projection(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2);
bool trace_equal_foata(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2);
/// Both criteria; throws Error should they ever disagree.
bool trace_equal(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2);

/// Empty object set, every generator typed ε → ε.
Violations validate_distribution(const DeviceGraph& d);

/// One device per non-trivial maximal clique of the graph of `d`, named by
/// its sorted members joined with '+'.
DeviceGraph dependency_to_distribution(const DependencyRelation& d);

/// Symbols are dependent when their device sets meet. Throws InvalidMorphism
/// when `d` is not a distribution.
DependencyRelation distribution_to_dependency(const DeviceGraph& d);

/// Inclusion of relations. Throws AlphabetMismatch.
bool dep_leq(const DependencyRelation& a, const DependencyRelation& b);
/// `a ≥ b` iff every overlap of device sets under `b` is an overlap under `a`.
/// Throws AlphabetMismatch.
bool dist_geq(const DeviceGraph& a, const DeviceGraph& b);
bool dist_leq(const DeviceGraph& a, const DeviceGraph& b);

/// The round trip dependency → distribution → dependency is the identity.
bool galois_check(const DependencyRelation& d);

/// A distribution already is a device graph; validates and returns it shared.
GraphRef distribution_as_device_graph(const DeviceGraph& d);

/// The single-object morphism spelled by `w`. Throws UnknownName.
Morphism word_morphism(const GraphRef& dist, const TraceWord& w);

/// Decides w1 ≡ w2 as morphisms of the free premonoidal category on
/// dependency_to_distribution(d).
bool trace_vs_freecat(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2);

} // namespace restrace
