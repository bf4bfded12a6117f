#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "restrace/freecat.hpp"

namespace restrace {

/// Sorted vertex indices.
using Clique = std::vector<std::size_t>;

/// Maximal cliques of the simple graph on vertices 0..n-1 (self-loops are
/// ignored). Each clique is sorted and the list is in lexicographic order.
std::vector<Clique> maximal_cliques(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges);

/// Drops singletons.
std::vector<Clique> nontrivial(std::vector<Clique> cliques);

/// Edges {i, j} (stored i <= j) between morphisms that fail to interchange.
/// A self-loop marks a morphism that does not interchange with itself.
struct InterferenceGraph {
  std::vector<Morphism> vertices;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  [[nodiscard]] bool interferes(std::size_t i, std::size_t j) const {
    return edges.count({std::min(i, j), std::max(i, j)}) != 0;
  }
};

/// Throws GraphMismatch.
InterferenceGraph interference_graph(const std::vector<Morphism>& ms);

std::vector<Clique> maximal_cliques(const InterferenceGraph& g);

/// A finite fragment of the underlying device graph of a free category.
/// Generators stand for morphisms of `base`, typed by their boundaries
/// listed one object at a time; devices are the non-trivial maximal cliques
/// of the sample's interference graph, named by their sorted members joined
/// with '+'.
struct Underlying {
  GraphRef base;
  GraphRef graph;
  std::map<Name, Morphism> arrows;
  std::vector<std::vector<Name>> cliques;

  [[nodiscard]] const Morphism& arrow(const Name& gen) const;
};

/// Builds the fragment on an explicit sample; `names[i]` labels `sample[i]`.
Underlying underlying_of_sample(const GraphRef& base, const std::vector<Morphism>& sample,
                                const std::vector<Name>& names);

/// Sample names are `m0`, `m1`, … in enumeration order. Throws BudgetExceeded.
Underlying underlying_device_graph_bounded(const GraphRef& g, std::size_t max_events, const std::vector<Word>& pool,
                                           std::size_t cap = 100000);

/// η on a generator: the bare event ▷f◁. Throws UnknownName.
Morphism unit_map(const GraphRef& g, const Name& f);

/// The fragment spanned by η: one arrow per generator, under the generator's name.
Underlying unit_image(const GraphRef& g);

/// Reads a morphism of `g` as a morphism over `unit_image(g).graph`.
Morphism eta_relabel(const Underlying& eta, const Morphism& f);

/// Evaluates a morphism whose generators are arrows of `u`: each event
/// X ▷ m ◁ Y becomes X ⋉ m ⋊ Y and the results are composed.
/// Throws BoundaryMismatch when a nested arrow does not fit.
Morphism counit_eval(const Underlying& u, const Morphism& nested);

struct TriangleReport {
  std::size_t unit_checks = 0;
  std::size_t counit_checks = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks ε ∘ η-relabelling = id on every sample, that η preserves
/// orthogonality, and that ε undoes η on every arrow of the bounded fragment
/// with at most `fragment_events` events between ε and single objects.
/// Throws BudgetExceeded.
TriangleReport triangle_checks(const GraphRef& g, const std::vector<Morphism>& samples,
                               std::size_t fragment_events = 2);

} // namespace restrace
