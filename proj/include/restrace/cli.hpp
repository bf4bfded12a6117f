#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "restrace/freecat.hpp"
#include "restrace/graphs.hpp"
#include "restrace/traces.hpp"

namespace restrace {

struct GraphFile {
  EffectfulGraph graph;
  bool has_pure = false;  // false for a bare device graph

  [[nodiscard]] GraphRef device_graph() const { return share(graph.impure); }
};

/// Line-oriented format; `#` starts a comment.
///   objects N1 N2 …
///   devices D1 D2 …
///   pure NAME : DOM -> COD
///   gen NAME : DOM -> COD [@ D1 D2 …]
/// Pure generators are embedded under their own name. Throws ParseError,
/// also for validation failures, located at the offending line.
GraphFile parse_graph_file(std::string_view text);

/// Inverse of parse_graph_file; throws Error when an embedding renames a generator.
std::string write_graph_file(const EffectfulGraph& g);

/// term := `id(` WORD `)` | NAME `[` WORD `|` WORD `]` | term `;` term | `(` term `)`
/// with `;` associating to the left. Throws ParseError, UnknownName, and
/// BoundaryMismatch carrying the columns of the failing composite.
Morphism parse_morphism_expr(std::string_view text, const GraphRef& g);

/// `id(W)` or events written `gen[left|right]` joined by ` ; `; parses back to
/// the same representation.
std::string format_expr(const Morphism& f);

/// Splits on whitespace and commas when present, otherwise by longest match
/// against the alphabet. Throws ParseError.
TraceWord parse_trace_word(std::string_view text, const std::set<Symbol>& alphabet);

/// `a b; b d`: each `;`-separated group is pairwise dependent.
DependencyRelation parse_dependency(std::string_view alphabet, std::string_view dep);

/// Comma-separated words; `ε` or an empty item is the empty word.
std::vector<Word> parse_pool(std::string_view text);

/// `gen [left | right] @d1,d2` per event, `--` between layers.
std::string format_canonical(const CanonicalForm& cf, const DeviceGraph& g);

/// Entry point of the command-line tool; `args` excludes the program name.
/// Returns 0 on success or a positive answer, 1 on a negative answer, 2 on errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace restrace
