#pragma once

#include <utility>
#include <vector>

#include "restrace/freecat.hpp"

namespace restrace::detail {

using Sequence = std::vector<Event>;

/// The event firing `gen` at `start` on `boundary`.
Event place(const Word& boundary, std::size_t start, const Name& gen, const Signature& sig);

inline Word before(const Event& e, const Signature& sig) { return e.left + sig.dom + e.right; }
inline Word after(const Event& e, const Signature& sig) { return e.left + sig.cod + e.right; }

SwapBlock block(const DeviceGraph& g, const Event& first, const Event& second);

/// Legal interchanges of adjacent events `first ; second`, each returned as
/// the new pair (second', first'). Placing `second` to the right comes first.
std::vector<std::pair<Event, Event>> interchange(const DeviceGraph& g, const Event& first, const Event& second);

/// All distinct sequences obtained by moving the event at `pos` to the front
/// through legal adjacent swaps with each of its predecessors in turn.
std::vector<Sequence> bubble_to_front(const DeviceGraph& g, const Sequence& seq, std::size_t pos);

} // namespace restrace::detail
