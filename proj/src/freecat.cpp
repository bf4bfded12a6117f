#include "restrace/freecat.hpp"

#include <algorithm>

#include "detail.hpp"
#include "restrace/errors.hpp"

namespace restrace {

std::string to_string(const Event& e) {
  return e.gen + " [" + e.left.str() + " | " + e.right.str() + "]";
}

Morphism::Morphism(GraphRef graph, Word source, std::vector<Event> events)
    : graph_(std::move(graph)), source_(std::move(source)), events_(std::move(events)) {
  if (!graph_) throw Error("morphism without a graph");
  for (const auto& obj : source_)
    if (!graph_->underlying.has_object(obj)) throw UnknownName("object", obj);
  Word current = source_;
  for (const auto& e : events_) {
    const Signature& sig = graph_->signature(e.gen);
    Word expected = detail::before(e, sig);
    if (expected != current) throw BoundaryMismatch(expected, current);
    current = detail::after(e, sig);
  }
  target_ = std::move(current);
}

Word Morphism::boundary(std::size_t i) const {
  if (i > events_.size()) throw IndexOutOfRange(i, events_.size() + 1);
  if (i == events_.size()) return target_;
  return detail::before(events_[i], signature(i));
}

bool Morphism::same_representation(const Morphism& other) const {
  return same_graph(graph_, other.graph_) && source_ == other.source_ && events_ == other.events_;
}

bool same_graph(const GraphRef& a, const GraphRef& b) {
  return a == b || (a && b && *a == *b);
}

Morphism identity(GraphRef g, Word w) { return Morphism(std::move(g), std::move(w), {}); }

Morphism gen_event(GraphRef g, Word left, const Name& gen, Word right) {
  const Signature& sig = g->signature(gen);
  Word source = left + sig.dom + right;
  return Morphism(std::move(g), std::move(source), {Event{gen, std::move(left), std::move(right)}});
}

Morphism compose(const Morphism& u, const Morphism& v) {
  if (!same_graph(u.graph(), v.graph())) throw GraphMismatch();
  if (u.target() != v.source()) throw BoundaryMismatch(u.target(), v.source());
  std::vector<Event> events = u.events();
  events.insert(events.end(), v.events().begin(), v.events().end());
  return Morphism(u.graph(), u.source(), std::move(events));
}

Morphism left_whisker(const Word& a, const Morphism& f) {
  std::vector<Event> events;
  events.reserve(f.size());
  for (const auto& e : f.events()) events.push_back(Event{e.gen, a + e.left, e.right});
  return Morphism(f.graph(), a + f.source(), std::move(events));
}

Morphism right_whisker(const Morphism& f, const Word& a) {
  std::vector<Event> events;
  events.reserve(f.size());
  for (const auto& e : f.events()) events.push_back(Event{e.gen, e.left, e.right + a});
  return Morphism(f.graph(), f.source() + a, std::move(events));
}

std::set<Name> devices_of(const Morphism& f) {
  std::set<Name> out;
  for (const auto& e : f.events()) {
    const auto& devs = f.graph()->devices_of(e.gen);
    out.insert(devs.begin(), devs.end());
  }
  return out;
}

namespace detail {

Event place(const Word& boundary, std::size_t start, const Name& gen, const Signature& sig) {
  return Event{gen, boundary.prefix(start), boundary.suffix_from(start + sig.dom.size())};
}

SwapBlock block(const DeviceGraph& g, const Event& first, const Event& second) {
  if (!orthogonal(g, first.gen, second.gen)) return SwapBlock::SharedDevice;
  const std::size_t cod1 = g.signature(first.gen).cod.size();
  const std::size_t dom2 = g.signature(second.gen).dom.size();
  const std::size_t s1 = first.start();
  const std::size_t s2 = second.start();
  if (s2 >= s1 + cod1 || s2 + dom2 <= s1) return SwapBlock::None;
  return SwapBlock::OverlappingSpan;
}

std::vector<std::pair<Event, Event>> interchange(const DeviceGraph& g, const Event& first, const Event& second) {
  std::vector<std::pair<Event, Event>> out;
  if (!orthogonal(g, first.gen, second.gen)) return out;
  const Signature& sig1 = g.signature(first.gen);
  const Signature& sig2 = g.signature(second.gen);
  const std::size_t s1 = first.start();
  const std::size_t s2 = second.start();
  const Word pre = before(first, sig1);

  // `second` lies to the right of what `first` produced.
  if (s2 >= s1 + sig1.cod.size()) {
    Event moved = place(pre, s2 - sig1.cod.size() + sig1.dom.size(), second.gen, sig2);
    Event stayed = place(after(moved, sig2), s1, first.gen, sig1);
    out.emplace_back(std::move(moved), std::move(stayed));
  }
  // `second` lies to the left.
  if (s2 + sig2.dom.size() <= s1) {
    Event moved = place(pre, s2, second.gen, sig2);
    Event stayed = place(after(moved, sig2), s1 - sig2.dom.size() + sig2.cod.size(), first.gen, sig1);
    std::pair<Event, Event> result{std::move(moved), std::move(stayed)};
    if (out.empty() || out.front() != result) out.push_back(std::move(result));
  }
  return out;
}

std::vector<Sequence> bubble_to_front(const DeviceGraph& g, const Sequence& seq, std::size_t pos) {
  std::vector<Sequence> level{seq};
  for (std::size_t p = pos; p > 0; --p) {
    std::vector<Sequence> next;
    for (const auto& s : level) {
      for (auto& [moved, stayed] : interchange(g, s[p - 1], s[p])) {
        Sequence t = s;
        t[p - 1] = std::move(moved);
        t[p] = std::move(stayed);
        if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(std::move(t));
      }
    }
    level = std::move(next);
    if (level.empty()) break;
  }
  return level;
}

} // namespace detail

SwapBlock swap_block(const Morphism& f, std::size_t k) {
  if (k + 1 >= f.size()) throw IndexOutOfRange(k, f.size());
  return detail::block(*f.graph(), f.events()[k], f.events()[k + 1]);
}

std::vector<Morphism> swap_results(const Morphism& f, std::size_t k) {
  if (k + 1 >= f.size()) throw IndexOutOfRange(k, f.size());
  std::vector<Morphism> out;
  for (auto& [moved, stayed] : detail::interchange(*f.graph(), f.events()[k], f.events()[k + 1])) {
    std::vector<Event> events = f.events();
    events[k] = std::move(moved);
    events[k + 1] = std::move(stayed);
    out.emplace_back(f.graph(), f.source(), std::move(events));
  }
  return out;
}

Morphism swap_adjacent(const Morphism& f, std::size_t k) {
  switch (swap_block(f, k)) {
  case SwapBlock::SharedDevice:
    throw NotSwappable(NotSwappable::Reason::SharedDevice);
  case SwapBlock::OverlappingSpan:
    throw NotSwappable(NotSwappable::Reason::OverlappingSpan);
  case SwapBlock::None:
    break;
  }
  return swap_results(f, k).front();
}

StrandThreading thread_strands(const Morphism& f) {
  StrandThreading out;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < f.source().size(); ++i) current.push_back(out.strand_count++);
  out.boundaries.push_back(current);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Signature& sig = f.signature(i);
    const std::size_t start = f.events()[i].start();
    std::vector<std::size_t> consumed(current.begin() + static_cast<std::ptrdiff_t>(start),
                                      current.begin() + static_cast<std::ptrdiff_t>(start + sig.dom.size()));
    std::vector<std::size_t> emitted;
    for (std::size_t c = 0; c < sig.cod.size(); ++c) emitted.push_back(out.strand_count++);
    std::vector<std::size_t> next(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(start));
    next.insert(next.end(), emitted.begin(), emitted.end());
    next.insert(next.end(), current.begin() + static_cast<std::ptrdiff_t>(start + sig.dom.size()), current.end());
    out.consumed.push_back(std::move(consumed));
    out.emitted.push_back(std::move(emitted));
    out.boundaries.push_back(next);
    current = std::move(next);
  }
  return out;
}

DependenceRelation dependence(const Morphism& f) {
  DependenceRelation out;
  out.size = f.size();
  const StrandThreading threads = thread_strands(f);
  std::vector<std::size_t> producer(threads.strand_count, f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto s : threads.emitted[i]) producer[s] = i;
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (auto s : threads.consumed[j])
      if (producer[s] < f.size()) out.wire_edges.insert({producer[s], j});
    for (std::size_t i = 0; i < j; ++i)
      if (!orthogonal(*f.graph(), f.events()[i].gen, f.events()[j].gen)) out.device_edges.insert({i, j});
  }
  return out;
}

bool parallel(const Morphism& f, const Morphism& g) {
  const Morphism lhs = compose(right_whisker(f, g.source()), left_whisker(f.target(), g));
  const Morphism rhs = compose(left_whisker(f.source(), g), right_whisker(f, g.target()));
  return morphisms_equal(lhs, rhs);
}

bool interchange_holds(const Morphism& f, const Morphism& g) {
  if (!same_graph(f.graph(), g.graph())) throw GraphMismatch();
  return parallel(f, g) && parallel(g, f);
}

Morphism tensor_pure(const Morphism& f, const Morphism& g) {
  if (!same_graph(f.graph(), g.graph())) throw GraphMismatch();
  for (const Morphism* m : {&f, &g})
    for (const auto& e : m->events())
      if (!m->graph()->devices_of(e.gen).empty()) throw NotPure(e.gen);
  return compose(right_whisker(f, g.source()), left_whisker(f.target(), g));
}

FreeEffectfulCategory::FreeEffectfulCategory(EffectfulGraph graph) : graph_(std::move(graph)) {
  if (auto vs = validate_effectful_graph(graph_); !vs.empty()) throw InvalidMorphism(describe(vs));
  pure_side_ = share(device_free(graph_.pure));
  impure_side_ = share(graph_.impure);
}

Morphism embed_pure(const FreeEffectfulCategory& cat, const Morphism& f) {
  if (!same_graph(f.graph(), cat.pure_side())) throw GraphMismatch();
  std::vector<Event> events;
  events.reserve(f.size());
  for (const auto& e : f.events()) {
    auto it = cat.graph().embed.find(e.gen);
    if (it == cat.graph().embed.end()) throw UnknownName("embedding of", e.gen);
    events.push_back(Event{it->second, e.left, e.right});
  }
  return Morphism(cat.impure_side(), f.source(), std::move(events));
}

Morphism map_morphism(const DeviceGraphMorphism& alpha, const GraphRef& target, const Morphism& f) {
  if (auto vs = check_device_graph_morphism(alpha, *f.graph(), *target); !vs.empty())
    throw InvalidMorphism(describe(vs));
  std::vector<Event> events;
  events.reserve(f.size());
  for (const auto& e : f.events())
    events.push_back(Event{alpha.apply_generator(e.gen), alpha.apply(e.left), alpha.apply(e.right)});
  return Morphism(target, alpha.apply(f.source()), std::move(events));
}

} // namespace restrace
