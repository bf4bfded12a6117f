#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>

#include "detail.hpp"
#include "restrace/errors.hpp"
#include "restrace/freecat.hpp"

namespace restrace {

std::vector<std::vector<Event>> CanonicalForm::layers() const {
  std::vector<std::vector<Event>> out(layer_count());
  for (std::size_t i = 0; i < events.size(); ++i) out[heights[i] - 1].push_back(events[i]);
  return out;
}

std::string CanonicalForm::key() const {
  std::string out = source.str() + ";" + target.str() + ";";
  for (std::size_t i = 0; i < events.size(); ++i) {
    out += std::to_string(heights[i]) + ":" + events[i].gen + "[" + events[i].left.str() + "|" +
           events[i].right.str() + "];";
  }
  return out;
}

namespace {

// Upper bound on the swap closure explored when zero-domain events may float.
constexpr std::size_t kExactClosureCap = 4000000;

// Sequences packed one code per event: generator index (in name order) in the
// high half, span start in the low half. The boundaries follow from the source.
using Code = std::u32string;

class Codec {
public:
  explicit Codec(const DeviceGraph& g) : g_(g) {
    for (const auto& [name, sig] : g.generators()) {
      names_.push_back(name);
      dom_.push_back(sig.dom.size());
      cod_.push_back(sig.cod.size());
    }
    const std::size_t n = names_.size();
    orth_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) orth_[i * n + j] = orthogonal(g, names_[i], names_[j]);
  }

  [[nodiscard]] Code encode(const detail::Sequence& seq) const {
    Code out;
    out.reserve(seq.size());
    for (const auto& e : seq) {
      auto it = std::lower_bound(names_.begin(), names_.end(), e.gen);
      out.push_back(pack(static_cast<std::size_t>(it - names_.begin()), e.start()));
    }
    return out;
  }

  [[nodiscard]] Event decode(const Word& boundary, char32_t c) const {
    const Name& gen = names_[c >> 16];
    return detail::place(boundary, c & 0xffff, gen, g_.signature(gen));
  }

  [[nodiscard]] detail::Sequence decode(Word boundary, const Code& code) const {
    detail::Sequence out;
    for (char32_t c : code) {
      out.push_back(decode(boundary, c));
      boundary = detail::after(out.back(), g_.signature(out.back().gen));
    }
    return out;
  }

  // Same contract as detail::interchange, on codes.
  template <typename F>
  void interchange(char32_t first, char32_t second, F&& emit) const {
    const std::size_t g1 = first >> 16, g2 = second >> 16;
    if (!orth_[g1 * names_.size() + g2]) return;
    const std::size_t s1 = first & 0xffff, s2 = second & 0xffff;
    bool right = false;
    if (s2 >= s1 + cod_[g1]) {
      right = true;
      emit(pack(g2, s2 - cod_[g1] + dom_[g1]), first);
    }
    if (s2 + dom_[g2] <= s1) {
      const char32_t moved = pack(g2, s2);
      const char32_t stayed = pack(g1, s1 - dom_[g2] + cod_[g2]);
      if (!right || moved != pack(g2, s2 - cod_[g1] + dom_[g1]) || stayed != first) emit(moved, stayed);
    }
  }

private:
  static char32_t pack(std::size_t gen, std::size_t start) {
    if (gen > 0xffff || start > 0xffff) throw Error("morphism too wide to encode");
    return static_cast<char32_t>(gen << 16 | start);
  }

  const DeviceGraph& g_;
  std::vector<Name> names_;
  std::vector<std::size_t> dom_, cod_;
  std::vector<bool> orth_;
};

// Breadth-first search over representations; stops early when `goal` is seen.
// Returns the visited codes in discovery order, or nullopt if the cap was hit.
std::optional<std::vector<Code>> explore(const Codec& codec, const Code& start, std::size_t max_states,
                                         const Code* goal, bool& found) {
  found = goal && *goal == start;
  std::unordered_set<Code> seen{start};
  std::vector<Code> order{start};
  if (found) return order;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Code current = order[head];
    for (std::size_t k = 0; k + 1 < current.size(); ++k) {
      bool over = false;
      codec.interchange(current[k], current[k + 1], [&](char32_t moved, char32_t stayed) {
        if (found || over) return;
        Code next = current;
        next[k] = moved;
        next[k + 1] = stayed;
        if (!seen.insert(next).second) return;
        if (goal && *goal == next) found = true;
        if (seen.size() > max_states) over = true;
        order.push_back(std::move(next));
      });
      if (found) return order;
      if (over) return std::nullopt;
    }
  }
  return order;
}

// Zero-domain events on a non-empty boundary can float to other gaps of their
// region, which moving a single event cannot always reveal.
bool may_float(const Morphism& f) {
  bool has_source = false;
  bool has_strand = !f.source().empty() || !f.target().empty();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Signature& sig = f.signature(i);
    has_source = has_source || sig.dom.empty();
    has_strand = has_strand || !sig.dom.empty() || !sig.cod.empty();
  }
  return has_source && has_strand;
}

} // namespace

// Layered greedy normalisation over a swap-closed set of remainders.
//
// At each step the achievable first events of the set are ranked by span
// start on the current boundary, then generator name. An event joins the
// current layer when it can be swapped in front of every event already fired
// in that layer; when no achievable event can, a new layer starts. The set is
// then narrowed to the tails following the fired event. Tails of different
// representatives may fall in different classes (identical events trading
// places), so the set is kept rather than a single remainder.
//
// In the exact mode the set is the whole swap closure. Otherwise it holds a
// few representatives and achievable first events are found by moving each
// event to the front through adjacent swaps, which suffices when no
// zero-domain event can change gap.
CanonicalForm canonical_form(const Morphism& f) {
  const DeviceGraph& g = *f.graph();
  const Codec codec(g);
  const bool exact = may_float(f);

  std::vector<Code> remainders;
  if (exact) {
    bool found = false;
    auto all = explore(codec, codec.encode(f.events()), kExactClosureCap, nullptr, found);
    if (!all) throw BudgetExceeded(kExactClosureCap);
    remainders = std::move(*all);
  } else {
    remainders.push_back(codec.encode(f.events()));
  }

  CanonicalForm out{f.source(), f.target(), {}, {}};
  Word boundary = f.source();
  detail::Sequence layer_events;
  std::size_t layer = 1;
  while (!remainders.front().empty()) {
    // Keyed by (start, generator index), which orders as (start, name).
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Code>> firsts;
    for (const auto& rep : remainders) {
      if (exact) {
        firsts[{rep.front() & 0xffff, rep.front() >> 16}].push_back(rep);
        continue;
      }
      const detail::Sequence seq = codec.decode(boundary, rep);
      for (std::size_t j = 0; j < seq.size(); ++j)
        for (const auto& moved : detail::bubble_to_front(g, seq, j)) {
          Code code = codec.encode(moved);
          firsts[{code.front() & 0xffff, code.front() >> 16}].push_back(std::move(code));
        }
    }

    auto chosen = firsts.end();
    for (auto it = firsts.begin(); it != firsts.end(); ++it) {
      if (layer_events.empty()) {
        chosen = it;
        break;
      }
      detail::Sequence probe = layer_events;
      probe.push_back(codec.decode(boundary, it->second.front().front()));
      if (!detail::bubble_to_front(g, probe, probe.size() - 1).empty()) {
        chosen = it;
        break;
      }
    }
    if (chosen == firsts.end()) {
      ++layer;
      layer_events.clear();
      continue;
    }

    const Event fired = codec.decode(boundary, chosen->second.front().front());
    boundary = detail::after(fired, g.signature(fired.gen));
    out.events.push_back(fired);
    out.heights.push_back(layer);
    layer_events.push_back(fired);

    std::unordered_set<Code> next;
    for (const auto& code : chosen->second) next.insert(code.substr(1));
    remainders.assign(next.begin(), next.end());
    // Representation-independent order keeps the fast mode deterministic.
    std::sort(remainders.begin(), remainders.end());
  }
  return out;
}

Morphism canonical_morphism(const Morphism& f) {
  return Morphism(f.graph(), f.source(), canonical_form(f).events);
}

bool morphisms_equal(const Morphism& f, const Morphism& g) {
  if (!same_graph(f.graph(), g.graph())) throw GraphMismatch();
  if (f.source() != g.source() || f.target() != g.target() || f.size() != g.size()) return false;
  return canonical_form(f) == canonical_form(g);
}

std::optional<std::vector<Morphism>> swap_closure(const Morphism& f, std::size_t max_states) {
  const Codec codec(*f.graph());
  bool found = false;
  auto codes = explore(codec, codec.encode(f.events()), max_states, nullptr, found);
  if (!codes) return std::nullopt;
  std::vector<Morphism> out;
  out.reserve(codes->size());
  for (const auto& c : *codes) out.emplace_back(f.graph(), f.source(), codec.decode(f.source(), c));
  return out;
}

Equivalence bfs_equiv(const Morphism& f, const Morphism& g, std::size_t max_states) {
  if (!same_graph(f.graph(), g.graph())) return Equivalence::Unequal;
  if (f.source() != g.source() || f.target() != g.target() || f.size() != g.size()) return Equivalence::Unequal;
  const Codec codec(*f.graph());
  const Code goal = codec.encode(g.events());
  bool found = false;
  auto codes = explore(codec, codec.encode(f.events()), max_states, &goal, found);
  if (found) return Equivalence::Equal;
  return codes ? Equivalence::Unequal : Equivalence::Inconclusive;
}

std::vector<Morphism> enumerate_morphisms(const GraphRef& g, std::size_t max_events, const std::vector<Word>& pool,
                                          std::size_t cap) {
  const std::set<Word> targets(pool.begin(), pool.end());
  std::vector<Morphism> out;
  std::map<std::string, Morphism> frontier;
  for (const auto& w : targets) {
    Morphism id = identity(g, w);
    frontier.emplace(canonical_form(id).key(), id);
  }
  for (std::size_t level = 0;; ++level) {
    for (const auto& [key, m] : frontier) {
      if (targets.count(m.target()) == 0) continue;
      out.push_back(m);
      if (out.size() > cap) throw BudgetExceeded(cap);
    }
    if (level == max_events) break;
    std::map<std::string, Morphism> next;
    for (const auto& [key, m] : frontier) {
      const Word& boundary = m.target();
      for (const auto& [gen, sig] : g->generators()) {
        if (sig.dom.size() > boundary.size()) continue;
        for (std::size_t start = 0; start + sig.dom.size() <= boundary.size(); ++start) {
          if (boundary.slice(start, sig.dom.size()) != sig.dom) continue;
          std::vector<Event> events = m.events();
          events.push_back(detail::place(boundary, start, gen, sig));
          Morphism extended(g, m.source(), std::move(events));
          next.emplace(canonical_form(extended).key(), std::move(extended));
          if (next.size() > cap) throw BudgetExceeded(cap);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

} // namespace restrace
