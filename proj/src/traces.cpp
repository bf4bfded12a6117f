#include "restrace/traces.hpp"

#include <algorithm>
#include <map>

#include "restrace/errors.hpp"
#include "restrace/interference.hpp"

namespace restrace {

DependencyRelation::DependencyRelation(std::set<Symbol> alphabet, const std::vector<std::pair<Symbol, Symbol>>& pairs)
    : alphabet_(std::move(alphabet)) {
  for (const auto& a : alphabet_) pairs_.insert({a, a});
  for (const auto& [a, b] : pairs) {
    for (const auto* s : {&a, &b})
      if (alphabet_.count(*s) == 0) throw UnknownName("symbol", *s);
    pairs_.insert(std::minmax(a, b));
  }
}

bool DependencyRelation::dependent(const Symbol& a, const Symbol& b) const {
  return pairs_.count(std::minmax(a, b)) != 0;
}

std::vector<std::pair<Symbol, Symbol>> DependencyRelation::proper_pairs() const {
  std::vector<std::pair<Symbol, Symbol>> out;
  for (const auto& p : pairs_)
    if (p.first != p.second) out.push_back(p);
  return out;
}

namespace {

void check_word(const DependencyRelation& d, const TraceWord& w) {
  for (const auto& s : w)
    if (d.alphabet().count(s) == 0) throw UnknownName("symbol", s);
}

} // namespace

FoataLayers foata_nf(const DependencyRelation& d, const TraceWord& w) {
  check_word(d, w);
  std::vector<std::size_t> height(w.size(), 0);
  FoataLayers out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t h = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (d.dependent(w[i], w[j])) h = std::max(h, height[j]);
    height[i] = h + 1;
    if (out.size() < height[i]) out.resize(height[i]);
    out[h].push_back(w[i]);
  }
  for (auto& layer : out) std::sort(layer.begin(), layer.end());
  return out;
}

bool trace_equal_projection(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2) {
  check_word(d, w1);
  check_word(d, w2);
  std::map<Symbol, std::size_t> c1, c2;
  for (const auto& s : w1) ++c1[s];
  for (const auto& s : w2) ++c2[s];
  if (c1 != c2) return false;
  auto project = [](const TraceWord& w, const Symbol& a, const Symbol& b) {
    TraceWord p;
    std::copy_if(w.begin(), w.end(), std::back_inserter(p), [&](const Symbol& s) { return s == a || s == b; });
    return p;
  };
  for (const auto& [a, b] : d.proper_pairs())
    if (project(w1, a, b) != project(w2, a, b)) return false;
  return true;
}

bool trace_equal_foata(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2) {
  return foata_nf(d, w1) == foata_nf(d, w2);
}

bool trace_equal(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2) {
  const bool by_projection = trace_equal_projection(d, w1, w2);
  if (by_projection != trace_equal_foata(d, w1, w2)) throw Error("projection and Foata criteria disagree");
  return by_projection;
}

Violations validate_distribution(const DeviceGraph& d) {
  Violations out = validate_device_graph(d);
  for (const auto& obj : d.objects()) out.push_back({obj, "distributions have no objects"});
  for (const auto& [gen, sig] : d.generators())
    if (!sig.dom.empty() || !sig.cod.empty()) out.push_back({gen, "action must be typed ε → ε"});
  return out;
}

DeviceGraph dependency_to_distribution(const DependencyRelation& d) {
  const std::vector<Symbol> symbols(d.alphabet().begin(), d.alphabet().end());
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    for (std::size_t j = i + 1; j < symbols.size(); ++j)
      if (d.dependent(symbols[i], symbols[j])) edges.insert({i, j});

  std::map<Symbol, std::set<Name>> devs;
  DeviceGraph out;
  for (const auto& clique : nontrivial(maximal_cliques(symbols.size(), edges))) {
    std::string device;
    for (auto i : clique) device += (device.empty() ? "" : "+") + symbols[i];
    out.add_device(device);
    for (auto i : clique) devs[symbols[i]].insert(device);
  }
  for (const auto& s : symbols) out.add_generator(s, {}, {}, devs[s]);
  return out;
}

DependencyRelation distribution_to_dependency(const DeviceGraph& d) {
  if (auto vs = validate_distribution(d); !vs.empty()) throw InvalidMorphism(describe(vs));
  std::set<Symbol> alphabet;
  std::vector<std::pair<Symbol, Symbol>> pairs;
  for (const auto& [a, sa] : d.generators()) {
    alphabet.insert(a);
    for (const auto& [b, sb] : d.generators())
      if (a < b && !orthogonal(d, a, b)) pairs.emplace_back(a, b);
  }
  return DependencyRelation(std::move(alphabet), pairs);
}

bool dep_leq(const DependencyRelation& a, const DependencyRelation& b) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch();
  return std::includes(b.pairs().begin(), b.pairs().end(), a.pairs().begin(), a.pairs().end());
}

bool dist_geq(const DeviceGraph& a, const DeviceGraph& b) {
  std::set<Name> sa, sb;
  for (const auto& [g, sig] : a.generators()) sa.insert(g);
  for (const auto& [g, sig] : b.generators()) sb.insert(g);
  if (sa != sb) throw AlphabetMismatch();
  for (const auto& x : sb)
    for (const auto& y : sb)
      if (!orthogonal(b, x, y) && orthogonal(a, x, y)) return false;
  return true;
}

bool dist_leq(const DeviceGraph& a, const DeviceGraph& b) { return dist_geq(b, a); }

bool galois_check(const DependencyRelation& d) {
  return distribution_to_dependency(dependency_to_distribution(d)) == d;
}

GraphRef distribution_as_device_graph(const DeviceGraph& d) {
  if (auto vs = validate_distribution(d); !vs.empty()) throw InvalidMorphism(describe(vs));
  return share(d);
}

Morphism word_morphism(const GraphRef& dist, const TraceWord& w) {
  std::vector<Event> events;
  for (const auto& s : w) {
    if (!dist->has_generator(s)) throw UnknownName("symbol", s);
    events.push_back(Event{s, {}, {}});
  }
  return Morphism(dist, {}, std::move(events));
}

bool trace_vs_freecat(const DependencyRelation& d, const TraceWord& w1, const TraceWord& w2) {
  const GraphRef g = distribution_as_device_graph(dependency_to_distribution(d));
  return morphisms_equal(word_morphism(g, w1), word_morphism(g, w2));
}

} // namespace restrace
