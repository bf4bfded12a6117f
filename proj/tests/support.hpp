// Shared fixtures and random generators for the test suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "restrace/freecat.hpp"
#include "restrace/graphs.hpp"

namespace restrace::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// The theory of a printer: a pure `doc : ε → Doc` and `print : Doc → ε` on printer `p`.
inline EffectfulGraph printer_theory() {
  EffectfulGraph g;
  g.pure.add_object("Doc").add_generator("doc", {}, {"Doc"});
  g.impure.add_object("Doc").add_device("p");
  g.impure.add_generator("doc", {}, {"Doc"});
  g.impure.add_generator("print", {"Doc"}, {}, {"p"});
  g.embed["doc"] = "doc";
  return g;
}

/// The theory of two printers, written out by hand.
inline EffectfulGraph two_printer_theory() {
  EffectfulGraph g;
  g.pure.add_object("Doc").add_generator("doc", {}, {"Doc"});
  g.impure.add_object("Doc");
  g.impure.add_generator("doc", {}, {"Doc"});
  g.impure.add_generator("l·print", {"Doc"}, {}, {"l·p"});
  g.impure.add_generator("r·print", {"Doc"}, {}, {"r·p"});
  g.embed["doc"] = "doc";
  return g;
}

struct GraphShape {
  std::size_t objects = 2;
  std::size_t max_generators = 5;
  std::size_t max_devices = 3;
  std::size_t max_arity = 2;
};

inline Word random_word(Rng& rng, const std::vector<Name>& objects, std::size_t max_len) {
  std::vector<Name> items;
  if (objects.empty()) return Word{};
  const std::size_t len = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < len; ++i) items.push_back(objects[uniform(rng, 0, objects.size() - 1)]);
  return Word(std::move(items));
}

inline DeviceGraph random_device_graph(Rng& rng, const GraphShape& shape = {}) {
  DeviceGraph g;
  std::vector<Name> objects;
  for (std::size_t i = 0; i < shape.objects; ++i) {
    objects.push_back(std::string(1, static_cast<char>('A' + i)));
    g.add_object(objects.back());
  }
  const std::size_t devices = uniform(rng, 0, shape.max_devices);
  for (std::size_t d = 0; d < devices; ++d) g.add_device("d" + std::to_string(d));
  const std::size_t gens = uniform(rng, 1, shape.max_generators);
  for (std::size_t i = 0; i < gens; ++i) {
    std::set<Name> devs;
    for (const auto& d : g.devices)
      if (coin(rng, 0.4)) devs.insert(d);
    g.add_generator("g" + std::to_string(i), random_word(rng, objects, shape.max_arity),
                    random_word(rng, objects, shape.max_arity), devs);
  }
  return g;
}

/// A random trace-monoid-like graph: no objects, every generator ε → ε.
inline DeviceGraph random_distribution_graph(Rng& rng, std::size_t symbols, std::size_t max_devices) {
  DeviceGraph g;
  const std::size_t devices = uniform(rng, 0, max_devices);
  for (std::size_t d = 0; d < devices; ++d) g.add_device("d" + std::to_string(d));
  for (std::size_t i = 0; i < symbols; ++i) {
    std::set<Name> devs;
    for (const auto& d : g.devices)
      if (coin(rng, 0.4)) devs.insert(d);
    g.add_generator(std::string(1, static_cast<char>('a' + i)), {}, {}, devs);
  }
  return g;
}

/// A random morphism out of `source` with at most `max_events` events;
/// boundaries never exceed `max_width` objects.
inline Morphism random_morphism_from(Rng& rng, const GraphRef& g, Word source, std::size_t max_events,
                                     std::size_t max_width = 5) {
  std::vector<Event> events;
  Word boundary = source;
  const std::size_t n = uniform(rng, 0, max_events);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Event> options;
    for (const auto& [gen, sig] : g->generators()) {
      if (sig.dom.size() > boundary.size()) continue;
      if (boundary.size() - sig.dom.size() + sig.cod.size() > max_width) continue;
      for (std::size_t s = 0; s + sig.dom.size() <= boundary.size(); ++s)
        if (boundary.slice(s, sig.dom.size()) == sig.dom)
          options.push_back(Event{gen, boundary.prefix(s), boundary.suffix_from(s + sig.dom.size())});
    }
    if (options.empty()) break;
    Event e = options[uniform(rng, 0, options.size() - 1)];
    boundary = e.left + g->signature(e.gen).cod + e.right;
    events.push_back(std::move(e));
  }
  return Morphism(g, std::move(source), std::move(events));
}

inline Morphism random_morphism(Rng& rng, const GraphRef& g, std::size_t max_events, std::size_t max_width = 5,
                                std::size_t max_source = 3) {
  std::vector<Name> objects(g->objects().begin(), g->objects().end());
  return random_morphism_from(rng, g, random_word(rng, objects, std::min(max_source, max_width)), max_events,
                              max_width);
}

/// The pure graph embedded under its own names, plus effectful generators
/// whose names and devices start with `prefix`.
inline EffectfulGraph random_effectful_graph(Rng& rng, const MonoidalGraph& pure, const std::string& prefix,
                                             std::size_t max_generators = 2, std::size_t max_devices = 2) {
  EffectfulGraph g = effectful_from_pure(pure);
  const DeviceGraph extra =
      random_device_graph(rng, GraphShape{pure.objects.size(), max_generators, max_devices, 1});
  for (const auto& d : extra.devices) g.impure.add_device(prefix + d);
  for (const auto& [x, sig] : extra.generators()) {
    std::set<Name> devs;
    for (const auto& d : extra.devices_of(x)) devs.insert(prefix + d);
    g.impure.add_generator(prefix + x, sig.dom, sig.cod, devs);
  }
  return g;
}

/// Applies up to `max_swaps` randomly chosen legal swaps.
inline Morphism random_swaps(Rng& rng, Morphism f, std::size_t max_swaps) {
  const std::size_t n = uniform(rng, 0, max_swaps);
  for (std::size_t i = 0; i < n && f.size() >= 2; ++i) {
    std::vector<Morphism> options;
    for (std::size_t k = 0; k + 1 < f.size(); ++k)
      for (auto& r : swap_results(f, k)) options.push_back(std::move(r));
    if (options.empty()) break;
    f = options[uniform(rng, 0, options.size() - 1)];
  }
  return f;
}

} // namespace restrace::testing
