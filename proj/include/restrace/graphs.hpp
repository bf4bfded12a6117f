#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "restrace/word.hpp"

namespace restrace {

/// Names are non-empty and contain no whitespace and none of `# ; @ | ( ) [ ] ,`.
/// The tokens `:` and `->` are reserved.
bool is_valid_name(std::string_view name);

struct Signature {
  Word dom;
  Word cod;
  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;
};

/// Objects plus generators typed by source and target lists of objects.
struct MonoidalGraph {
  std::set<Name> objects;
  std::map<Name, Signature> generators;

  MonoidalGraph& add_object(const Name& name);
  MonoidalGraph& add_generator(const Name& name, Word dom, Word cod);

  [[nodiscard]] bool has_object(const Name& name) const { return objects.count(name) != 0; }
  [[nodiscard]] bool has_generator(const Name& name) const { return generators.count(name) != 0; }
  /// Throws UnknownName.
  [[nodiscard]] const Signature& signature(const Name& gen) const;

  bool operator==(const MonoidalGraph&) const = default;
};

/// A monoidal graph whose generators are each assigned a set of devices.
struct DeviceGraph {
  MonoidalGraph underlying;
  std::set<Name> devices;
  std::map<Name, std::set<Name>> dev;

  DeviceGraph& add_object(const Name& name);
  DeviceGraph& add_device(const Name& name);
  /// Adds the generator and its device set; undeclared devices are declared.
  DeviceGraph& add_generator(const Name& name, Word dom, Word cod, std::set<Name> devs = {});

  [[nodiscard]] const std::set<Name>& objects() const { return underlying.objects; }
  [[nodiscard]] const std::map<Name, Signature>& generators() const { return underlying.generators; }
  [[nodiscard]] bool has_generator(const Name& gen) const { return underlying.has_generator(gen); }
  [[nodiscard]] const Signature& signature(const Name& gen) const { return underlying.signature(gen); }
  /// Throws UnknownName for a non-generator.
  [[nodiscard]] const std::set<Name>& devices_of(const Name& gen) const;

  bool operator==(const DeviceGraph&) const = default;
};

/// Pure monoidal graph embedded device-freely into a device graph on the same objects.
struct EffectfulGraph {
  MonoidalGraph pure;
  DeviceGraph impure;
  std::map<Name, Name> embed;

  bool operator==(const EffectfulGraph&) const = default;
};

/// The device graph with the same monoidal graph and no devices at all.
DeviceGraph device_free(const MonoidalGraph& g);

/// A device graph over `g` whose only generators are the pure ones, auto-embedded by name.
EffectfulGraph effectful_from_pure(const MonoidalGraph& pure);

struct Violation {
  std::string subject;
  std::string message;
  bool operator==(const Violation&) const = default;
};
using Violations = std::vector<Violation>;

std::string describe(const Violations& vs);

Violations validate_monoidal_graph(const MonoidalGraph& g);
Violations validate_device_graph(const DeviceGraph& g);
Violations validate_effectful_graph(const EffectfulGraph& g);

/// True iff the two generators share no device. Throws UnknownName.
bool orthogonal(const DeviceGraph& g, const Name& f, const Name& h);

/// A pair of name maps; serves as monoidal-graph and device-graph morphism.
struct GraphMorphism {
  std::map<Name, Name> objects;
  std::map<Name, Name> generators;

  /// Maps a word letterwise; throws UnknownName for unmapped objects.
  [[nodiscard]] Word apply(const Word& w) const;
  /// Throws UnknownName for unmapped generators.
  [[nodiscard]] const Name& apply_generator(const Name& gen) const;

  bool operator==(const GraphMorphism&) const = default;
};
using MonoidalGraphMorphism = GraphMorphism;
using DeviceGraphMorphism = GraphMorphism;

struct EffectfulGraphMorphism {
  GraphMorphism pure;
  GraphMorphism impure;
  bool operator==(const EffectfulGraphMorphism&) const = default;
};

GraphMorphism identity_morphism(const MonoidalGraph& g);
/// `then ∘ first`.
GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& then);
EffectfulGraphMorphism identity_morphism(const EffectfulGraph& g);
EffectfulGraphMorphism compose(const EffectfulGraphMorphism& first, const EffectfulGraphMorphism& then);

Violations check_monoidal_graph_morphism(const GraphMorphism& alpha, const MonoidalGraph& src,
                                         const MonoidalGraph& dst);
Violations check_device_graph_morphism(const GraphMorphism& alpha, const DeviceGraph& src,
                                       const DeviceGraph& dst);
Violations check_effectful_graph_morphism(const EffectfulGraphMorphism& alpha, const EffectfulGraph& src,
                                          const EffectfulGraph& dst);

} // namespace restrace
