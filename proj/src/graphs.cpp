#include "restrace/graphs.hpp"

#include <algorithm>
#include <cctype>

#include "restrace/errors.hpp"

namespace restrace {

bool is_valid_name(std::string_view name) {
  if (name.empty() || name == ":" || name == "->") return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
    case '#': case ';': case '@': case '|': case '(': case ')': case '[': case ']': case ',':
      return false;
    default:
      break;
    }
  }
  return true;
}

MonoidalGraph& MonoidalGraph::add_object(const Name& name) {
  objects.insert(name);
  return *this;
}

MonoidalGraph& MonoidalGraph::add_generator(const Name& name, Word dom, Word cod) {
  generators[name] = Signature{std::move(dom), std::move(cod)};
  return *this;
}

const Signature& MonoidalGraph::signature(const Name& gen) const {
  auto it = generators.find(gen);
  if (it == generators.end()) throw UnknownName("generator", gen);
  return it->second;
}

DeviceGraph& DeviceGraph::add_object(const Name& name) {
  underlying.add_object(name);
  return *this;
}

DeviceGraph& DeviceGraph::add_device(const Name& name) {
  devices.insert(name);
  return *this;
}

DeviceGraph& DeviceGraph::add_generator(const Name& name, Word dom, Word cod, std::set<Name> devs) {
  underlying.add_generator(name, std::move(dom), std::move(cod));
  devices.insert(devs.begin(), devs.end());
  dev[name] = std::move(devs);
  return *this;
}

const std::set<Name>& DeviceGraph::devices_of(const Name& gen) const {
  if (!has_generator(gen)) throw UnknownName("generator", gen);
  static const std::set<Name> none;
  auto it = dev.find(gen);
  return it == dev.end() ? none : it->second;
}

DeviceGraph device_free(const MonoidalGraph& g) {
  DeviceGraph out;
  out.underlying = g;
  for (const auto& [name, sig] : g.generators) out.dev[name] = {};
  return out;
}

EffectfulGraph effectful_from_pure(const MonoidalGraph& pure) {
  EffectfulGraph out;
  out.pure = pure;
  out.impure = device_free(pure);
  for (const auto& [name, sig] : pure.generators) out.embed[name] = name;
  return out;
}

std::string describe(const Violations& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += '\n';
    out += v.subject + ": " + v.message;
  }
  return out;
}

namespace {

void check_word(const MonoidalGraph& g, const Name& gen, const Word& w, Violations& out) {
  for (const auto& obj : w)
    if (!g.has_object(obj)) out.push_back({gen, "unknown object " + obj});
}

} // namespace

Violations validate_monoidal_graph(const MonoidalGraph& g) {
  Violations out;
  for (const auto& obj : g.objects)
    if (!is_valid_name(obj)) out.push_back({obj, "invalid object name"});
  for (const auto& [name, sig] : g.generators) {
    if (!is_valid_name(name)) out.push_back({name, "invalid generator name"});
    check_word(g, name, sig.dom, out);
    check_word(g, name, sig.cod, out);
  }
  return out;
}

Violations validate_device_graph(const DeviceGraph& g) {
  Violations out = validate_monoidal_graph(g.underlying);
  for (const auto& d : g.devices)
    if (!is_valid_name(d)) out.push_back({d, "invalid device name"});
  for (const auto& [name, sig] : g.generators())
    if (g.dev.count(name) == 0) out.push_back({name, "no device assignment"});
  for (const auto& [name, devs] : g.dev) {
    if (!g.has_generator(name)) {
      out.push_back({name, "device assignment for unknown generator"});
      continue;
    }
    for (const auto& d : devs)
      if (g.devices.count(d) == 0) out.push_back({name, "unknown device " + d});
  }
  return out;
}

Violations validate_effectful_graph(const EffectfulGraph& g) {
  Violations out = validate_monoidal_graph(g.pure);
  for (auto& v : validate_device_graph(g.impure)) out.push_back(std::move(v));
  if (g.pure.objects != g.impure.objects()) out.push_back({"objects", "pure and impure object sets differ"});
  std::map<Name, Name> seen;
  for (const auto& [pure_gen, sig] : g.pure.generators) {
    auto it = g.embed.find(pure_gen);
    if (it == g.embed.end()) {
      out.push_back({pure_gen, "pure generator not embedded"});
      continue;
    }
    const Name& image = it->second;
    if (!g.impure.has_generator(image)) {
      out.push_back({pure_gen, "embeds to unknown generator " + image});
      continue;
    }
    if (g.impure.signature(image) != sig) out.push_back({pure_gen, "embedding changes the type"});
    if (!g.impure.devices_of(image).empty()) out.push_back({pure_gen, "embedded image " + image + " carries devices"});
    auto [pos, fresh] = seen.emplace(image, pure_gen);
    if (!fresh) out.push_back({pure_gen, "embedding not injective (shares " + image + " with " + pos->second + ")"});
  }
  for (const auto& [pure_gen, image] : g.embed)
    if (!g.pure.has_generator(pure_gen)) out.push_back({pure_gen, "embedding of unknown pure generator"});
  return out;
}

bool orthogonal(const DeviceGraph& g, const Name& f, const Name& h) {
  const auto& a = g.devices_of(f);
  const auto& b = g.devices_of(h);
  return std::none_of(a.begin(), a.end(), [&](const Name& d) { return b.count(d) != 0; });
}

Word GraphMorphism::apply(const Word& w) const {
  std::vector<Name> items;
  items.reserve(w.size());
  for (const auto& obj : w) {
    auto it = objects.find(obj);
    if (it == objects.end()) throw UnknownName("object", obj);
    items.push_back(it->second);
  }
  return Word(std::move(items));
}

const Name& GraphMorphism::apply_generator(const Name& gen) const {
  auto it = generators.find(gen);
  if (it == generators.end()) throw UnknownName("generator", gen);
  return it->second;
}

GraphMorphism identity_morphism(const MonoidalGraph& g) {
  GraphMorphism out;
  for (const auto& obj : g.objects) out.objects[obj] = obj;
  for (const auto& [name, sig] : g.generators) out.generators[name] = name;
  return out;
}

GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& then) {
  GraphMorphism out;
  for (const auto& [k, v] : first.objects) {
    auto it = then.objects.find(v);
    if (it != then.objects.end()) out.objects[k] = it->second;
  }
  for (const auto& [k, v] : first.generators) {
    auto it = then.generators.find(v);
    if (it != then.generators.end()) out.generators[k] = it->second;
  }
  return out;
}

EffectfulGraphMorphism identity_morphism(const EffectfulGraph& g) {
  return {identity_morphism(g.pure), identity_morphism(g.impure.underlying)};
}

EffectfulGraphMorphism compose(const EffectfulGraphMorphism& first, const EffectfulGraphMorphism& then) {
  return {compose(first.pure, then.pure), compose(first.impure, then.impure)};
}

Violations check_monoidal_graph_morphism(const GraphMorphism& alpha, const MonoidalGraph& src,
                                         const MonoidalGraph& dst) {
  Violations out;
  for (const auto& obj : src.objects) {
    auto it = alpha.objects.find(obj);
    if (it == alpha.objects.end())
      out.push_back({obj, "object not mapped"});
    else if (!dst.has_object(it->second))
      out.push_back({obj, "maps to unknown object " + it->second});
  }
  if (!out.empty()) return out;
  for (const auto& [name, sig] : src.generators) {
    auto it = alpha.generators.find(name);
    if (it == alpha.generators.end()) {
      out.push_back({name, "generator not mapped"});
      continue;
    }
    auto target = dst.generators.find(it->second);
    if (target == dst.generators.end()) {
      out.push_back({name, "maps to unknown generator " + it->second});
      continue;
    }
    if (alpha.apply(sig.dom) != target->second.dom)
      out.push_back({name, "source list not preserved by " + it->second});
    if (alpha.apply(sig.cod) != target->second.cod)
      out.push_back({name, "target list not preserved by " + it->second});
  }
  return out;
}

Violations check_device_graph_morphism(const GraphMorphism& alpha, const DeviceGraph& src,
                                       const DeviceGraph& dst) {
  Violations out = check_monoidal_graph_morphism(alpha, src.underlying, dst.underlying);
  if (!out.empty()) return out;
  const auto& gens = src.generators();
  for (auto a = gens.begin(); a != gens.end(); ++a) {
    for (auto b = a; b != gens.end(); ++b) {
      if (!orthogonal(src, a->first, b->first)) continue;
      const Name& fa = alpha.apply_generator(a->first);
      const Name& fb = alpha.apply_generator(b->first);
      if (!orthogonal(dst, fa, fb))
        out.push_back({a->first + "," + b->first, "orthogonality lost: " + fa + " and " + fb + " share a device"});
    }
  }
  return out;
}

Violations check_effectful_graph_morphism(const EffectfulGraphMorphism& alpha, const EffectfulGraph& src,
                                          const EffectfulGraph& dst) {
  Violations out = check_monoidal_graph_morphism(alpha.pure, src.pure, dst.pure);
  for (auto& v : check_device_graph_morphism(alpha.impure, src.impure, dst.impure)) out.push_back(std::move(v));
  if (!out.empty()) return out;
  for (const auto& obj : src.pure.objects)
    if (alpha.pure.objects.at(obj) != alpha.impure.objects.at(obj))
      out.push_back({obj, "pure and impure object maps disagree"});
  for (const auto& [pure_gen, sig] : src.pure.generators) {
    auto src_image = src.embed.find(pure_gen);
    auto mapped = alpha.pure.generators.find(pure_gen);
    if (src_image == src.embed.end() || mapped == alpha.pure.generators.end()) continue;
    auto dst_image = dst.embed.find(mapped->second);
    const Name& via_impure = alpha.impure.apply_generator(src_image->second);
    if (dst_image == dst.embed.end() || dst_image->second != via_impure)
      out.push_back({pure_gen, "embedding square does not commute"});
  }
  return out;
}

} // namespace restrace
