#include "restrace/tensor.hpp"

#include "restrace/errors.hpp"

namespace restrace {

namespace {

std::set<Name> embedded(const EffectfulGraph& g) {
  std::set<Name> out;
  for (const auto& [v, image] : g.embed) out.insert(image);
  return out;
}

void add_side(const EffectfulGraph& g, const std::string& tag, EffectfulGraph& product, GraphMorphism& inj) {
  const std::set<Name> images = embedded(g);
  for (const auto& d : g.impure.devices) product.impure.add_device(tag + d);
  for (const auto& [v, image] : g.embed) inj.generators[image] = v;
  for (const auto& [x, sig] : g.impure.generators()) {
    if (images.count(x) != 0) continue;
    const Name name = tag + x;
    if (product.impure.has_generator(name)) throw Error("generator name clash on " + name);
    std::set<Name> devs;
    for (const auto& d : g.impure.devices_of(x)) devs.insert(tag + d);
    product.impure.add_generator(name, sig.dom, sig.cod, devs);
    inj.generators[x] = name;
  }
  for (const auto& obj : g.impure.objects()) inj.objects[obj] = obj;
}

std::vector<Morphism> sample(const DeviceGraph& g, const SampleBudget& budget) {
  return enumerate_morphisms(share(g), budget.max_events, budget.pool, budget.cap);
}

} // namespace

TensorResult commuting_tensor(const EffectfulGraph& g, const EffectfulGraph& h) {
  if (!(g.pure == h.pure)) throw PureMismatch("the factors have different pure parts");
  for (const auto* side : {&g, &h})
    if (auto vs = validate_effectful_graph(*side); !vs.empty()) throw InvalidMorphism(describe(vs));

  TensorResult out;
  out.product.pure = g.pure;
  for (const auto& obj : g.pure.objects) out.product.impure.add_object(obj);
  for (const auto& [v, sig] : g.pure.generators) {
    out.product.impure.add_generator(v, sig.dom, sig.cod);
    out.product.embed[v] = v;
  }
  out.left.pure = identity_morphism(g.pure);
  out.right.pure = identity_morphism(h.pure);
  add_side(g, kLeftTag, out.product, out.left.impure);
  add_side(h, kRightTag, out.product, out.right.impure);
  return out;
}

bool is_commuting_cospan(const EffectfulGraph& g, const EffectfulGraph& h, const Cospan& k,
                         const std::vector<Morphism>& left, const std::vector<Morphism>& right) {
  if (auto vs = check_effectful_graph_morphism(k.left, g, k.apex); !vs.empty()) throw InvalidMorphism(describe(vs));
  if (auto vs = check_effectful_graph_morphism(k.right, h, k.apex); !vs.empty()) throw InvalidMorphism(describe(vs));
  const GraphRef apex = share(k.apex.impure);
  std::vector<Morphism> images;
  for (const auto& q : right) images.push_back(map_morphism(k.right.impure, apex, q));
  for (const auto& p : left) {
    const Morphism pf = map_morphism(k.left.impure, apex, p);
    for (const auto& qg : images)
      if (!parallel(pf, qg)) return false;
  }
  return true;
}

bool is_commuting_cospan(const EffectfulGraph& g, const EffectfulGraph& h, const Cospan& k,
                         const SampleBudget& budget) {
  return is_commuting_cospan(g, h, k, sample(g.impure, budget), sample(h.impure, budget));
}

EffectfulGraphMorphism mediating_morphism(const EffectfulGraph& g, const EffectfulGraph& h, const TensorResult& t,
                                          const Cospan& k, const SampleBudget& budget) {
  if (!(k.left.pure == k.right.pure) || k.left.impure.objects != k.right.impure.objects)
    throw PureDisagreement("the legs differ on objects or pure generators");
  for (const auto& [v, image] : g.embed) {
    auto other = h.embed.find(v);
    if (other == h.embed.end() ||
        k.left.impure.apply_generator(image) != k.right.impure.apply_generator(other->second))
      throw PureDisagreement("the legs send pure generator " + v + " to different arrows");
  }
  if (!is_commuting_cospan(g, h, k, budget)) throw NotCommuting("the cospan does not commute on the sample");

  EffectfulGraphMorphism out;
  out.pure = k.left.pure;
  out.impure.objects = k.left.impure.objects;
  for (const auto& [x, tagged] : t.left.impure.generators) out.impure.generators[tagged] = k.left.impure.apply_generator(x);
  for (const auto& [y, tagged] : t.right.impure.generators)
    out.impure.generators[tagged] = k.right.impure.apply_generator(y);
  return out;
}

namespace {

// Number of generator maps out of the product that compose with the
// injections to the legs; each generator is constrained independently.
std::size_t count_mediators(const TensorResult& t, const Cospan& k) {
  std::size_t total = 1;
  for (const auto& [p, sig] : t.product.impure.generators()) {
    std::size_t options = 0;
    for (const auto& [c, csig] : k.apex.impure.generators()) {
      if (k.left.impure.apply(sig.dom) != csig.dom || k.left.impure.apply(sig.cod) != csig.cod) continue;
      bool fits = true;
      for (const auto& [x, tagged] : t.left.impure.generators)
        if (tagged == p && k.left.impure.apply_generator(x) != c) fits = false;
      for (const auto& [y, tagged] : t.right.impure.generators)
        if (tagged == p && k.right.impure.apply_generator(y) != c) fits = false;
      options += fits ? 1 : 0;
    }
    total *= options;
  }
  return total;
}

} // namespace

TensorReport theorem54_check(const EffectfulGraph& g, const EffectfulGraph& h, const SampleBudget& budget) {
  TensorReport report;
  const TensorResult t = commuting_tensor(g, h);
  const GraphRef product = share(t.product.impure);

  std::vector<Morphism> lefts, rights;
  for (const auto& f : sample(g.impure, budget)) lefts.push_back(map_morphism(t.left.impure, product, f));
  for (const auto& f : sample(h.impure, budget)) rights.push_back(map_morphism(t.right.impure, product, f));

  for (const auto& f : lefts)
    for (const auto& r : rights) {
      ++report.cross_pairs;
      if (!interchange_holds(f, r)) ++report.cross_failures;
    }
  if (report.cross_failures != 0)
    report.failures.push_back(std::to_string(report.cross_failures) + " cross pairs fail to interchange");
  for (std::size_t i = 0; i < lefts.size(); ++i)
    for (std::size_t j = i + 1; j < lefts.size(); ++j) {
      ++report.left_pairs;
      if (!interchange_holds(lefts[i], lefts[j])) ++report.left_interfering;
    }

  const TensorResult t2 = commuting_tensor(t.product, h);
  const std::vector<Cospan> cospans{
      {t.product, t.left, t.right},
      {t2.product, compose(t.left, t2.left), t2.right},
  };
  for (const auto& k : cospans) {
    ++report.cospans;
    const std::string which = "cospan " + std::to_string(report.cospans) + ": ";
    try {
      const EffectfulGraphMorphism m = mediating_morphism(g, h, t, k, budget);
      if (auto vs = check_effectful_graph_morphism(m, t.product, k.apex); !vs.empty())
        report.failures.push_back(which + describe(vs));
      if (!(compose(t.left, m) == k.left) || !(compose(t.right, m) == k.right))
        report.failures.push_back(which + "mediator does not recover the legs");
      const std::size_t n = count_mediators(t, k);
      if (n == 1)
        ++report.mediators_unique;
      else
        report.failures.push_back(which + std::to_string(n) + " candidate mediators");
    } catch (const Error& e) {
      report.failures.push_back(which + e.what());
    }
  }
  return report;
}

} // namespace restrace
