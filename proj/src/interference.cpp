#include "restrace/interference.hpp"

#include <algorithm>

#include "restrace/errors.hpp"

namespace restrace {

namespace {

struct BronKerbosch {
  std::vector<std::vector<bool>> adj;
  std::vector<Clique> out;

  static std::vector<std::size_t> meet(const std::vector<std::size_t>& xs, const std::vector<bool>& row) {
    std::vector<std::size_t> r;
    for (auto x : xs)
      if (row[x]) r.push_back(x);
    return r;
  }

  void run(Clique& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
    if (p.empty() && x.empty()) {
      Clique c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    std::size_t pivot = p.empty() ? x.front() : x.empty() ? p.front() : std::min(p.front(), x.front());
    const std::vector<std::size_t> candidates = [&] {
      std::vector<std::size_t> c;
      for (auto v : p)
        if (!adj[pivot][v]) c.push_back(v);
      return c;
    }();
    for (auto v : candidates) {
      r.push_back(v);
      run(r, meet(p, adj[v]), meet(x, adj[v]));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.insert(std::upper_bound(x.begin(), x.end(), v), v);
    }
  }
};

} // namespace

std::vector<Clique> maximal_cliques(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges) {
  BronKerbosch bk;
  bk.adj.assign(n, std::vector<bool>(n, false));
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n) throw IndexOutOfRange(std::max(i, j), n);
    if (i == j) continue;
    bk.adj[i][j] = bk.adj[j][i] = true;
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Clique r;
  bk.run(r, all, {});
  std::sort(bk.out.begin(), bk.out.end());
  return bk.out;
}

std::vector<Clique> nontrivial(std::vector<Clique> cliques) {
  std::erase_if(cliques, [](const Clique& c) { return c.size() < 2; });
  return cliques;
}

InterferenceGraph interference_graph(const std::vector<Morphism>& ms) {
  InterferenceGraph out{ms, {}};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!same_graph(ms[i].graph(), ms.front().graph())) throw GraphMismatch();
    for (std::size_t j = i; j < ms.size(); ++j)
      if (!interchange_holds(ms[i], ms[j])) out.edges.insert({i, j});
  }
  return out;
}

std::vector<Clique> maximal_cliques(const InterferenceGraph& g) {
  return maximal_cliques(g.vertices.size(), g.edges);
}

const Morphism& Underlying::arrow(const Name& gen) const {
  auto it = arrows.find(gen);
  if (it == arrows.end()) throw UnknownName("arrow", gen);
  return it->second;
}

Underlying underlying_of_sample(const GraphRef& base, const std::vector<Morphism>& sample,
                                const std::vector<Name>& names) {
  if (names.size() != sample.size()) throw Error("sample and names differ in length");
  const InterferenceGraph ig = interference_graph(sample);

  DeviceGraph g;
  for (const auto& obj : base->objects()) g.add_object(obj);
  std::map<Name, std::set<Name>> devs;
  Underlying out{base, nullptr, {}, {}};
  for (const auto& clique : nontrivial(maximal_cliques(ig))) {
    std::vector<Name> members;
    for (auto i : clique) members.push_back(names[i]);
    std::sort(members.begin(), members.end());
    std::string device;
    for (const auto& m : members) device += (device.empty() ? "" : "+") + m;
    g.add_device(device);
    for (const auto& m : members) devs[m].insert(device);
    out.cliques.push_back(std::move(members));
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!is_valid_name(names[i])) throw Error("invalid arrow name " + names[i]);
    if (!out.arrows.emplace(names[i], sample[i]).second) throw Error("duplicate arrow name " + names[i]);
    g.add_generator(names[i], sample[i].source(), sample[i].target(), devs[names[i]]);
  }
  out.graph = share(std::move(g));
  return out;
}

Underlying underlying_device_graph_bounded(const GraphRef& g, std::size_t max_events, const std::vector<Word>& pool,
                                           std::size_t cap) {
  const std::vector<Morphism> sample = enumerate_morphisms(g, max_events, pool, cap);
  std::vector<Name> names;
  for (std::size_t i = 0; i < sample.size(); ++i) names.push_back("m" + std::to_string(i));
  return underlying_of_sample(g, sample, names);
}

Morphism unit_map(const GraphRef& g, const Name& f) { return gen_event(g, {}, f, {}); }

Underlying unit_image(const GraphRef& g) {
  std::vector<Morphism> sample;
  std::vector<Name> names;
  for (const auto& [gen, sig] : g->generators()) {
    sample.push_back(unit_map(g, gen));
    names.push_back(gen);
  }
  return underlying_of_sample(g, sample, names);
}

Morphism eta_relabel(const Underlying& eta, const Morphism& f) {
  if (!same_graph(f.graph(), eta.base)) throw GraphMismatch();
  return Morphism(eta.graph, f.source(), f.events());
}

Morphism counit_eval(const Underlying& u, const Morphism& nested) {
  if (!same_graph(nested.graph(), u.graph)) throw GraphMismatch();
  Morphism out = identity(u.base, nested.source());
  for (const auto& e : nested.events())
    out = compose(out, left_whisker(e.left, right_whisker(u.arrow(e.gen), e.right)));
  return out;
}

TriangleReport triangle_checks(const GraphRef& g, const std::vector<Morphism>& samples, std::size_t fragment_events) {
  TriangleReport report;
  const Underlying eta = unit_image(g);

  for (const auto& [f, fs] : g->generators())
    for (const auto& [h, hs] : g->generators()) {
      if (!orthogonal(*g, f, h) || orthogonal(*eta.graph, f, h)) continue;
      report.failures.push_back("unit does not preserve orthogonality of " + f + " and " + h);
    }

  for (std::size_t i = 0; i < samples.size(); ++i) {
    ++report.unit_checks;
    if (!morphisms_equal(counit_eval(eta, eta_relabel(eta, samples[i])), samples[i]))
      report.failures.push_back("counit after unit differs on sample " + std::to_string(i));
  }

  std::vector<Word> pool{Word{}};
  for (const auto& obj : g->objects()) pool.push_back(Word{obj});
  const Underlying u = underlying_device_graph_bounded(g, fragment_events, pool);
  for (const auto& [name, m] : u.arrows) {
    ++report.counit_checks;
    if (!morphisms_equal(counit_eval(u, gen_event(u.graph, {}, name, {})), m))
      report.failures.push_back("counit does not undo the unit on arrow " + name);
  }
  return report;
}

} // namespace restrace
