#include <doctest.h>

#include <map>

#include "restrace/errors.hpp"
#include "restrace/freecat.hpp"
#include "support.hpp"

using namespace restrace;
using namespace restrace::testing;

namespace {

GraphRef printer() { return share(printer_theory().impure); }
GraphRef two_printers() { return share(two_printer_theory().impure); }

// a : A → A' on p, b : B → B' on q.
GraphRef ab_graph() {
  DeviceGraph g;
  for (const char* o : {"A", "A'", "B", "B'"}) g.add_object(o);
  g.add_generator("a", {"A"}, {"A'"}, {"p"});
  g.add_generator("b", {"B"}, {"B'"}, {"q"});
  g.add_generator("c", {"B'"}, {"B"}, {"r"});
  return share(g);
}

// Multiset of generator names.
std::map<Name, int> occurrences(const Morphism& f) {
  std::map<Name, int> out;
  for (const auto& e : f.events()) ++out[e.gen];
  return out;
}

} // namespace

TEST_SUITE("freecat") {

TEST_CASE("identities") {
  const GraphRef g = printer();
  const Morphism e = identity(g, {});
  CHECK(e.source() == Word{});
  CHECK(e.target() == Word{});
  CHECK(e.size() == 0);
  CHECK(identity(g, {"Doc"}).target() == Word{"Doc"});
  CHECK_THROWS_AS(identity(g, {"Page"}), UnknownName);
}

TEST_CASE("generator events") {
  const GraphRef g = printer();
  const Morphism p = gen_event(g, {}, "print", {"Doc"});
  CHECK(p.source() == Word{"Doc", "Doc"});
  CHECK(p.target() == Word{"Doc"});
  const Morphism d = gen_event(g, {}, "doc", {});
  CHECK(d.source() == Word{});
  CHECK(d.target() == Word{"Doc"});
  CHECK_THROWS_AS(gen_event(g, {}, "scan", {}), UnknownName);

  DeviceGraph z;
  z.add_object("A").add_generator("tick", {}, {});
  const Morphism t = gen_event(share(z), {"A"}, "tick", {});
  CHECK(t.source() == Word{"A"});
  CHECK(t.target() == Word{"A"});
  CHECK(t.events()[0].start() == 1);
}

TEST_CASE("composition") {
  const GraphRef g = printer();
  const Morphism twice = compose(gen_event(g, {}, "print", {"Doc"}), gen_event(g, {}, "print", {}));
  CHECK(twice.source() == Word{"Doc", "Doc"});
  CHECK(twice.target() == Word{});
  CHECK(twice.size() == 2);
  CHECK(compose(twice, identity(g, {})).same_representation(twice));
  CHECK(compose(identity(g, {"Doc", "Doc"}), twice).same_representation(twice));

  const Morphism fresh = compose(gen_event(g, {}, "doc", {}), gen_event(g, {}, "print", {}));
  CHECK(fresh.source() == Word{});
  CHECK(fresh.target() == Word{});
  CHECK(fresh.size() == 2);

  CHECK_THROWS_AS(compose(gen_event(g, {}, "doc", {}), gen_event(g, {}, "doc", {})), BoundaryMismatch);
  CHECK_THROWS_AS(compose(identity(g, {}), identity(two_printers(), {})), GraphMismatch);
}

TEST_CASE("composition is associative on representations") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 6);
    if (f.size() < 3) continue;
    auto part = [&](std::size_t from, std::size_t to) {
      std::vector<Event> es(f.events().begin() + from, f.events().begin() + to);
      return Morphism(g, f.boundary(from), es);
    };
    const std::size_t i = 1, j = f.size() - 1;
    CHECK(compose(compose(part(0, i), part(i, j)), part(j, f.size()))
              .same_representation(compose(part(0, i), compose(part(i, j), part(j, f.size())))));
  }
}

TEST_CASE("whiskering") {
  const GraphRef g = printer();
  const Morphism p = gen_event(g, {}, "print", {});
  CHECK(left_whisker({}, p).same_representation(p));
  CHECK(right_whisker(p, {}).same_representation(p));
  CHECK(left_whisker({"Doc"}, p).same_representation(gen_event(g, {"Doc"}, "print", {})));
  const Word a{"Doc"}, b{"Doc", "Doc"};
  CHECK(left_whisker(a, left_whisker(b, p)).same_representation(left_whisker(a + b, p)));
  CHECK(right_whisker(right_whisker(p, a), b).same_representation(right_whisker(p, a + b)));
  CHECK_THROWS_AS(left_whisker({"Page"}, p), UnknownName);
}

TEST_CASE("devices used") {
  CHECK(devices_of(identity(printer(), {"Doc"})).empty());
  CHECK(devices_of(gen_event(printer(), {}, "print", {})) == std::set<Name>{"p"});
  const GraphRef g = two_printers();
  const Morphism both = compose(gen_event(g, {}, "l·print", {"Doc"}), gen_event(g, {}, "r·print", {}));
  CHECK(devices_of(both) == std::set<Name>{"l·p", "r·p"});
}

TEST_CASE("adjacent swaps") {
  const GraphRef two = two_printers();
  const Morphism f = compose(gen_event(two, {}, "l·print", {"Doc"}), gen_event(two, {}, "r·print", {}));
  const Morphism s = swap_adjacent(f, 0);
  CHECK(s.source() == f.source());
  CHECK(s.target() == f.target());
  CHECK(s.events()[0] == Event{"r·print", {"Doc"}, {}});
  CHECK(s.events()[1] == Event{"l·print", {}, {}});

  const GraphRef one = printer();
  const Morphism h = compose(gen_event(one, {}, "print", {"Doc"}), gen_event(one, {}, "print", {}));
  CHECK(swap_block(h, 0) == SwapBlock::SharedDevice);
  try {
    swap_adjacent(h, 0);
    FAIL("expected NotSwappable");
  } catch (const NotSwappable& e) {
    CHECK(e.reason == NotSwappable::Reason::SharedDevice);
  }
  CHECK_THROWS_AS(swap_adjacent(h, 1), IndexOutOfRange);

  const GraphRef ab = ab_graph();
  const Morphism chain = compose(gen_event(ab, {}, "b", {}), gen_event(ab, {}, "c", {}));
  CHECK(swap_block(chain, 0) == SwapBlock::OverlappingSpan);

  DeviceGraph z;
  z.add_device("p").add_device("q");
  z.add_generator("x", {}, {}, {"p"}).add_generator("y", {}, {}, {"q"});
  const GraphRef zg = share(z);
  const Morphism ticks = compose(gen_event(zg, {}, "x", {}), gen_event(zg, {}, "y", {}));
  const Morphism swapped = swap_adjacent(ticks, 0);
  CHECK(swapped.events()[0].gen == "y");
  CHECK(swap_adjacent(swapped, 0).same_representation(ticks));
}

TEST_CASE("swaps are involutions preserving boundaries, devices and occurrences") {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 6);
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      if (swap_block(f, k) != SwapBlock::None) {
        CHECK_THROWS_AS(swap_adjacent(f, k), NotSwappable);
        continue;
      }
      const Morphism s = swap_adjacent(f, k);
      const auto back = swap_results(s, k);
      CHECK(std::any_of(back.begin(), back.end(), [&](const Morphism& m) { return m.same_representation(f); }));
      if (back.size() == 1) CHECK(swap_adjacent(s, k).same_representation(f));
      CHECK(s.source() == f.source());
      CHECK(s.target() == f.target());
      CHECK(devices_of(s) == devices_of(f));
      CHECK(occurrences(s) == occurrences(f));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("strand threading") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 6);
    const StrandThreading t = thread_strands(f);
    REQUIRE(t.boundaries.size() == f.size() + 1);
    std::vector<int> produced(t.strand_count, 0), consumed(t.strand_count, 0);
    for (std::size_t s = 0; s < f.source().size(); ++s) ++produced[t.boundaries[0][s]];
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (auto s : t.emitted[i]) ++produced[s];
      for (auto s : t.consumed[i]) ++consumed[s];
    }
    for (auto s : t.boundaries.back()) ++consumed[s];
    for (std::size_t s = 0; s < t.strand_count; ++s) {
      CHECK(produced[s] == 1);
      CHECK(consumed[s] == 1);
    }
  }
}

TEST_CASE("dependence is acyclic and invariant under swaps") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 6);
    const DependenceRelation d = dependence(f);
    for (const auto& [i, j] : d.device_edges) CHECK(i < j);
    for (const auto& [i, j] : d.wire_edges) CHECK(i < j);
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      if (swap_block(f, k) != SwapBlock::None) continue;
      CHECK_FALSE(d.depends(k, k + 1));
      const DependenceRelation e = dependence(swap_adjacent(f, k));
      auto relabel = [&](std::size_t i) { return i == k ? k + 1 : i == k + 1 ? k : i; };
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          const std::size_t a = std::min(relabel(i), relabel(j)), b = std::max(relabel(i), relabel(j));
          CHECK(d.depends(i, j) == e.depends(a, b));
        }
    }
  }
}

TEST_CASE("canonical forms") {
  const GraphRef ab = ab_graph();
  const Morphism f = compose(gen_event(ab, {}, "a", {"B"}), gen_event(ab, {"A'"}, "b", {}));
  const Morphism g = compose(gen_event(ab, {"A"}, "b", {}), gen_event(ab, {}, "a", {"B'"}));
  const CanonicalForm cf = canonical_form(f);
  CHECK(cf == canonical_form(g));
  REQUIRE(cf.events.size() == 2);
  CHECK(cf.events[0].gen == "a");
  CHECK(cf.events[1].gen == "b");
  CHECK(cf.layer_count() == 1);

  const CanonicalForm id = canonical_form(identity(ab, {"A"}));
  CHECK(id.events.empty());
  CHECK(id.layer_count() == 0);
}

TEST_CASE("canonical form of a trace word gives its layers") {
  DeviceGraph d;
  d.add_device("α+β").add_device("β+δ");
  d.add_generator("α", {}, {}, {"α+β"}).add_generator("β", {}, {}, {"α+β", "β+δ"});
  d.add_generator("γ", {}, {}).add_generator("δ", {}, {}, {"β+δ"});
  const GraphRef g = share(d);
  Morphism w = identity(g, {});
  for (const char* s : {"γ", "α", "β", "α", "δ"}) w = compose(w, gen_event(g, {}, s, {}));
  const auto layers = canonical_form(w).layers();
  REQUIRE(layers.size() == 3);
  auto names = [](const std::vector<Event>& es) {
    std::set<Name> out;
    for (const auto& e : es) out.insert(e.gen);
    return out;
  };
  CHECK(names(layers[0]) == std::set<Name>{"α", "γ"});
  CHECK(names(layers[1]) == std::set<Name>{"β"});
  CHECK(names(layers[2]) == std::set<Name>{"α", "δ"});
}

TEST_CASE("canonical form invariants") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 7);
    const CanonicalForm cf = canonical_form(f);
    const Morphism c = canonical_morphism(f);
    CHECK(cf.source == f.source());
    CHECK(cf.target == f.target());
    CHECK(c.events() == cf.events);
    CHECK(morphisms_equal(c, f));
    for (std::size_t i = 1; i < cf.heights.size(); ++i) CHECK(cf.heights[i - 1] <= cf.heights[i]);
    for (const auto& layer : cf.layers())
      for (std::size_t i = 0; i < layer.size(); ++i)
        for (std::size_t j = i + 1; j < layer.size(); ++j) CHECK(orthogonal(*g, layer[i].gen, layer[j].gen));
  }
}

TEST_CASE("canonical forms are stable under random swaps") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 6);
    CHECK(canonical_form(f) == canonical_form(random_swaps(rng, f, 20)));
  }
}

TEST_CASE("equality") {
  const GraphRef one = printer();
  const Morphism left = compose(gen_event(one, {}, "print", {"Doc"}), gen_event(one, {}, "print", {}));
  const Morphism right = compose(gen_event(one, {"Doc"}, "print", {}), gen_event(one, {}, "print", {}));
  CHECK_FALSE(morphisms_equal(left, right));
  CHECK(bfs_equiv(left, right, 1000) == Equivalence::Unequal);
  CHECK(morphisms_equal(left, left));

  const GraphRef two = two_printers();
  const Morphism l = compose(gen_event(two, {}, "l·print", {"Doc"}), gen_event(two, {}, "r·print", {}));
  const Morphism r = compose(gen_event(two, {"Doc"}, "r·print", {}), gen_event(two, {}, "l·print", {}));
  CHECK(morphisms_equal(l, r));
  CHECK(bfs_equiv(l, r, 1000) == Equivalence::Equal);
  CHECK_THROWS_AS(morphisms_equal(l, left), GraphMismatch);
}

TEST_CASE("swap closures") {
  const GraphRef one = printer();
  const Morphism twice = compose(gen_event(one, {}, "print", {"Doc"}), gen_event(one, {}, "print", {}));
  const auto c1 = swap_closure(twice, 100);
  REQUIRE(c1);
  CHECK(c1->size() == 1);

  const GraphRef ab = ab_graph();
  DeviceGraph three;
  three.add_object("A").add_object("B").add_object("C");
  three.add_generator("x", {"A"}, {"A"}, {"p"}).add_generator("y", {"B"}, {"B"}, {"q"});
  three.add_generator("z", {"C"}, {"C"}, {"r"});
  const GraphRef t = share(three);
  const Morphism xyz = compose(compose(gen_event(t, {}, "x", {"B", "C"}), gen_event(t, {"A"}, "y", {"C"})),
                               gen_event(t, {"A", "B"}, "z", {}));
  const auto c3 = swap_closure(xyz, 100);
  REQUIRE(c3);
  CHECK(c3->size() == 6);
  for (const auto& m : *c3) CHECK(morphisms_equal(m, xyz));
  CHECK_FALSE(swap_closure(xyz, 3).has_value());
  CHECK(bfs_equiv(xyz, xyz, 1) == Equivalence::Equal);
}

TEST_CASE("canonical equality agrees with the swap closure") {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    GraphShape shape;
    shape.max_generators = 4;
    const GraphRef g = share(random_device_graph(rng, shape));
    const Morphism f = random_morphism(rng, g, 5);
    const Morphism h = coin(rng) ? random_swaps(rng, f, 10) : random_morphism(rng, g, 5);
    const Equivalence oracle = bfs_equiv(f, h, 200000);
    REQUIRE(oracle != Equivalence::Inconclusive);
    CHECK(morphisms_equal(f, h) == (oracle == Equivalence::Equal));
  }
}

TEST_CASE("interchange") {
  const GraphRef one = printer();
  const Morphism p = gen_event(one, {}, "print", {});
  const Morphism d = gen_event(one, {}, "doc", {});
  CHECK_FALSE(interchange_holds(p, p));
  CHECK(interchange_holds(p, d));
  CHECK(interchange_holds(p, identity(one, {"Doc"})));
  const GraphRef two = two_printers();
  CHECK(interchange_holds(gen_event(two, {}, "l·print", {}), gen_event(two, {}, "r·print", {})));
  CHECK_THROWS_AS(interchange_holds(p, gen_event(two, {}, "doc", {})), GraphMismatch);
}

TEST_CASE("orthogonal morphisms interchange") {
  Rng rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    const GraphRef g = share(random_device_graph(rng));
    const Morphism f = random_morphism(rng, g, 3, 4, 2);
    const Morphism h = random_morphism(rng, g, 3, 4, 2);
    const auto a = devices_of(f), b = devices_of(h);
    const bool disjoint = std::none_of(a.begin(), a.end(), [&](const Name& x) { return b.count(x) != 0; });
    if (disjoint) CHECK(interchange_holds(f, h));
  }
}

TEST_CASE("pure tensor") {
  const FreeEffectfulCategory cat(printer_theory());
  const GraphRef pure = cat.pure_side();
  const Morphism e = identity(pure, {});
  CHECK(tensor_pure(e, e).same_representation(e));
  const Morphism doc = gen_event(pure, {}, "doc", {});
  const Morphism dd = tensor_pure(doc, doc);
  CHECK(dd.target() == Word{"Doc", "Doc"});
  const CanonicalForm cf = canonical_form(dd);
  REQUIRE(cf.events.size() == 2);
  CHECK(cf.events[0] == Event{"doc", {}, {}});
  CHECK(cf.events[1] == Event{"doc", {}, {"Doc"}});
  CHECK(morphisms_equal(dd, compose(gen_event(pure, {}, "doc", {}), gen_event(pure, {}, "doc", {"Doc"}))));
  CHECK_THROWS_AS(tensor_pure(gen_event(printer(), {}, "print", {}), identity(printer(), {})), NotPure);
}

TEST_CASE("pure tensor is functorial") {
  Rng rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const GraphRef g = share(device_free(random_device_graph(rng).underlying));
    const Morphism f1 = random_morphism(rng, g, 2, 3, 2);
    const Morphism f2 = random_morphism(rng, g, 2, 3, 2);
    const Morphism g1 = random_morphism_from(rng, g, f1.target(), 2, 4);
    const Morphism g2 = random_morphism_from(rng, g, f2.target(), 2, 4);
    CHECK(morphisms_equal(compose(tensor_pure(f1, f2), tensor_pure(g1, g2)),
                          tensor_pure(compose(f1, g1), compose(f2, g2))));
    CHECK(morphisms_equal(compose(right_whisker(f1, f2.source()), left_whisker(f1.target(), f2)),
                          compose(left_whisker(f1.source(), f2), right_whisker(f1, f2.target()))));
  }
}

TEST_CASE("pure morphisms embed centrally") {
  const FreeEffectfulCategory cat(printer_theory());
  const Morphism e = embed_pure(cat, identity(cat.pure_side(), {"Doc"}));
  CHECK(e.is_identity());
  const Morphism doc = embed_pure(cat, gen_event(cat.pure_side(), {}, "doc", {}));
  CHECK(devices_of(doc).empty());
  CHECK(interchange_holds(doc, gen_event(cat.impure_side(), {}, "print", {})));
  CHECK_THROWS_AS(embed_pure(cat, gen_event(cat.impure_side(), {}, "print", {})), GraphMismatch);
}

TEST_CASE("induced functors") {
  const GraphRef one = printer();
  const GraphRef two = two_printers();
  const Morphism f = compose(gen_event(one, {}, "doc", {}), gen_event(one, {}, "print", {}));
  CHECK(map_morphism(identity_morphism(one->underlying), one, f).same_representation(f));

  GraphMorphism left;
  left.objects = {{"Doc", "Doc"}};
  left.generators = {{"doc", "doc"}, {"print", "l·print"}};
  const Morphism m = map_morphism(left, two, f);
  CHECK(m.events()[1].gen == "l·print");

  GraphMorphism merge;
  merge.objects = {{"Doc", "Doc"}};
  merge.generators = {{"doc", "doc"}, {"l·print", "print"}, {"r·print", "print"}};
  CHECK_THROWS_AS(map_morphism(merge, one, gen_event(two, {}, "doc", {})), InvalidMorphism);
}

TEST_CASE("induced functors preserve equality") {
  // Two orthogonal generators collapse onto one orthogonal pair of a smaller graph.
  DeviceGraph src;
  src.add_object("A").add_object("B");
  src.add_generator("f", {"A"}, {"A"}, {"p"}).add_generator("g", {"B"}, {"B"}, {"q"});
  src.add_generator("h", {"A"}, {"A"}, {"r"});
  DeviceGraph dst;
  dst.add_object("C");
  dst.add_generator("u", {"C"}, {"C"}, {"s"}).add_generator("v", {"C"}, {"C"});
  GraphMorphism alpha;
  alpha.objects = {{"A", "C"}, {"B", "C"}};
  alpha.generators = {{"f", "u"}, {"g", "v"}, {"h", "v"}};
  REQUIRE(check_device_graph_morphism(alpha, src, dst).empty());
  const GraphRef s = share(src), d = share(dst);
  Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const Morphism f = random_morphism(rng, s, 5);
    const Morphism f2 = random_swaps(rng, f, 10);
    CHECK(morphisms_equal(map_morphism(alpha, d, f), map_morphism(alpha, d, f2)));
  }
}

TEST_CASE("enumeration") {
  const GraphRef g = printer();
  const std::vector<Word> pool{{}, {"Doc"}};
  const auto ids = enumerate_morphisms(g, 0, pool);
  REQUIRE(ids.size() == 2);
  for (const auto& m : ids) CHECK(m.is_identity());

  const auto one = enumerate_morphisms(g, 1, pool);
  CHECK(one.size() == 4);
  std::set<Name> gens;
  for (const auto& m : one)
    for (const auto& e : m.events()) gens.insert(e.gen);
  CHECK(gens == std::set<Name>{"doc", "print"});

  const auto two = enumerate_morphisms(g, 2, {{"Doc", "Doc"}, {}});
  const Morphism left = compose(gen_event(g, {}, "print", {"Doc"}), gen_event(g, {}, "print", {}));
  const Morphism right = compose(gen_event(g, {"Doc"}, "print", {}), gen_event(g, {}, "print", {}));
  auto count = [&](const Morphism& x) {
    return std::count_if(two.begin(), two.end(), [&](const Morphism& m) {
      return m.source() == x.source() && m.target() == x.target() && morphisms_equal(m, x);
    });
  };
  CHECK(count(left) == 1);
  CHECK(count(right) == 1);
  CHECK_THROWS_AS(enumerate_morphisms(g, 3, pool, 3), BudgetExceeded);
  const auto again = enumerate_morphisms(g, 2, {{"Doc", "Doc"}, {}});
  REQUIRE(again.size() == two.size());
  for (std::size_t i = 0; i < two.size(); ++i) CHECK(again[i].same_representation(two[i]));
}

} // TEST_SUITE
