#include "restrace/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "restrace/errors.hpp"
#include "restrace/interference.hpp"
#include "restrace/render.hpp"
#include "restrace/tensor.hpp"

namespace restrace {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_ws(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::size_t find_token(const std::vector<Token>& ts, std::size_t from, const std::string& text) {
  for (std::size_t i = from; i < ts.size(); ++i)
    if (ts[i].text == text) return i;
  return ts.size();
}

} // namespace

GraphFile parse_graph_file(std::string_view text) {
  GraphFile out;
  EffectfulGraph& g = out.graph;
  std::map<Name, std::size_t> line_of;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> ts = split_ws(line);
    if (ts.empty()) continue;

    auto fail = [&](const Token& t, const std::string& message) -> ParseError {
      return ParseError(line_no, t.column, message);
    };
    auto name = [&](const Token& t) {
      if (!is_valid_name(t.text)) throw fail(t, "invalid name '" + t.text + "'");
      return t.text;
    };
    const std::string& directive = ts[0].text;
    if (directive == "objects") {
      for (std::size_t i = 1; i < ts.size(); ++i) {
        const Name n = name(ts[i]);
        g.pure.add_object(n);
        g.impure.add_object(n);
        line_of.emplace(n, line_no);
      }
    } else if (directive == "devices") {
      for (std::size_t i = 1; i < ts.size(); ++i) {
        g.impure.add_device(name(ts[i]));
        line_of.emplace(ts[i].text, line_no);
      }
    } else if (directive == "pure" || directive == "gen") {
      if (ts.size() < 4 || ts[2].text != ":") throw fail(ts[0], "expected '" + directive + " NAME : DOM -> COD'");
      const Name gen = name(ts[1]);
      if (g.impure.has_generator(gen) || g.pure.has_generator(gen)) throw fail(ts[1], "duplicate generator " + gen);
      const std::size_t arrow = find_token(ts, 3, "->");
      if (arrow == ts.size()) throw fail(ts[0], "missing '->'");
      const std::size_t at = find_token(ts, arrow + 1, "@");
      if (directive == "pure" && at != ts.size()) throw fail(ts[at], "pure generators carry no devices");
      auto word = [&](std::size_t from, std::size_t to) {
        std::vector<Name> items;
        for (std::size_t i = from; i < to; ++i) {
          if (!g.impure.objects().count(ts[i].text)) throw fail(ts[i], "unknown object " + ts[i].text);
          items.push_back(ts[i].text);
        }
        return Word(std::move(items));
      };
      const Word dom = word(3, arrow);
      const Word cod = word(arrow + 1, at);
      std::set<Name> devs;
      for (std::size_t i = at + 1; i < ts.size(); ++i) {
        if (!g.impure.devices.count(ts[i].text)) throw fail(ts[i], "unknown device " + ts[i].text);
        devs.insert(ts[i].text);
      }
      if (directive == "pure") {
        g.pure.add_generator(gen, dom, cod);
        g.embed[gen] = gen;
        out.has_pure = true;
      }
      g.impure.add_generator(gen, dom, cod, devs);
      line_of.emplace(gen, line_no);
    } else {
      throw fail(ts[0], "unknown directive '" + directive + "'");
    }
  }
  if (auto vs = validate_effectful_graph(g); !vs.empty()) {
    auto it = line_of.find(vs.front().subject);
    throw ParseError(it == line_of.end() ? line_no : it->second, 1, describe(vs));
  }
  return out;
}

std::string write_graph_file(const EffectfulGraph& g) {
  auto join = [](const auto& items) {
    std::string s;
    for (const auto& x : items) s += " " + x;
    return s;
  };
  std::string out = "objects" + join(g.impure.objects()) + "\n";
  if (!g.impure.devices.empty()) out += "devices" + join(g.impure.devices) + "\n";
  for (const auto& [v, sig] : g.pure.generators) {
    auto it = g.embed.find(v);
    if (it == g.embed.end() || it->second != v) throw Error("embedding renames pure generator " + v);
    out += "pure " + v + " :" + join(sig.dom) + " ->" + join(sig.cod) + "\n";
  }
  for (const auto& [x, sig] : g.impure.generators()) {
    if (g.pure.has_generator(x)) continue;
    out += "gen " + x + " :" + join(sig.dom) + " ->" + join(sig.cod);
    const auto& devs = g.impure.devices_of(x);
    if (!devs.empty()) out += " @" + join(devs);
    out += "\n";
  }
  return out;
}

namespace {

class ExprParser {
public:
  ExprParser(std::string_view text, const GraphRef& g) : g_(g) { lex(text); }

  Morphism parse() {
    if (tokens_.empty()) throw ParseError(1, 1, "empty expression");
    Parsed m = term();
    if (pos_ < tokens_.size()) throw error("unexpected '" + tokens_[pos_].text + "'");
    return std::move(m.morphism);
  }

private:
  struct Parsed {
    Morphism morphism;
    std::size_t begin;
    std::size_t end;
  };

  static bool punct(char c) { return std::string_view("()[]|;").find(c) != std::string_view::npos; }

  void lex(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (punct(c)) {
        tokens_.push_back({std::string(1, c), i + 1});
        ++i;
      } else {
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !punct(text[i])) ++i;
        tokens_.push_back({std::string(text.substr(start, i - start)), start + 1});
      }
    }
    end_column_ = text.size() + 1;
  }

  ParseError error(const std::string& message) const {
    return ParseError(1, pos_ < tokens_.size() ? tokens_[pos_].column : end_column_, message);
  }

  bool at(const std::string& t) const { return pos_ < tokens_.size() && tokens_[pos_].text == t; }

  const Token& expect(const std::string& t) {
    if (!at(t)) throw error("expected '" + t + "'");
    return tokens_[pos_++];
  }

  bool at_name() const { return pos_ < tokens_.size() && !punct(tokens_[pos_].text[0]); }

  Word word() {
    std::vector<Name> items;
    while (at_name()) items.push_back(tokens_[pos_++].text);
    return Word(std::move(items));
  }

  Parsed term() {
    Parsed left = primary();
    while (at(";")) {
      ++pos_;
      Parsed right = primary();
      try {
        left.morphism = compose(left.morphism, right.morphism);
      } catch (const BoundaryMismatch& e) {
        throw BoundaryMismatch(e.expected, e.got, left.begin, right.end);
      }
      left.end = right.end;
    }
    return left;
  }

  Parsed primary() {
    if (at("(")) {
      const std::size_t begin = tokens_[pos_++].column;
      Parsed inner = term();
      const std::size_t end = expect(")").column;
      return {std::move(inner.morphism), begin, end};
    }
    if (!at_name()) throw error("expected a term");
    const Token name = tokens_[pos_++];
    if (name.text == "id" && at("(")) {
      ++pos_;
      Word w = word();
      const std::size_t end = expect(")").column;
      return {identity(g_, std::move(w)), name.column, end};
    }
    expect("[");
    Word left = word();
    expect("|");
    Word right = word();
    const std::size_t end = expect("]").column;
    return {gen_event(g_, std::move(left), name.text, std::move(right)), name.column, end};
  }

  GraphRef g_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_column_ = 1;
};

} // namespace

Morphism parse_morphism_expr(std::string_view text, const GraphRef& g) { return ExprParser(text, g).parse(); }

std::string format_expr(const Morphism& f) {
  if (f.is_identity()) return "id(" + f.source().str() + ")";
  std::string out;
  for (const auto& e : f.events())
    out += (out.empty() ? "" : " ; ") + e.gen + "[" + e.left.str() + "|" + e.right.str() + "]";
  return out;
}

namespace {

std::vector<std::string> split_items(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::vector<std::string> out;
  for (auto& t : split_ws(s)) out.push_back(std::move(t.text));
  return out;
}

} // namespace

TraceWord parse_trace_word(std::string_view text, const std::set<Symbol>& alphabet) {
  const bool separated = std::any_of(text.begin(), text.end(), [](char c) {
    return c == ',' || std::isspace(static_cast<unsigned char>(c));
  });
  if (separated) {
    TraceWord out = split_items(text);
    for (const auto& s : out)
      if (!alphabet.count(s)) throw UnknownName("symbol", s);
    return out;
  }
  TraceWord out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    for (const auto& s : alphabet)
      if (s.size() > best && text.substr(i, s.size()) == s) best = s.size();
    if (best == 0) throw ParseError(1, i + 1, "no symbol of the alphabet starts here");
    out.emplace_back(text.substr(i, best));
    i += best;
  }
  return out;
}

DependencyRelation parse_dependency(std::string_view alphabet, std::string_view dep) {
  std::set<Symbol> symbols;
  for (auto& s : split_items(alphabet)) {
    if (!is_valid_name(s)) throw ParseError(1, 1, "invalid symbol '" + s + "'");
    symbols.insert(std::move(s));
  }
  std::vector<std::pair<Symbol, Symbol>> pairs;
  std::size_t pos = 0;
  while (pos <= dep.size()) {
    std::size_t semi = dep.find(';', pos);
    if (semi == std::string_view::npos) semi = dep.size();
    const std::vector<std::string> group = split_items(dep.substr(pos, semi - pos));
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) pairs.emplace_back(group[i], group[j]);
    if (group.size() == 1) pairs.emplace_back(group[0], group[0]);
    pos = semi + 1;
  }
  return DependencyRelation(std::move(symbols), pairs);
}

std::vector<Word> parse_pool(std::string_view text) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    Word w = parse_word(text.substr(pos, comma - pos));
    if (w.size() == 1 && w[0] == "ε") w = Word{};
    out.push_back(std::move(w));
    pos = comma + 1;
  }
  return out;
}

std::string format_canonical(const CanonicalForm& cf, const DeviceGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < cf.events.size(); ++i) {
    if (i > 0 && cf.heights[i] != cf.heights[i - 1]) out += "--\n";
    out += to_string(cf.events[i]);
    std::string devs;
    for (const auto& d : g.devices_of(cf.events[i].gen)) devs += (devs.empty() ? "" : ",") + d;
    if (!devs.empty()) out += " @" + devs;
    out += "\n";
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream o(path, std::ios::binary);
  if (!o || !(o << content)) throw Error("cannot write " + path);
}

GraphFile load(const std::string& path) {
  try {
    return parse_graph_file(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resourceful traces: canonical forms, interference and commuting tensors.", "restrace"};
  app.require_subcommand(1);

  std::string file, file2, output, alphabet, dep, pool_text;
  std::vector<std::string> exprs, words;
  std::size_t max_events = 2;
  bool text_mode = false;

  auto* check = app.add_subcommand("check", "Validate a graph file");
  check->add_option("file", file)->required();
  auto* nf = app.add_subcommand("nf", "Print the canonical form of a morphism");
  nf->add_option("file", file)->required();
  nf->add_option("-e,--expr", exprs)->required()->expected(1);
  auto* eq = app.add_subcommand("eq", "Decide equality of two morphisms (exit 0 equal, 1 unequal)");
  eq->add_option("file", file)->required();
  eq->add_option("-e,--expr", exprs)->required()->expected(2);
  auto* devices = app.add_subcommand("devices", "Print the devices a morphism uses");
  devices->add_option("file", file)->required();
  devices->add_option("-e,--expr", exprs)->required()->expected(1);
  auto* interfere = app.add_subcommand("interfere", "Decide interference (exit 0 interfere, 1 interchange)");
  interfere->add_option("file", file)->required();
  interfere->add_option("-e,--expr", exprs)->required()->expected(2);
  auto* cliques = app.add_subcommand("cliques", "Bounded underlying device graph of a sample");
  cliques->add_option("file", file)->required();
  cliques->add_option("--max-events", max_events)->required();
  cliques->add_option("--pool", pool_text)->required();
  auto* tensor = app.add_subcommand("tensor", "Commuting tensor product of two graph files");
  tensor->add_option("file", file)->required();
  tensor->add_option("file2", file2)->required();
  tensor->add_option("-o,--output", output);
  auto* trace_eq = app.add_subcommand("trace-eq", "Decide equality of two traces (exit 0 equal, 1 unequal)");
  trace_eq->add_option("--alphabet", alphabet)->required();
  trace_eq->add_option("--dep", dep)->required();
  trace_eq->add_option("words", words)->required()->expected(2);
  auto* dist = app.add_subcommand("dist", "Distribution from the maximal cliques of a dependency");
  dist->add_option("--alphabet", alphabet)->required();
  dist->add_option("--dep", dep)->required();
  auto* render = app.add_subcommand("render", "Draw a morphism as SVG or text");
  render->add_option("file", file)->required();
  render->add_option("-e,--expr", exprs)->required()->expected(1);
  render->add_option("-o,--output", output);
  render->add_flag("--text", text_mode);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    auto morphism = [&](const GraphFile& gf, std::size_t i) {
      return parse_morphism_expr(exprs.at(i), gf.device_graph());
    };
    if (*check) {
      const GraphFile gf = load(file);
      out << "ok: " << gf.graph.impure.objects().size() << " objects, " << gf.graph.impure.generators().size()
          << " generators, " << gf.graph.impure.devices.size() << " devices\n";
      return 0;
    }
    if (*nf) {
      const GraphFile gf = load(file);
      out << format_canonical(canonical_form(morphism(gf, 0)), gf.graph.impure);
      return 0;
    }
    if (*eq) {
      const GraphFile gf = load(file);
      const bool equal = morphisms_equal(morphism(gf, 0), morphism(gf, 1));
      out << (equal ? "equal" : "unequal") << "\n";
      return equal ? 0 : 1;
    }
    if (*devices) {
      const GraphFile gf = load(file);
      std::string line;
      for (const auto& d : devices_of(morphism(gf, 0))) line += (line.empty() ? "" : " ") + d;
      out << line << "\n";
      return 0;
    }
    if (*interfere) {
      const GraphFile gf = load(file);
      const bool holds = interchange_holds(morphism(gf, 0), morphism(gf, 1));
      out << (holds ? "interchange" : "interfere") << "\n";
      return holds ? 1 : 0;
    }
    if (*cliques) {
      const GraphFile gf = load(file);
      const Underlying u = underlying_device_graph_bounded(gf.device_graph(), max_events, parse_pool(pool_text));
      out << "sample " << u.arrows.size() << " morphisms\n";
      for (std::size_t i = 0; i < u.arrows.size(); ++i) {
        const Name name = "m" + std::to_string(i);
        const Morphism& m = u.arrow(name);
        out << name << " : " << pretty(m.source()) << " -> " << pretty(m.target()) << " = " << format_expr(m) << "\n";
      }
      out << "cliques " << u.cliques.size() << "\n";
      for (const auto& c : u.cliques) {
        std::string line;
        for (const auto& m : c) line += (line.empty() ? "" : " ") + m;
        out << "device {" << line << "}\n";
      }
      return 0;
    }
    if (*tensor) {
      const std::string text = write_graph_file(commuting_tensor(load(file).graph, load(file2).graph).product);
      if (output.empty())
        out << text;
      else
        write_file(output, text);
      return 0;
    }
    if (*trace_eq) {
      const DependencyRelation d = parse_dependency(alphabet, dep);
      const bool equal =
          trace_equal(d, parse_trace_word(words[0], d.alphabet()), parse_trace_word(words[1], d.alphabet()));
      out << (equal ? "equal" : "unequal") << "\n";
      return equal ? 0 : 1;
    }
    if (*dist) {
      const DeviceGraph d = dependency_to_distribution(parse_dependency(alphabet, dep));
      for (const auto& dev : d.devices) {
        std::string members;
        for (const auto& [s, sig] : d.generators())
          if (d.devices_of(s).count(dev)) members += " " + s;
        out << "device " << dev << ":" << members << "\n";
      }
      for (const auto& [s, sig] : d.generators()) {
        std::string devs;
        for (const auto& dev : d.devices_of(s)) devs += " " + dev;
        out << s << ":" << devs << "\n";
      }
      return 0;
    }
    if (*render) {
      const GraphFile gf = load(file);
      const Layout l = layout(morphism(gf, 0));
      const std::string text = text_mode ? render_text(l) : render_svg(l);
      if (output.empty())
        out << text;
      else
        write_file(output, text);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace restrace
