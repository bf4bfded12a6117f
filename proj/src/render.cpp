#include "restrace/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "detail.hpp"

namespace restrace {

namespace {

constexpr double kPitch = 40;
constexpr double kTop = 40;
constexpr double kMargin = 30;
constexpr double kLead = 40;
constexpr double kColumn = 120;
constexpr double kBox = 56;
constexpr double kTransition = (kColumn - kBox) / 2;
constexpr double kDeviceGap = 6;

double row_y(double row) { return kTop + row * kPitch; }

struct Token {
  enum Kind { Orig, Marker, Out } kind;
  std::size_t a;  // boundary index for Orig, event index otherwise
  std::size_t b;  // output port for Out
};

void push(std::vector<Point>& pts, Point p) {
  if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
}

} // namespace

Layout layout(const Morphism& f) {
  const CanonicalForm cf = canonical_form(f);
  const Morphism cm(f.graph(), f.source(), cf.events);
  const StrandThreading threads = thread_strands(cm);
  const DeviceGraph& g = *f.graph();

  Layout out;
  out.columns = cf.layer_count();
  const double x0 = kMargin + kLead;
  const double x_end = x0 + static_cast<double>(out.columns) * kColumn;
  out.width = x_end + kLead + kMargin;

  std::vector<std::vector<Point>> pts(threads.strand_count);
  std::vector<Name> objects(threads.strand_count);
  std::size_t rows = std::max(f.source().size(), f.target().size());
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    objects[i] = f.source()[i];
    pts[i] = {{kMargin, row_y(static_cast<double>(i))}, {x0, row_y(static_cast<double>(i))}};
  }

  std::vector<std::size_t> box_of_event(cm.size());
  std::size_t begin = 0;
  for (std::size_t layer = 0; layer < out.columns; ++layer) {
    std::size_t end = begin;
    while (end < cm.size() && cf.heights[end] == layer + 1) ++end;
    const double a = x0 + static_cast<double>(layer) * kColumn;
    const double c = a + kColumn / 2;

    std::vector<Token> tokens;
    for (std::size_t i = 0; i < cm.boundary(begin).size(); ++i) tokens.push_back({Token::Orig, i, 0});
    for (std::size_t k = begin; k < end; ++k) {
      const Signature& sig = cm.signature(k);
      std::size_t seen = 0, p = 0;
      // Sources go in front of the boxes already at their slot, consumers behind them.
      while (p < tokens.size() &&
             (seen < cm.events()[k].start() || (!sig.dom.empty() && tokens[p].kind == Token::Marker))) {
        if (tokens[p].kind != Token::Marker) ++seen;
        ++p;
      }
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(p),
                   tokens.begin() + static_cast<std::ptrdiff_t>(p + sig.dom.size()));
      std::vector<Token> inserted{{Token::Marker, k, 0}};
      for (std::size_t j = 0; j < sig.cod.size(); ++j) inserted.push_back({Token::Out, k, j});
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(p), inserted.begin(), inserted.end());
    }

    std::map<std::size_t, double> mid_row, box_row;
    double r = 0;
    for (const auto& t : tokens) {
      if (t.kind == Token::Orig) {
        mid_row[t.a] = r++;
      } else if (t.kind == Token::Marker) {
        const Signature& sig = cm.signature(t.a);
        box_row[t.a] = r;
        r += static_cast<double>(std::max({sig.dom.size(), sig.cod.size(), std::size_t{1}}));
      }
    }
    rows = std::max({rows, static_cast<std::size_t>(r), cm.boundary(begin).size()});

    auto height = [&](std::size_t k) {
      const Signature& sig = cm.signature(k);
      return static_cast<double>(std::max({sig.dom.size(), sig.cod.size(), std::size_t{1}}));
    };
    auto port_y = [&](std::size_t k, std::size_t width, std::size_t j) {
      return row_y(box_row[k] + (height(k) - static_cast<double>(width)) / 2 + static_cast<double>(j));
    };

    for (std::size_t k = begin; k < end; ++k) {
      const Event& e = cm.events()[k];
      Box box{e.gen, layer, c - kBox / 2, row_y(box_row[k]) - kPitch / 2 + 8, kBox, height(k) * kPitch - 16, {}};
      const auto& devs = g.devices_of(e.gen);
      box.devices.assign(devs.begin(), devs.end());
      box_of_event[k] = out.boxes.size();
      out.boxes.push_back(std::move(box));
      const Signature& sig = cm.signature(k);
      for (std::size_t j = 0; j < sig.dom.size(); ++j) {
        const std::size_t sid = threads.consumed[k][j];
        const double y = port_y(k, sig.dom.size(), j);
        push(pts[sid], {a + kTransition, y});
        push(pts[sid], {c - kBox / 2, y});
      }
    }

    std::size_t o = 0;
    for (const auto& t : tokens) {
      if (t.kind == Token::Marker) continue;
      const double y_out = row_y(static_cast<double>(o));
      if (t.kind == Token::Orig) {
        const std::size_t sid = threads.boundaries[begin][t.a];
        push(pts[sid], {a + kTransition, row_y(mid_row[t.a])});
        push(pts[sid], {a + kColumn - kTransition, row_y(mid_row[t.a])});
        push(pts[sid], {a + kColumn, y_out});
      } else {
        const Signature& sig = cm.signature(t.a);
        const std::size_t sid = threads.emitted[t.a][t.b];
        const double y = port_y(t.a, sig.cod.size(), t.b);
        objects[sid] = sig.cod[t.b];
        push(pts[sid], {c + kBox / 2, y});
        push(pts[sid], {a + kColumn - kTransition, y});
        push(pts[sid], {a + kColumn, y_out});
      }
      ++o;
    }
    begin = end;
  }
  for (std::size_t o = 0; o < f.target().size(); ++o)
    push(pts[threads.boundaries.back()[o]], {x_end + kLead, row_y(static_cast<double>(o))});

  for (std::size_t s = 0; s < threads.strand_count; ++s) out.wires.push_back({objects[s], std::move(pts[s])});
  const double floor = rows == 0 ? 2 * kTop : row_y(static_cast<double>(rows - 1)) + kPitch;

  // Each device runs in its own lane below the resources and climbs into its carriers.
  const std::vector<Name> all_devices(g.devices.begin(), g.devices.end());
  double lane = floor;
  for (const auto& d : devices_of(cm)) {
    DeviceWire wire{d, static_cast<std::size_t>(std::lower_bound(all_devices.begin(), all_devices.end(), d) -
                                                all_devices.begin()),
                    {}, {}};
    push(wire.points, {kMargin, lane});
    for (std::size_t k = 0; k < cm.size(); ++k) {
      const Box& box = out.boxes[box_of_event[k]];
      auto it = std::find(box.devices.begin(), box.devices.end(), d);
      if (it == box.devices.end()) continue;
      const double m = static_cast<double>(it - box.devices.begin());
      const double n = static_cast<double>(box.devices.size());
      const double y = box.y + box.height / 2 + (m - (n - 1) / 2) * kDeviceGap;
      const double in = box.x - 4 - 3 * m;
      const double out_x = box.x + box.width + 4 + 3 * m;
      push(wire.points, {in, lane});
      push(wire.points, {in, y});
      push(wire.points, {box.x, y});
      push(wire.points, {box.x + box.width, y});
      push(wire.points, {out_x, y});
      push(wire.points, {out_x, lane});
      wire.carriers.push_back(box_of_event[k]);
    }
    push(wire.points, {out.width - kMargin, lane});
    out.devices.push_back(std::move(wire));
    lane += kPitch / 2;
  }
  out.height = out.devices.empty() ? floor : lane;
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += ch;
    }
  }
  return out;
}

std::string polyline(const std::vector<Point>& pts) {
  std::string out;
  for (const auto& p : pts) out += (out.empty() ? "" : " ") + num(p.x) + "," + num(p.y);
  return out;
}

} // namespace

std::string render_svg(const Layout& l) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(l.width) + "\" height=\"" +
       num(l.height) + "\" viewBox=\"0.00 0.00 " + num(l.width) + " " + num(l.height) + "\">\n";
  s += "<rect x=\"0.00\" y=\"0.00\" width=\"" + num(l.width) + "\" height=\"" + num(l.height) +
       "\" fill=\"#ffffff\"/>\n";
  s += "<g fill=\"none\" stroke=\"#888888\" stroke-width=\"1.50\">\n";
  for (const auto& d : l.devices) {
    const double on = 3 + 2 * static_cast<double>(d.pattern % 6);
    s += "<polyline data-device=\"" + escape(d.device) + "\" stroke-dasharray=\"" + num(on) + "," + num(3) +
         "\" points=\"" + polyline(d.points) + "\"/>\n";
  }
  s += "</g>\n<g fill=\"none\" stroke=\"#000000\" stroke-width=\"1.50\">\n";
  for (const auto& w : l.wires) s += "<polyline points=\"" + polyline(w.points) + "\"/>\n";
  s += "</g>\n<g font-family=\"monospace\" font-size=\"10.00\" fill=\"#444444\">\n";
  for (const auto& w : l.wires)
    if (!w.points.empty())
      s += "<text x=\"" + num(w.points.front().x) + "\" y=\"" + num(w.points.front().y - 4) + "\">" +
           escape(w.object) + "</text>\n";
  for (const auto& d : l.devices)
    s += "<text x=\"" + num(d.points.front().x) + "\" y=\"" + num(d.points.front().y - 4) + "\">" +
         escape(d.device) + "</text>\n";
  s += "</g>\n<g font-family=\"monospace\" font-size=\"12.00\" text-anchor=\"middle\">\n";
  for (const auto& b : l.boxes) {
    s += "<rect x=\"" + num(b.x) + "\" y=\"" + num(b.y) + "\" width=\"" + num(b.width) + "\" height=\"" +
         num(b.height) + "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.50\"/>\n";
    s += "<text x=\"" + num(b.x + b.width / 2) + "\" y=\"" + num(b.y + b.height / 2 + 4) + "\">" + escape(b.label) +
         "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

namespace {

constexpr double kCharWidth = 8;
constexpr double kCharHeight = 20;

class Grid {
public:
  Grid(double width, double height)
      : cells_(static_cast<std::size_t>(std::ceil(height / kCharHeight)) + 1,
               std::vector<std::string>(static_cast<std::size_t>(std::ceil(width / kCharWidth)) + 1, " ")) {}

  static std::size_t col(double x) { return static_cast<std::size_t>(std::lround(x / kCharWidth)); }
  static std::size_t row(double y) { return static_cast<std::size_t>(std::lround(y / kCharHeight)); }

  void put(std::size_t r, std::size_t c, const std::string& ch) {
    if (r >= cells_.size() || c >= cells_[r].size()) return;
    std::string& cell = cells_[r][c];
    const bool wire = ch == "-" || ch == "|";
    if (wire && ((cell == "-" && ch == "|") || (cell == "|" && ch == "-") || cell == "+")) {
      cell = "+";
      return;
    }
    cell = ch;
  }

  void segment(Point p, Point q, const std::string& horizontal, const std::string& vertical, bool corners) {
    std::size_t c1 = col(p.x), c2 = col(q.x), r1 = row(p.y), r2 = row(q.y);
    if (c1 > c2) {
      std::swap(c1, c2);
      std::swap(r1, r2);
    }
    if (r1 == r2) {
      for (std::size_t c = c1; c <= c2; ++c) put(r1, c, horizontal);
      return;
    }
    const std::size_t mid = (c1 + c2) / 2;
    for (std::size_t c = c1; c <= mid; ++c) put(r1, c, horizontal);
    for (std::size_t r = std::min(r1, r2); r <= std::max(r1, r2); ++r) put(r, mid, vertical);
    for (std::size_t c = mid; c <= c2; ++c) put(r2, c, horizontal);
    if (corners) {
      cells_[r1][mid] = "+";
      cells_[r2][mid] = "+";
    }
  }

  void box(const Box& b) {
    const std::size_t cl = col(b.x), cr = col(b.x + b.width), rt = row(b.y), rb = row(b.y + b.height);
    for (std::size_t r = rt; r <= rb && r < cells_.size(); ++r)
      for (std::size_t c = cl; c <= cr && c < cells_[r].size(); ++c) cells_[r][c] = c == cl ? "[" : c == cr ? "]" : " ";
    std::vector<std::string> glyphs;
    for (char ch : b.label) {
      if ((static_cast<unsigned char>(ch) & 0xC0) == 0x80 && !glyphs.empty())
        glyphs.back() += ch;
      else
        glyphs.emplace_back(1, ch);
    }
    const std::size_t room = cr - cl - 1;
    if (glyphs.size() > room) glyphs.resize(room);
    const std::size_t r = (rt + rb) / 2;
    const std::size_t start = cl + 1 + (room - glyphs.size()) / 2;
    for (std::size_t i = 0; i < glyphs.size(); ++i) put(r, start + i, glyphs[i]);
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (const auto& line : cells_) {
      std::string s;
      for (const auto& cell : line) s += cell;
      s.erase(s.find_last_not_of(' ') + 1);
      out += s + "\n";
    }
    return out;
  }

private:
  std::vector<std::vector<std::string>> cells_;
};

} // namespace

std::string render_text(const Layout& l) {
  Grid grid(l.width, l.height);
  for (const auto& d : l.devices)
    for (std::size_t i = 0; i + 1 < d.points.size(); ++i) grid.segment(d.points[i], d.points[i + 1], ".", ":", false);
  for (const auto& w : l.wires)
    for (std::size_t i = 0; i + 1 < w.points.size(); ++i) grid.segment(w.points[i], w.points[i + 1], "-", "|", true);
  for (const auto& b : l.boxes) grid.box(b);
  std::string out = grid.str();
  for (const auto& d : l.devices) out += "device " + d.device + "\n";
  return out;
}

Violations check_layout(const Layout& l) {
  Violations out;
  for (const auto& d : l.devices) {
    for (std::size_t i = 0; i + 1 < d.points.size(); ++i) {
      const Point& p = d.points[i];
      const Point& q = d.points[i + 1];
      if (q.x < p.x) out.push_back({d.device, "device wire runs backwards"});
      if (p.x != q.x && p.y != q.y) out.push_back({d.device, "device wire segment is not axis-aligned"});
    }
    for (std::size_t b = 0; b < l.boxes.size(); ++b) {
      const Box& box = l.boxes[b];
      const bool carries = std::find(box.devices.begin(), box.devices.end(), d.device) != box.devices.end();
      const bool listed = std::find(d.carriers.begin(), d.carriers.end(), b) != d.carriers.end();
      if (carries != listed) {
        out.push_back({d.device, "carrier list disagrees with box " + box.label});
        continue;
      }
      if (!carries) {
        for (std::size_t i = 0; i + 1 < d.points.size(); ++i) {
          const Point& p = d.points[i];
          const Point& q = d.points[i + 1];
          const bool across = std::max(p.x, q.x) > box.x && std::min(p.x, q.x) < box.x + box.width;
          const bool down = std::max(p.y, q.y) > box.y && std::min(p.y, q.y) < box.y + box.height;
          if (across && down) {
            out.push_back({d.device, "device wire crosses box " + box.label});
            break;
          }
        }
        continue;
      }
      bool threaded = false;
      for (std::size_t i = 0; i + 1 < d.points.size(); ++i) {
        const Point& p = d.points[i];
        const Point& q = d.points[i + 1];
        threaded = threaded || (p.y == q.y && p.x <= box.x && q.x >= box.x + box.width && p.y >= box.y &&
                                p.y <= box.y + box.height);
      }
      if (!threaded) out.push_back({d.device, "device wire misses box " + box.label});
    }
  }
  return out;
}

} // namespace restrace
