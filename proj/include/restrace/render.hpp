#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "restrace/freecat.hpp"
#include "restrace/graphs.hpp"

namespace restrace {

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

struct Box {
  Name label;
  std::size_t column = 0;
  double x = 0;  // top-left corner
  double y = 0;
  double width = 0;
  double height = 0;
  std::vector<Name> devices;
};

struct ResourceWire {
  Name object;
  std::vector<Point> points;
};

struct DeviceWire {
  Name device;
  std::size_t pattern = 0;  // selects the dash period
  std::vector<Point> points;
  std::vector<std::size_t> carriers;  // indices into Layout::boxes, left to right
};

/// One column per layer of the canonical form; boxes within a column are
/// stacked by span position.
struct Layout {
  double width = 0;
  double height = 0;
  std::size_t columns = 0;
  std::vector<Box> boxes;
  std::vector<ResourceWire> wires;
  std::vector<DeviceWire> devices;
};

Layout layout(const Morphism& f);

std::string render_svg(const Layout& l);

/// Monospaced grid: `-` and `|` resource wires, `+` bends, `[label]` boxes,
/// `.` and `:` device wires, followed by a device legend.
std::string render_text(const Layout& l);

/// Device wires are monotone in x and axis-aligned, so each meets every
/// vertical line at most once (up to vertical jogs), and each one runs
/// horizontally through every box that carries its device and crosses no other box.
Violations check_layout(const Layout& l);

} // namespace restrace
