#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace restrace {

using Name = std::string;

/// A list of object names; the objects of a free (pre)monoidal category.
/// Concatenation (operator+) is the monoidal product on objects, with the
/// empty word as unit.
class Word {
public:
  Word() = default;
  Word(std::initializer_list<Name> items) : items_(items) {}
  explicit Word(std::vector<Name> items) : items_(std::move(items)) {}

  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] const Name& operator[](std::size_t i) const { return items_[i]; }
  [[nodiscard]] auto begin() const { return items_.begin(); }
  [[nodiscard]] auto end() const { return items_.end(); }
  [[nodiscard]] const std::vector<Name>& items() const { return items_; }

  /// Sub-word [pos, pos + len); clamps at the end.
  [[nodiscard]] Word slice(std::size_t pos, std::size_t len) const;
  [[nodiscard]] Word prefix(std::size_t len) const { return slice(0, len); }
  [[nodiscard]] Word suffix_from(std::size_t pos) const;

  /// Space-separated rendering; the empty word renders as "".
  [[nodiscard]] std::string str() const;

  friend Word operator+(const Word& a, const Word& b);
  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

private:
  std::vector<Name> items_;
};

/// Splits on ASCII whitespace.
Word parse_word(std::string_view text);

/// Human-facing rendering: "ε" for the empty word, otherwise names joined by " ⊗ ".
std::string pretty(const Word& w);

} // namespace restrace
