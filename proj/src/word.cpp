#include "restrace/word.hpp"

#include <algorithm>
#include <cctype>

namespace restrace {

Word Word::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, items_.size());
  len = std::min(len, items_.size() - pos);
  return Word(std::vector<Name>(items_.begin() + static_cast<std::ptrdiff_t>(pos),
                                items_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word Word::suffix_from(std::size_t pos) const {
  pos = std::min(pos, items_.size());
  return slice(pos, items_.size() - pos);
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i != 0) out += ' ';
    out += items_[i];
  }
  return out;
}

Word operator+(const Word& a, const Word& b) {
  std::vector<Name> items = a.items_;
  items.insert(items.end(), b.items_.begin(), b.items_.end());
  return Word(std::move(items));
}

Word parse_word(std::string_view text) {
  std::vector<Name> items;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) items.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return Word(std::move(items));
}

std::string pretty(const Word& w) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) out += " ⊗ ";
    out += w[i];
  }
  return out;
}

} // namespace restrace
