#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cayley {

// Vertex and label tokens are opaque UTF-8 text without tab or newline.
using VertexId = std::string;
using Label = std::string;
using Word = std::vector<Label>;

/// Base error for all invalid inputs and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of its node budget. Distinct from a negative answer:
/// callers must report "undecided", never "no".
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Length-lexicographic order: shorter first, ties broken bytewise.
inline bool llex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct LlexLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const {
    return llex_less(a, b);
  }
};

struct PairLlexLess {
  using is_transparent = void;
  template <typename P, typename Q>
  bool operator()(const P& a, const Q& b) const {
    if (a.first != b.first) return llex_less(a.first, b.first);
    return llex_less(a.second, b.second);
  }
};

inline void sort_unique_llex(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end(), LlexLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool token_chars_valid(std::string_view tok) {
  if (tok.empty()) return false;
  return tok.find_first_of("\t\n\r") == std::string_view::npos;
}

/// Labels the parser accepts from user input. The prefixes '~' (barred
/// chain labels), '_' (fresh loop and color labels) and '#' (comments)
/// are reserved for generated tokens.
inline bool user_label_valid(std::string_view tok) {
  return token_chars_valid(tok) && tok[0] != '~' && tok[0] != '_' &&
         tok[0] != '#';
}

inline bool user_vertex_valid(std::string_view tok) {
  return token_chars_valid(tok) && tok[0] != '#';
}

inline constexpr std::size_t kDefaultIsoBudget = 1'000'000;
inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;
inline constexpr std::size_t kDefaultPairCap = 1'000'000;
inline constexpr std::size_t kDefaultBallCap = 100'000;

}  // namespace cayley
