#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace morels {

enum class Cat { Noun, Verb, Adj, Adv };

inline std::optional<Cat> cat_from_atom(std::string_view a) {
  if (a == "Noun") return Cat::Noun;
  if (a == "Verb") return Cat::Verb;
  if (a == "Adj") return Cat::Adj;
  if (a == "Adv") return Cat::Adv;
  return std::nullopt;
}

inline const char* cat_atom(Cat c) {
  switch (c) {
    case Cat::Noun: return "Noun";
    case Cat::Verb: return "Verb";
    case Cat::Adj: return "Adj";
    case Cat::Adv: return "Adv";
  }
  return "Noun";
}

// Lowercase form used in tuple files ("viewer, noun, 100, ...").
inline const char* cat_lower(Cat c) {
  switch (c) {
    case Cat::Noun: return "noun";
    case Cat::Verb: return "verb";
    case Cat::Adj: return "adj";
    case Cat::Adv: return "adv";
  }
  return "noun";
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

namespace detail {

inline int parse_int_atom(const std::string& a, bool& ok) {
  ok = false;
  if (a.empty()) return 0;
  std::size_t i = (a[0] == '-') ? 1 : 0;
  if (i == a.size()) return 0;
  long v = 0;
  for (; i < a.size(); ++i) {
    if (a[i] < '0' || a[i] > '9') return 0;
    v = v * 10 + (a[i] - '0');
    if (v > 1000000000) return 0;
  }
  ok = true;
  return a[0] == '-' ? static_cast<int>(-v) : static_cast<int>(v);
}

}  // namespace detail

}  // namespace morels
