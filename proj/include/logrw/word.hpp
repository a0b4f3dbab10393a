// Copyright 2026 The logrw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logrw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(std::string name)
      : Error("unknown letter '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

using Letter = std::uint32_t;

/// Elements of the free monoid. The empty word is the identity.
using Word = std::vector<Letter>;

/// Generator names in declaration order. Position is precedence: the first
/// declared letter is the greatest.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) {
        throw Error("empty generator name");
      }
      if (!index_.emplace(names_[i], static_cast<Letter>(i)).second) {
        throw Error("duplicate letter '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  const std::string& name(Letter x) const {
    if (x >= names_.size()) {
      throw UnknownLetter("#" + std::to_string(x));
    }
    return names_[x];
  }

  std::optional<Letter> find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  Letter letter(std::string_view name) const {
    if (auto x = find(name)) {
      return *x;
    }
    throw UnknownLetter(std::string(name));
  }

  bool contains(const Word& w) const noexcept {
    return std::all_of(w.begin(), w.end(),
                       [this](Letter x) { return x < names_.size(); });
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter, std::less<>> index_;
};

/// An admissible well-ordering on words. Only shortlex is implemented.
struct OrderSpec {
  enum class Kind { ShortLex };
  Kind kind = Kind::ShortLex;
  std::size_t alphabet_size = 0;
};

/// Shortlex comparison: shorter words are smaller; words of equal length are
/// compared at the first difference, where the earlier declared letter wins.
inline std::strong_ordering compare(const OrderSpec& order, const Word& a,
                                    const Word& b) {
  auto check = [&](const Word& w) {
    for (Letter x : w) {
      if (x >= order.alphabet_size) {
        throw UnknownLetter("#" + std::to_string(x));
      }
    }
  };
  check(a);
  check(b);
  if (a.size() != b.size()) {
    return a.size() <=> b.size();
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      // Smaller index means higher precedence.
      return b[i] <=> a[i];
    }
  }
  return std::strong_ordering::equal;
}

inline bool greater(const OrderSpec& order, const Word& a, const Word& b) {
  return compare(order, a, b) == std::strong_ordering::greater;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

inline Word subword(const Word& w, std::size_t pos, std::size_t len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(pos),
              w.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

inline Word subword(const Word& w, std::size_t pos) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(pos), w.end());
}

inline bool occurs_at(const Word& w, std::size_t pos, const Word& pattern) {
  return pos + pattern.size() <= w.size() &&
         std::equal(pattern.begin(), pattern.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(pos));
}

/// Replaces `len` letters at `pos` by `replacement`.
inline Word splice(const Word& w, std::size_t pos, std::size_t len,
                   const Word& replacement) {
  Word out;
  out.reserve(w.size() - len + replacement.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len),
             w.end());
  return out;
}

/// Space separated generator names; "1" for the empty word.
inline std::string to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += alphabet.name(w[i]);
  }
  return out;
}

namespace detail {

// Splits a run such as "sse" into generator names by longest match.
inline void split_run(std::string_view run, const Alphabet& alphabet,
                      Word& out) {
  while (!run.empty()) {
    std::size_t best = 0;
    Letter letter = 0;
    for (Letter x = 0; x < alphabet.size(); ++x) {
      const std::string& name = alphabet.name(x);
      if (name.size() > best && run.substr(0, name.size()) == name) {
        best = name.size();
        letter = x;
      }
    }
    if (best == 0) {
      throw UnknownLetter(std::string(run));
    }
    out.push_back(letter);
    run.remove_prefix(best);
  }
}

}  // namespace detail

/// Parses whitespace separated generator names. A token that is not a name is
/// split greedily into names, so "s s e" and "sse" both parse. "1" alone is
/// the empty word.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word out;
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string token; in >> token;) {
    tokens.push_back(std::move(token));
  }
  if (tokens.size() == 1 && tokens[0] == "1" && !alphabet.find("1")) {
    return out;
  }
  for (const auto& token : tokens) {
    if (auto x = alphabet.find(token)) {
      out.push_back(*x);
    } else {
      detail::split_run(token, alphabet, out);
    }
  }
  return out;
}

}  // namespace logrw
