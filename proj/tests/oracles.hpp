#pragma once

// Brute-force reference implementations. These deliberately share no code
// with the library beyond the Word type: every quantity is recomputed from
// its definition by exhaustive search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "blab/word.hpp"

namespace oracle {

using blab::Letter;
using blab::Word;

inline std::vector<Letter> letters(int m) {
  std::vector<Letter> out;
  for (Letter i = 1; i <= m; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

// Every letter sequence of length r, reduced or not.
inline void all_sequences(int m, int r, const std::function<void(const Word&)>& f) {
  const auto ls = letters(m);
  Word w(r);
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    for (int i = 0; i < r; ++i) {
      w[i] = ls[idx[i]];
    }
    f(w);
    int q = r - 1;
    while (q >= 0 && ++idx[q] == ls.size()) {
      idx[q] = 0;
      --q;
    }
    if (q < 0) {
      return;
    }
  }
}

inline bool reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) {
      return false;
    }
  }
  return true;
}

inline void all_reduced(int m, int r, const std::function<void(const Word&)>& f) {
  all_sequences(m, r, [&](const Word& w) {
    if (reduced(w)) {
      f(w);
    }
  });
}

// Repeatedly deletes the first cancelling pair.
inline Word naive_reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i - 1),
                w.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) {
    l = -l;
  }
  return out;
}

// x1 < X1 < x2 < X2 < ... compared letter by letter.
inline bool less(const Word& u, const Word& v) {
  auto rank = [](Letter l) { return l > 0 ? 2 * l : -2 * l + 1; };
  for (std::size_t i = 0; i < u.size() && i < v.size(); ++i) {
    if (u[i] != v[i]) {
      return rank(u[i]) < rank(v[i]);
    }
  }
  return u.size() < v.size();
}

struct Less {
  bool operator()(const Word& u, const Word& v) const { return less(u, v); }
};

inline Word rotation(const Word& w, std::size_t s) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.push_back(w[(i + s) % w.size()]);
  }
  return out;
}

inline Word min_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    const Word c = rotation(w, s);
    if (less(c, best)) {
      best = c;
    }
  }
  return best;
}

// Strips matching end letters of a reduced word.
inline Word strip_ends(Word w) {
  w = naive_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w = Word(w.begin() + 1, w.end() - 1);
  }
  return w;
}

inline Word class_key(const Word& w) {
  const Word core = strip_ends(w);
  if (core.empty()) {
    return core;
  }
  const Word a = min_rotation(core);
  const Word b = min_rotation(inverse(core));
  return less(b, a) ? b : a;
}

inline bool cyclically_reduced(const Word& w) {
  return reduced(w) && !(w.size() >= 2 && w.front() == -w.back());
}

// Smallest divisor d of |w| with w = (w[0..d))^(|w|/d).
inline std::pair<Word, std::size_t> root(const Word& w) {
  for (std::size_t d = 1; d <= w.size(); ++d) {
    if (w.size() % d != 0) {
      continue;
    }
    bool ok = true;
    for (std::size_t i = d; i < w.size() && ok; ++i) {
      ok = w[i] == w[i - d];
    }
    if (ok) {
      return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)),
              w.size() / d};
    }
  }
  return {w, 1};
}

inline bool primitive(const Word& w) { return root(w).second == 1; }

// No factor of the form Y^t with Y nonempty.
inline bool t_aperiodic(const Word& w, int t) {
  const std::size_t n = w.size();
  for (std::size_t len = 1; len * t <= n; ++len) {
    for (std::size_t start = 0; start + len * t <= n; ++start) {
      bool power = true;
      for (std::size_t q = len; q < len * t && power; ++q) {
        power = w[start + q] == w[start + q - len];
      }
      if (power) {
        return false;
      }
    }
  }
  return true;
}

// Maximum number of pairwise disjoint positions i with w[i] == w[i+1],
// by exhaustive take-or-skip recursion.
inline std::size_t max_disjoint_squares(const Word& w, std::size_t from = 0) {
  if (from + 1 >= w.size()) {
    return 0;
  }
  std::size_t best = max_disjoint_squares(w, from + 1);
  if (w[from] == w[from + 1]) {
    best = std::max(best, 1 + max_disjoint_squares(w, from + 2));
  }
  return best;
}

inline std::size_t bits(std::uint64_t v) {
  std::size_t b = 0;
  while (v > 0) {
    ++b;
    v >>= 1;
  }
  return b;
}

// Minimum code length over every factorization and every admissible period
// of every run (not only the smallest one).
inline std::size_t cln(const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> best(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    std::size_t b = 1 + best[i + 1];
    for (std::size_t j = i + 2; j <= n; ++j) {
      const std::size_t len = j - i;
      for (std::size_t p = 1; p < len; ++p) {
        const Word a(w.begin() + static_cast<std::ptrdiff_t>(i),
                     w.begin() + static_cast<std::ptrdiff_t>(i + p));
        if (!cyclically_reduced(a) || !primitive(a)) {
          continue;
        }
        bool periodic = true;
        for (std::size_t q = i; q < j && periodic; ++q) {
          periodic = w[q] == a[(q - i) % p];
        }
        if (periodic) {
          b = std::min(b, 1 + p + bits(len) + best[j]);
        }
      }
    }
    best[i] = b;
  }
  return best[0];
}

// Class keys of cyclically reduced primitive words of length i.
inline std::set<Word, Less> primitive_classes(int m, int i) {
  std::set<Word, Less> keys;
  all_sequences(m, i, [&](const Word& w) {
    if (cyclically_reduced(w) && primitive(w)) {
      keys.insert(class_key(w));
    }
  });
  return keys;
}

}  // namespace oracle
