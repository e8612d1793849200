#pragma once

#include <cstddef>
#include <vector>

namespace treefo {

  /// Advances t to the next tuple over {0..base-1}^|t| in lexicographic
  /// order (first coordinate most significant). Returns false after the
  /// last tuple, leaving t all zeros.
  template <class T>
  bool next_tuple(std::vector<T>& t, std::size_t base) {
    for (std::size_t i = t.size(); i-- > 0;) {
      if (static_cast<std::size_t>(t[i]) + 1 < base) {
        ++t[i];
        return true;
      }
      t[i] = 0;
    }
    return false;
  }

  /// Calls f on every tuple in {0..base-1}^len, lexicographically.
  template <class T = std::size_t, class F>
  void for_each_tuple(std::size_t base, std::size_t len, F&& f) {
    if (base == 0 && len > 0) {
      return;
    }
    std::vector<T> t(len, 0);
    do {
      f(static_cast<std::vector<T> const&>(t));
    } while (next_tuple(t, base));
  }

}  // namespace treefo
