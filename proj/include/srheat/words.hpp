#pragma once

#include <string>
#include <vector>

namespace srheat {

// A word over the alphabet {1, ..., n}. The empty word is the unit of the
// tensor algebra and is never stored as a map key; sparse containers simply
// omit words whose coefficient is zero.
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    s += ")";
    return s;
}

// True if w is a Lyndon word: nonempty and strictly smaller than every
// proper rotation. Quadratic, which is fine at the sizes we handle.
inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    const std::size_t k = w.size();
    for (std::size_t r = 1; r < k; ++r) {
        // compare w against its rotation starting at r
        for (std::size_t i = 0; i < k; ++i) {
            int a = w[i];
            int b = w[(r + i) % k];
            if (a < b) break;
            if (a > b) return false;
            if (i + 1 == k) return false;  // rotation equals w, so w is periodic
        }
    }
    return true;
}

}  // namespace srheat
