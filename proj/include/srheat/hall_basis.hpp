#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "srheat/words.hpp"

namespace srheat {

// Expansion of a bracket monomial in the tensor algebra: word -> coefficient.
// Only words of one fixed length appear (brackets are grade-homogeneous).
using BracketExpansion = std::map<Word, double>;

// One basis element of the free Lie algebra truncated at a given step.
// The element is identified by a Lyndon word; its concrete bracket monomial
// is the standard factorization tree [left, right], where `right` indexes the
// longest proper Lyndon suffix of `word` and `left` the (Lyndon) prefix.
// Letters have left == right == -1.
struct HallElement {
    Word word;
    int grade = 0;  // word length
    int left = -1;
    int right = -1;
};

// Basis of the free Lie algebra on `letters` generators truncated at step N.
// Elements are the Lyndon words of length <= N sorted by (length, lex); that
// ordering is part of the contract (coordinate layouts, pivot scans and the
// triangular log extraction all rely on it).
//
// Instances are immutable after construction, so sharing one basis across
// threads is safe. Use make() to get a cached instance.
class HallBasis {
  public:
    HallBasis(int letters, int step);

    // Cached factory. Bases are small but requested constantly (every
    // signature sample needs one), so share immutable instances.
    static std::shared_ptr<const HallBasis> make(int letters, int step);

    int letters() const { return letters_; }
    int step() const { return step_; }

    const std::vector<HallElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const HallElement& element(int idx) const { return elements_.at(idx); }

    // Index of a Lyndon word in this basis, or -1 if it is not a basis word.
    int index_of(const Word& w) const;

    // Half-open index range [first, last) of the elements of grade k.
    std::pair<int, int> grade_range(int k) const;

    // Tensor-algebra expansion of the bracket monomial of element idx,
    // expand([a,b]) = expand(a) expand(b) - expand(b) expand(a). Computed at
    // construction; the leading coefficient (on the element's own word) is 1
    // and every other word appearing is a lex-larger anagram, which is what
    // makes coordinate extraction triangular.
    const BracketExpansion& expansion(int idx) const { return expansions_.at(idx); }

    // Human-readable nested bracket, e.g. "[1,[1,2]]".
    std::string bracket_string(int idx) const;

  private:
    int letters_;
    int step_;
    std::vector<HallElement> elements_;
    std::vector<BracketExpansion> expansions_;
    std::map<Word, int> index_;
    std::vector<std::pair<int, int>> grade_ranges_;  // grade_ranges_[k-1] for grade k
};

// Guard for the dense dimension sum_{k<=N} letters^k. Throws
// std::invalid_argument when a requested (letters, step) pair would exceed
// the hard cap of 1e7 coefficients; returns the dimension otherwise.
std::size_t checked_tensor_dim(int letters, int step);

// Spec-level entry point: the basis as a shared immutable object.
inline std::shared_ptr<const HallBasis> hall_basis(int letters, int step) {
    return HallBasis::make(letters, step);
}

}  // namespace srheat
