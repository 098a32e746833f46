#include "srheat/hall_basis.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace srheat {

std::size_t checked_tensor_dim(int letters, int step) {
    if (letters < 1) throw std::invalid_argument("alphabet size must be >= 1");
    if (step < 1) throw std::invalid_argument("truncation step must be >= 1");
    constexpr std::size_t kCap = 10'000'000;
    std::size_t dim = 0;
    std::size_t level = 1;
    for (int k = 1; k <= step; ++k) {
        if (level > kCap / static_cast<std::size_t>(letters)) {
            throw std::invalid_argument(
                "tensor dimension cap exceeded: sum of letters^k for k<=step is over 1e7");
        }
        level *= static_cast<std::size_t>(letters);
        dim += level;
        if (dim > kCap) {
            throw std::invalid_argument(
                "tensor dimension cap exceeded: sum of letters^k for k<=step is over 1e7");
        }
    }
    return dim;
}

namespace {

// Duval's generation of all Lyndon words of length <= N over {1..n} in lex
// order: repeat the current word periodically to length N, strip trailing
// maximal letters, increment the last one.
std::vector<Word> lyndon_words(int n, int N) {
    std::vector<Word> out;
    Word w{1};
    while (true) {
        out.push_back(w);
        Word t;
        t.reserve(N);
        for (int i = 0; i < N; ++i) t.push_back(w[i % w.size()]);
        while (!t.empty() && t.back() == n) t.pop_back();
        if (t.empty()) break;
        ++t.back();
        w = std::move(t);
    }
    return out;
}

// Longest proper suffix of w that is again Lyndon. For a Lyndon word of
// length >= 2 this yields the standard factorization w = uv with u Lyndon,
// v Lyndon and u < v.
std::size_t standard_split(const Word& w) {
    for (std::size_t start = 1; start < w.size(); ++start) {
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
        if (is_lyndon(suffix)) return start;
    }
    throw std::logic_error("no Lyndon suffix found; input was not a Lyndon word");
}

BracketExpansion mul_words(const BracketExpansion& a, const BracketExpansion& b, double sign) {
    BracketExpansion out;
    for (const auto& [wa, ca] : a) {
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out[w] += sign * ca * cb;
        }
    }
    return out;
}

}  // namespace

HallBasis::HallBasis(int letters, int step) : letters_(letters), step_(step) {
    checked_tensor_dim(letters, step);

    std::vector<Word> words = lyndon_words(letters, step);
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    elements_.reserve(words.size());
    for (auto& w : words) {
        HallElement e;
        e.grade = static_cast<int>(w.size());
        e.word = std::move(w);
        elements_.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        index_[elements_[i].word] = static_cast<int>(i);
    }

    // Standard factorization; both halves are shorter Lyndon words, so they
    // are already indexed.
    for (auto& e : elements_) {
        if (e.grade == 1) continue;
        std::size_t split = standard_split(e.word);
        Word u(e.word.begin(), e.word.begin() + static_cast<std::ptrdiff_t>(split));
        Word v(e.word.begin() + static_cast<std::ptrdiff_t>(split), e.word.end());
        e.left = index_of(u);
        e.right = index_of(v);
        if (e.left < 0 || e.right < 0) {
            throw std::logic_error("standard factorization produced a non-basis word");
        }
    }

    grade_ranges_.assign(static_cast<std::size_t>(step), {0, 0});
    for (int k = 1, pos = 0; k <= step; ++k) {
        int first = pos;
        while (pos < static_cast<int>(elements_.size()) && elements_[pos].grade == k) ++pos;
        grade_ranges_[static_cast<std::size_t>(k - 1)] = {first, pos};
    }

    expansions_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const HallElement& e = elements_[i];
        if (e.grade == 1) {
            expansions_[i][e.word] = 1.0;
        } else {
            // children precede their parent in (length, lex) order
            expansions_[i] = mul_words(expansions_[e.left], expansions_[e.right], 1.0);
            BracketExpansion rev = mul_words(expansions_[e.right], expansions_[e.left], -1.0);
            for (const auto& [w, c] : rev) {
                double& slot = expansions_[i][w];
                slot += c;
                if (slot == 0.0) expansions_[i].erase(w);
            }
        }
    }
}

std::shared_ptr<const HallBasis> HallBasis::make(int letters, int step) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const HallBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{letters, step}];
    if (!slot) slot = std::make_shared<const HallBasis>(letters, step);
    return slot;
}

int HallBasis::index_of(const Word& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

std::pair<int, int> HallBasis::grade_range(int k) const {
    if (k < 1 || k > step_) throw std::invalid_argument("grade out of range");
    return grade_ranges_[static_cast<std::size_t>(k - 1)];
}

std::string HallBasis::bracket_string(int idx) const {
    const HallElement& e = element(idx);
    if (e.grade == 1) return std::to_string(e.word[0]);
    return "[" + bracket_string(e.left) + "," + bracket_string(e.right) + "]";
}

}  // namespace srheat
