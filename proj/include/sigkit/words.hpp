#ifndef SIGKIT_WORDS_HPP
#define SIGKIT_WORDS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "sigkit/tensor.hpp"

// Words over the alphabet {1..d}, the shuffle product, and the pairing of
// formal word sums against tensors. Shuffle coefficients are integers, so a
// FormalWordSum only ever drops exact zeros.

namespace sigkit {

using Word = std::vector<int>;  // letters in 1..d, possibly empty

class FormalWordSum {
public:
    FormalWordSum() = default;
    explicit FormalWordSum(const Word& w, double c = 1.0) { add(w, c); }

    // accumulate c onto w, erasing the term if it cancels to exactly 0
    void add(const Word& w, double c);
    double coefficient(const Word& w) const;

    const std::map<Word, double>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    FormalWordSum& operator+=(const FormalWordSum& other);

private:
    std::map<Word, double> terms_;
};

// Recursive shuffle: w ⧢ ∅ = ∅ ⧢ w = w, and wi ⧢ vj = (w ⧢ vj)i + (wi ⧢ v)j.
FormalWordSum shuffle_product(const Word& w, const Word& v);

// flat index of w inside level |w| (row-major, letters validated against d)
std::size_t word_index(const Word& w, int d);

// <w, a> = a^w; throws if |w| exceeds the truncation level.
double word_coefficient(const TruncatedTensor& a, const Word& w);

// linear extension of word_coefficient
double pair(const FormalWordSum& s, const TruncatedTensor& a);

// Moebius function by trial-division factorization, n >= 1.
int mobius(std::int64_t n);

// Dimension of the step-N free nilpotent Lie algebra over d letters:
//   nu(N) = sum_{n=1..N} (1/n) sum_{l|n} mu(n/l) d^l.
// Exact 128-bit internal arithmetic; throws std::overflow_error if the result
// or an intermediate leaves the int64 range.
std::int64_t free_lie_dim(int d, int N);

} // namespace sigkit

#endif
