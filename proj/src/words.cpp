#include "sigkit/words.hpp"

#include <limits>
#include <stdexcept>

namespace sigkit {

void FormalWordSum::add(const Word& w, double c) {
    if (c == 0.0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
}

double FormalWordSum::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0.0 : it->second;
}

FormalWordSum& FormalWordSum::operator+=(const FormalWordSum& other) {
    for (const auto& [w, c] : other.terms_) add(w, c);
    return *this;
}

FormalWordSum shuffle_product(const Word& w, const Word& v) {
    if (w.empty()) return FormalWordSum(v);
    if (v.empty()) return FormalWordSum(w);
    Word w_head(w.begin(), w.end() - 1);
    Word v_head(v.begin(), v.end() - 1);
    FormalWordSum out;
    const FormalWordSum left = shuffle_product(w_head, v);
    for (const auto& [u, c] : left.terms()) {
        Word extended = u;
        extended.push_back(w.back());
        out.add(extended, c);
    }
    const FormalWordSum right = shuffle_product(w, v_head);
    for (const auto& [u, c] : right.terms()) {
        Word extended = u;
        extended.push_back(v.back());
        out.add(extended, c);
    }
    return out;
}

std::size_t word_index(const Word& w, int d) {
    std::size_t idx = 0;
    for (int letter : w) {
        if (letter < 1 || letter > d)
            throw std::invalid_argument("word letter outside 1..d");
        idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

double word_coefficient(const TruncatedTensor& a, const Word& w) {
    const int k = static_cast<int>(w.size());
    if (k > a.level())
        throw std::invalid_argument("word longer than tensor truncation level");
    return a.level_span(k)[word_index(w, a.dim())];
}

double pair(const FormalWordSum& s, const TruncatedTensor& a) {
    double out = 0.0;
    for (const auto& [w, c] : s.terms()) out += c * word_coefficient(a, w);
    return out;
}

int mobius(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius needs n >= 1");
    int factors = 0;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // squared prime
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

namespace {

using int128 = __int128;

int128 checked_pow(int128 base, int exp) {
    // stays far below the int128 ceiling so later sums can't wrap
    static const int128 kCap = (int128(1) << 100);
    int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > kCap) throw std::overflow_error("free_lie_dim overflow");
    }
    return r;
}

} // namespace

std::int64_t free_lie_dim(int d, int N) {
    if (d < 1 || N < 1) throw std::invalid_argument("free_lie_dim needs d >= 1, N >= 1");
    int128 total = 0;
    for (int n = 1; n <= N; ++n) {
        int128 inner = 0;
        for (int l = 1; l <= n; ++l) {
            if (n % l != 0) continue;
            inner += mobius(n / l) * checked_pow(d, l);
        }
        // the divisor sum counts n * (# Lyndon words of length n): always divisible
        total += inner / n;
        if (total > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("free_lie_dim overflow");
    }
    return static_cast<std::int64_t>(total);
}

} // namespace sigkit
