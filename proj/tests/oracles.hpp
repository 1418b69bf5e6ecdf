#ifndef SIGKIT_TESTS_ORACLES_HPP
#define SIGKIT_TESTS_ORACLES_HPP

// Independent oracles used by the test suites. Nothing here touches the
// tensor-algebra implementation: signatures come from per-segment polynomial
// integration, Lyndon words from rotation checks, p-variation from subset
// enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sigkit/path.hpp"
#include "sigkit/rng.hpp"
#include "sigkit/words.hpp"

namespace oracles {

// Coefficient <w, Sig(p)> of a piecewise-linear path by exact iterated
// integration: on each segment dx^i = slope_i dt, so the prefix integrands
// are polynomials in local time and every integral closes in coefficients.
inline double pl_signature_coeff(const sigkit::Path& p, const sigkit::Word& w) {
    if (w.empty()) return 1.0;
    const int d = p.dim();
    for (int letter : w)
        if (letter < 1 || letter > d) throw std::invalid_argument("bad word letter");

    // polynomial values of F_prefix per segment, in local time tau
    // F_0 = 1; F_k(tau) = F_k(segment start) + slope_{w_k} * int_0^tau F_{k-1}
    const std::size_t n_seg = static_cast<std::size_t>(p.segments());
    std::vector<std::vector<std::vector<double>>> polys(
        w.size() + 1,
        std::vector<std::vector<double>>(n_seg));  // [prefix][segment] -> coeffs
    for (std::size_t s = 0; s < n_seg; ++s) polys[0][s] = {1.0};

    auto poly_eval = [](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };

    for (std::size_t k = 1; k <= w.size(); ++k) {
        const int channel = w[k - 1] - 1;
        double start_value = 0.0;  // F_k at the left end of the current segment
        for (std::size_t s = 0; s < n_seg; ++s) {
            const double dt = p.times()[s + 1] - p.times()[s];
            const double dx = p.row(s + 1)[static_cast<std::size_t>(channel)] -
                              p.row(s)[static_cast<std::size_t>(channel)];
            const double slope = dx / dt;
            const auto& prev = polys[k - 1][s];
            std::vector<double> cur(prev.size() + 1, 0.0);
            cur[0] = start_value;
            for (std::size_t i = 0; i < prev.size(); ++i)
                cur[i + 1] = slope * prev[i] / static_cast<double>(i + 1);
            start_value = poly_eval(cur, dt);
            polys[k][s] = std::move(cur);
        }
    }
    const auto& last = polys[w.size()].back();
    const double dt_last = p.times()[n_seg] - p.times()[n_seg - 1];
    return poly_eval(last, dt_last);
}

// Lyndon words of length 1..N over {1..d}: strictly smaller than every
// proper rotation.
inline std::int64_t count_lyndon_words(int d, int N) {
    std::int64_t count = 0;
    for (int len = 1; len <= N; ++len) {
        std::vector<int> word(static_cast<std::size_t>(len), 1);
        while (true) {
            bool lyndon = true;
            for (int r = 1; r < len && lyndon; ++r) {
                std::vector<int> rotated;
                rotated.insert(rotated.end(), word.begin() + r, word.end());
                rotated.insert(rotated.end(), word.begin(), word.begin() + r);
                if (!(word < rotated)) lyndon = false;
            }
            if (lyndon) ++count;
            // next word in lexicographic order
            int pos = len - 1;
            while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d) {
                word[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++word[static_cast<std::size_t>(pos)];
        }
    }
    return count;
}

// p-variation by brute force over all vertex subsequences containing both
// endpoints; only for short paths (2^(L-1) subsets).
inline double pvar_bruteforce(const sigkit::Path& x, double p) {
    const std::size_t n = x.samples();
    if (n < 2) return 0.0;
    const std::size_t interior = n - 2;
    if (interior > 20) throw std::invalid_argument("path too long for brute force");
    auto inc = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (int c = 0; c < x.dim(); ++c) {
            const double dv = x.row(j)[static_cast<std::size_t>(c)] -
                              x.row(i)[static_cast<std::size_t>(c)];
            s += dv * dv;
        }
        return std::sqrt(s);
    };
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << interior); ++mask) {
        std::vector<std::size_t> idx{0};
        for (std::size_t b = 0; b < interior; ++b)
            if (mask & (1ULL << b)) idx.push_back(b + 1);
        idx.push_back(n - 1);
        double sum = 0.0;
        for (std::size_t k = 1; k < idx.size(); ++k)
            sum += std::pow(inc(idx[k - 1], idx[k]), p);
        best = std::max(best, sum);
    }
    return std::pow(best, 1.0 / p);
}

// random piecewise-linear path: L segments, values ~ scale * N(0,1)
inline sigkit::Path random_pl_path(sigkit::Rng& rng, int L, int d, double scale,
                                   double horizon = 1.0) {
    std::vector<double> times(static_cast<std::size_t>(L) + 1);
    for (int i = 0; i <= L; ++i)
        times[static_cast<std::size_t>(i)] = horizon * i / L;
    std::vector<double> values((static_cast<std::size_t>(L) + 1) * static_cast<std::size_t>(d));
    for (auto& v : values) v = scale * rng.normal();
    return sigkit::Path(std::move(times), std::move(values), d);
}

inline sigkit::Word random_word(sigkit::Rng& rng, int d, int len) {
    sigkit::Word w(static_cast<std::size_t>(len));
    for (auto& letter : w)
        letter = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
    return w;
}

} // namespace oracles

#endif
