#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sigkit/rng.hpp"
#include "sigkit/signature.hpp"
#include "sigkit/words.hpp"

using namespace sigkit;

TEST_CASE("shuffle base cases") {
    const auto s = shuffle_product(Word{1}, Word{});
    CHECK(s.size() == 1);
    CHECK(s.coefficient(Word{1}) == 1.0);

    const auto e = shuffle_product(Word{}, Word{2, 1});
    CHECK(e.coefficient(Word{2, 1}) == 1.0);
}

TEST_CASE("shuffle of single letters") {
    const auto s = shuffle_product(Word{1}, Word{2});
    CHECK(s.size() == 2);
    CHECK(s.coefficient(Word{1, 2}) == 1.0);
    CHECK(s.coefficient(Word{2, 1}) == 1.0);
}

TEST_CASE("shuffle with a repeated letter merges coefficients") {
    const auto s = shuffle_product(Word{1}, Word{1, 2});
    CHECK(s.coefficient(Word{1, 2, 1}) == 1.0);
    CHECK(s.coefficient(Word{1, 1, 2}) == 2.0);
    CHECK(s.size() == 2);
}

TEST_CASE("shuffle coefficient count: disjoint letters give binomial many terms") {
    // all interleavings of 12 and 34 are distinct words: C(4,2) = 6 of them
    const auto s = shuffle_product(Word{1, 2}, Word{3, 4});
    CHECK(s.size() == 6);
    double total = 0.0;
    for (const auto& [w, c] : s.terms()) total += c;
    CHECK(total == 6.0);
}

TEST_CASE("formal sums drop exact zeros only") {
    FormalWordSum s;
    s.add(Word{1}, 1.0);
    s.add(Word{1}, -1.0);
    CHECK(s.size() == 0);
    s.add(Word{2}, 1e-300);
    CHECK(s.size() == 1);  // tiny but nonzero stays
}

TEST_CASE("pairing words with tensors") {
    const auto u = unit_tensor(2, 2);
    CHECK(word_coefficient(u, Word{}) == 1.0);
    const TruncatedTensor zero(2, 2);
    CHECK(word_coefficient(zero, Word{1, 2}) == 0.0);
    CHECK_THROWS_AS(word_coefficient(u, Word{1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(word_coefficient(u, Word{3}), std::invalid_argument);
}

TEST_CASE("pairing is linear") {
    Rng rng(3);
    TruncatedTensor a(2, 3);
    for (auto& c : a.flat()) c = rng.normal();
    for (int rep = 0; rep < 10; ++rep) {
        FormalWordSum s, t;
        for (int i = 0; i < 4; ++i) {
            s.add(oracles::random_word(rng, 2, static_cast<int>(rng.next_u64() % 4)),
                  rng.normal());
            t.add(oracles::random_word(rng, 2, static_cast<int>(rng.next_u64() % 4)),
                  rng.normal());
        }
        FormalWordSum both = s;
        both += t;
        CHECK(pair(both, a) == doctest::Approx(pair(s, a) + pair(t, a)).epsilon(1e-12));
    }
}

TEST_CASE("shuffle identity against signatures") {
    Rng rng(41);
    int tested = 0;
    while (tested < 60) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 2);
        const int N = 4;
        const int lw = 1 + static_cast<int>(rng.next_u64() % 3);
        const int lv = 1 + static_cast<int>(rng.next_u64() % 3);
        if (lw + lv > N) continue;
        ++tested;
        const auto x = oracles::random_pl_path(rng, 4, d, 0.8);
        const auto sig = path_signature(x, N);
        const auto w = oracles::random_word(rng, d, lw);
        const auto v = oracles::random_word(rng, d, lv);
        const double lhs = pair(shuffle_product(w, v), sig);
        const double rhs = word_coefficient(sig, w) * word_coefficient(sig, v);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("mobius values") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(3) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK_THROWS_AS(mobius(0), std::invalid_argument);
}

TEST_CASE("free Lie dimension for one letter telescopes to 1") {
    for (int N = 1; N <= 7; ++N) CHECK(free_lie_dim(1, N) == 1);
}

TEST_CASE("free Lie dimension matches Lyndon enumeration") {
    const std::vector<std::int64_t> expected_d2 = {2, 3, 5, 8, 14};
    for (int N = 1; N <= 5; ++N) {
        CHECK(free_lie_dim(2, N) == expected_d2[static_cast<std::size_t>(N - 1)]);
        CHECK(free_lie_dim(2, N) == oracles::count_lyndon_words(2, N));
    }
    CHECK(free_lie_dim(3, 2) == 6);
    for (int d = 1; d <= 3; ++d)
        for (int N = 1; N <= 6; ++N)
            CHECK(free_lie_dim(d, N) == oracles::count_lyndon_words(d, N));
}

TEST_CASE("free Lie dimension overflow is detected") {
    CHECK_THROWS_AS(free_lie_dim(10, 40), std::overflow_error);
}
