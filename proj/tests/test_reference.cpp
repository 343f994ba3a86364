#include "doctest.h"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "morphfir/errors.hpp"
#include "morphfir/reference.hpp"

using namespace morphfir;
using V = std::vector<std::int64_t>;

TEST_CASE("known small convolution") {
    const V x{1, 2, 3};
    const V w{1, 1, 1};
    CHECK(fir_reference(x, w, 3) == V{1, 3, 6});
    // Past the input the window slides over the zero padding.
    CHECK(fir_reference(x, w, 6) == V{1, 3, 6, 5, 3, 0});
}

TEST_CASE("impulse response reproduces the taps") {
    const V x{1};
    const V w{7, -3, 11, 0, 5};
    const auto y = fir_reference(x, w, 5);
    CHECK(y == w);
    CHECK(fir_reference(x, w, 7) == V{7, -3, 11, 0, 5, 0, 0});
}

TEST_CASE("count edge cases") {
    const V x{4, 5};
    const V w{2};
    CHECK(fir_reference(x, w, 0).empty());
    CHECK(fir_reference(x, w, -3).empty());
    CHECK(fir_reference({}, w, 2) == V{0, 0});
    CHECK(fir_reference(x, {}, 2) == V{0, 0});
}

TEST_CASE("linearity in the input") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-100, 100);
    V a(12), b(12), sum(12);
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] = d(rng);
        b[i] = d(rng);
        sum[i] = 3 * a[i] - 2 * b[i];
    }
    const V w{5, -1, 4, 2};
    const auto ya = fir_reference(a, w, 15);
    const auto yb = fir_reference(b, w, 15);
    const auto ys = fir_reference(sum, w, 15);
    for (size_t k = 0; k < ys.size(); ++k)
        CHECK(ys[k] == 3 * ya[k] - 2 * yb[k]);
}

TEST_CASE("shifting the input shifts the output") {
    const V x{9, -2, 4, 4, 1};
    V shifted{0};
    shifted.insert(shifted.end(), x.begin(), x.end());
    const V w{1, 2, 3};
    const auto y = fir_reference(x, w, 7);
    const auto ys = fir_reference(shifted, w, 8);
    CHECK(ys[0] == 0);
    for (size_t k = 0; k < y.size(); ++k)
        CHECK(ys[k + 1] == y[k]);
}

TEST_CASE("overflow raises instead of wrapping") {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(fir_reference(V{big}, V{2}, 1), ArithmeticOverflow);
    // Products fit individually but the sum overflows.
    CHECK_THROWS_AS(fir_reference(V{big, big}, V{1, 1}, 2), ArithmeticOverflow);
}
