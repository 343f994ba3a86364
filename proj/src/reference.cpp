// reference.cpp - direct-form FIR convolution oracle
#include "morphfir/reference.hpp"

#include "morphfir/errors.hpp"

namespace morphfir {

std::vector<std::int64_t> fir_reference(std::span<const std::int64_t> x,
                                        std::span<const std::int64_t> w,
                                        int count) {
    std::vector<std::int64_t> y;
    y.reserve(static_cast<std::size_t>(count > 0 ? count : 0));
    const int len = static_cast<int>(x.size());
    for (int k = 0; k < count; ++k) {
        std::int64_t acc = 0;
        for (int j = 0; j < static_cast<int>(w.size()); ++j) {
            const int i = k - j;
            if (i < 0 || i >= len)
                continue;
            std::int64_t prod = 0;
            if (__builtin_mul_overflow(x[static_cast<std::size_t>(i)],
                                       w[static_cast<std::size_t>(j)], &prod) ||
                __builtin_add_overflow(acc, prod, &acc))
                throw ArithmeticOverflow("fir_reference overflow at output " + std::to_string(k));
        }
        y.push_back(acc);
    }
    return y;
}

} // namespace morphfir
