// reference.hpp - direct-form FIR ground truth
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace morphfir {

// y_k = sum_{j=0}^{N-1} x_{k-j} * w_j for k = 0..count-1, with x
// zero-padded outside [0, len). Exact integer arithmetic; throws
// ArithmeticOverflow under the same policy as the engine.
std::vector<std::int64_t> fir_reference(std::span<const std::int64_t> x,
                                        std::span<const std::int64_t> w,
                                        int count);

} // namespace morphfir
