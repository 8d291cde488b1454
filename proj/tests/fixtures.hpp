#pragma once

#include "canon/canring.hpp"
#include "canon/curve.hpp"
#include "canon/rng.hpp"

namespace fixtures {

// Shared contexts for the reference curves (genus 4 seed 1, genus 5 seed 7).
inline const canon::CurveContext& context4() {
    static const canon::CurveContext ctx(canon::generate_curve(4, 1000003, 1));
    return ctx;
}

inline const canon::CurveContext& context5() {
    static const canon::CurveContext ctx(canon::generate_curve(5, 1000003, 7));
    return ctx;
}

}  // namespace fixtures

namespace fixtures {

inline canon::Matrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols, canon::Rng& rng) {
    canon::Matrix m(p, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.element(p);
    return m;
}

}  // namespace fixtures
