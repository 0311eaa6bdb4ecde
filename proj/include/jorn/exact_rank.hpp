#pragma once

#include "jorn/matrix.hpp"
#include "jorn/scalar.hpp"

namespace jorn {

// Exact rank of a row list. Pivot rows are chosen modulo a prime; the
// result is accepted only if every row annihilates the exact nullspace of
// those pivot rows, otherwise full exact elimination decides.
std::size_t exact_rank(const std::vector<Vec<Rational>>& rows, std::size_t cols);
std::size_t exact_rank(const std::vector<Vec<ExactScalar>>& rows, std::size_t cols);

}  // namespace jorn
