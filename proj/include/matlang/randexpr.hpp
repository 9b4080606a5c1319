#pragma once

#include <random>

#include "matlang/expr.hpp"

namespace matlang {

// Generates a random well-sorted expression of the requested sort using only
// operations allowed by the fragment (and only exact-evaluable pointwise
// functions). Used by property tests and the bounded random sentence search.
ExprPtr random_expr(std::mt19937& rng, const Fragment& fragment, Sort target,
                    std::size_t max_depth);

// Random sentence (Scal-sorted expression) in the fragment.
ExprPtr random_sentence(std::mt19937& rng, const Fragment& fragment, std::size_t max_depth);

}  // namespace matlang
