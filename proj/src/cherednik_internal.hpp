#pragma once

#include "cr/cherednik.hpp"

#include <vector>

namespace cr::detail {

/// kappa [f - s f] / (1 - e^{-2 alpha(t)}) piece of a Cherednik operator.
struct ReflectionTerm {
    double kappa;
    std::vector<double> alpha;
    std::size_t s; // index in WeylGroup::get(rank)
};

struct CherednikTerms {
    std::vector<ReflectionTerm> refl;
    double rho;
};

/// Reflection terms of D_j, zero multiplicities dropped.
CherednikTerms cherednik_terms(const RootData& rd, int j);

} // namespace cr::detail
