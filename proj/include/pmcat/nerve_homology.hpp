#pragma once

#include "pmcat/fincat.hpp"
#include "pmcat/homology.hpp"

#include <vector>

namespace pmcat {

/// Homotopy invariants of the nerve of a finite category.
struct NerveInvariants
{
    std::size_t components = 0;
    std::vector<AbelianGroup> homology;  // H_0..H_max_degree
    bool thin = false;
    std::size_t objects = 0;          // objects of the input
    std::size_t reduced_objects = 0;  // objects left after the reduction
};

/// π0 from the category itself; homology from the nerve of a smaller category of the
/// same homotopy type: the skeleton and, when the category is thin, its core after
/// repeatedly deleting beat points (elements with a unique upper or lower cover).
[[nodiscard]] NerveInvariants nerve_invariants(const CategoryPtr& cat, int max_degree);

/// Homology straight from the nerve with no reduction; reference for small inputs.
[[nodiscard]] std::vector<AbelianGroup> direct_nerve_homology(const FinCategory& cat, int max_degree);

/// Number of connected components of a category.
[[nodiscard]] std::size_t component_count(const FinCategory& cat);

}  // namespace pmcat
