#pragma once

#include "pmcat/diagrams.hpp"
#include "pmcat/fincat.hpp"
#include "pmcat/homology.hpp"
#include "pmcat/relcat.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pmcat {

using SimplexId = std::int32_t;

/// Simplices in dimensions 0..n_max with face and degeneracy tables.
/// faces[n][i][x] = d_i x for 1 <= n <= n_max; degeneracies[n][i][x] = s_i x for n < n_max.
/// labels[n] stores label_widths[n] entries per simplex: the object for a vertex of a nerve,
/// the chain of morphism ids (f1, ..., fn) otherwise.
struct TruncatedSimplicialSet
{
    int n_max = 0;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::vector<SimplexId>>> faces;
    std::vector<std::vector<std::vector<SimplexId>>> degeneracies;
    std::vector<std::vector<std::int32_t>> labels;
    std::vector<std::size_t> label_widths;
    /// Nerves only: extensions[n][x] is the first (n+1)-simplex whose chain starts with the chain of x;
    /// the one continuing with g follows at offset out_position(g).
    std::vector<std::vector<SimplexId>> extensions;

    [[nodiscard]] std::size_t count(int n) const { return counts[static_cast<std::size_t>(n)]; }
    [[nodiscard]] std::span<const std::int32_t> label(int n, SimplexId x) const
    {
        const std::size_t w = label_widths[static_cast<std::size_t>(n)];
        return {labels[static_cast<std::size_t>(n)].data() + w * static_cast<std::size_t>(x), w};
    }
    [[nodiscard]] SimplexId face(int n, int i, SimplexId x) const
    {
        return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
    [[nodiscard]] SimplexId degeneracy(int n, int i, SimplexId x) const
    {
        return degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
};

/// Map of truncated simplicial sets, one table per dimension.
struct SimplicialMap
{
    std::vector<std::vector<SimplexId>> on_simplices;
};

/// Nerve truncated at n_max: n-simplices are composable chains (f1, ..., fn), read
/// left to right; 0-simplices are objects.
[[nodiscard]] TruncatedSimplicialSet nerve(const FinCategory& cat, int n_max);

/// Map of nerves induced by a functor.
[[nodiscard]] SimplicialMap nerve_map(const Functor& functor, const TruncatedSimplicialSet& source,
                                      const TruncatedSimplicialSet& target);

/// All simplicial identities between defined operators, checked exhaustively.
[[nodiscard]] ValidationReport check_simplicial_identities(const TruncatedSimplicialSet& s);
[[nodiscard]] ValidationReport check_simplicial_map(const TruncatedSimplicialSet& source,
                                                    const TruncatedSimplicialSet& target, const SimplicialMap& map);

/// Bisimplicial set truncated at (k_max, n_max); columns[k] is the vertical simplicial set at level k,
/// the nerve of levels[k]. hfaces[k][n][i][x] : (k, n) → (k-1, n); hdegeneracies[k][n][i][x] : (k, n) → (k+1, n).
struct TruncatedBisimplicialSet
{
    int k_max = 0;
    int n_max = 0;
    std::vector<DiagramCategory> levels;
    std::vector<TruncatedSimplicialSet> columns;
    std::vector<std::vector<std::vector<std::vector<SimplexId>>>> hfaces;
    std::vector<std::vector<std::vector<std::vector<SimplexId>>>> hdegeneracies;

    [[nodiscard]] std::size_t count(int k, int n) const { return columns[static_cast<std::size_t>(k)].count(n); }
};

/// The classification nerve: level k is the nerve of the category of k-chains with
/// weak-equivalence columns; (k, n)-simplices are grids with n vertical W-levels.
[[nodiscard]] TruncatedBisimplicialSet rezk_nerve(const RelCategory& rc, int k_max, int n_max);

/// The grid of a (k, n)-simplex of the classification nerve: (n+1)(k+1) objects row-major,
/// then n+1 rows of k horizontal morphisms, then k+1 columns of n vertical morphisms.
[[nodiscard]] std::vector<std::int32_t> grid(const TruncatedBisimplicialSet& b, int k, int n, SimplexId x);

[[nodiscard]] ValidationReport check_bisimplicial_identities(const TruncatedBisimplicialSet& b);

[[nodiscard]] TruncatedSimplicialSet diagonal(const TruncatedBisimplicialSet& b);

/// Connected components of the 1-skeleton; component[x] for each vertex, numbered by first vertex.
struct Components
{
    std::size_t count = 0;
    std::vector<std::int32_t> component;
};

[[nodiscard]] Components pi0(const TruncatedSimplicialSet& s);

/// Normalized chain complex (degenerate simplices quotiented out) in degrees 0..top.
[[nodiscard]] ChainComplex normalized_chains(const TruncatedSimplicialSet& s, int top);

/// H_0..H_max_degree with integer coefficients; max_degree must be at most n_max - 1.
[[nodiscard]] std::vector<AbelianGroup> homology(const TruncatedSimplicialSet& s, int max_degree);

/// Whether f induces a bijection on π0 and isomorphisms on H_0..H_max_degree
/// (mapping-cone criterion).
struct InducedMapReport
{
    bool pi0_bijective = false;
    bool homology_isomorphism = false;
    int first_failing_degree = -1;
};

[[nodiscard]] InducedMapReport induced_map_check(const TruncatedSimplicialSet& source,
                                                 const TruncatedSimplicialSet& target, const SimplicialMap& map,
                                                 int max_degree);

}  // namespace pmcat
