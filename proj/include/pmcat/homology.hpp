#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pmcat {

using BigInt = boost::multiprecision::cpp_int;

/// Finitely generated abelian group Z^rank ⊕ ⊕ Z/t_i, torsion coefficients ascending, each > 1.
struct AbelianGroup
{
    std::size_t rank = 0;
    std::vector<BigInt> torsion;

    [[nodiscard]] bool trivial() const { return rank == 0 && torsion.empty(); }
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Integer matrix stored by columns; entries within a column sorted by row.
struct SparseMatrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::int64_t, BigInt>>> columns;
};

struct SmithInvariants
{
    std::size_t rank = 0;
    /// Nonzero diagonal entries of the Smith normal form that are greater than 1.
    std::vector<BigInt> nonunit;
};

/// Diagonal of the Smith normal form of a dense integer matrix (nonzero entries, d1 | d2 | ...).
[[nodiscard]] std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> matrix);

/// Invariant factors of a sparse matrix: column reduction, falling back to a dense
/// Smith normal form only when a pivot other than ±1 shows up.
[[nodiscard]] SmithInvariants smith_invariants(const SparseMatrix& matrix);

/// boundaries[n] is the map C_n → C_{n-1} (boundaries[0] unused).
struct ChainComplex
{
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> boundaries;
};

/// H_0..H_max_degree; requires boundaries up to degree max_degree + 1.
[[nodiscard]] std::vector<AbelianGroup> homology(const ChainComplex& complex, int max_degree);

}  // namespace pmcat
