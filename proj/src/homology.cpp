#include "pmcat/homology.hpp"

#include "pmcat/common.hpp"

#include <algorithm>
#include <sstream>

namespace pmcat {

namespace {

using Column = std::vector<std::pair<std::int64_t, BigInt>>;

/// a·x + b·y for sorted sparse columns, dropping zeros.
Column combine(const BigInt& a, const Column& x, const BigInt& b, const Column& y)
{
    Column out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            if (a != 0) {
                out.emplace_back(x[i].first, a * x[i].second);
            }
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            if (b != 0) {
                out.emplace_back(y[j].first, b * y[j].second);
            }
            ++j;
        } else {
            BigInt v = a * x[i].second + b * y[j].second;
            if (v != 0) {
                out.emplace_back(x[i].first, std::move(v));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

/// Extended gcd: returns g = gcd(a, b) > 0 with s·a + t·b = g.
BigInt extended_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t)
{
    BigInt old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s1;
        old_s = s1;
        s1 = tmp;
        tmp = old_t - q * t1;
        old_t = t1;
        t1 = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

struct Reduction
{
    std::size_t rank = 0;
    bool unit_pivots = true;
    std::vector<std::int64_t> unit_lows;  // rows that carry a ±1 pivot
};

/// Column reduction over Z by unimodular column operations. Columns flagged in
/// `skip` are known to reduce to zero and are not touched.
Reduction reduce(const SparseMatrix& m, const std::vector<char>& skip)
{
    Reduction result;
    std::vector<Column> cols(m.cols);
    std::vector<std::int64_t> pivot_of_row(m.rows, -1);
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (!skip.empty() && skip[j]) {
            continue;
        }
        Column col = m.columns[j];
        while (!col.empty()) {
            const std::int64_t low = col.back().first;
            const std::int64_t p = pivot_of_row[static_cast<std::size_t>(low)];
            if (p < 0) {
                break;
            }
            Column& pc = cols[static_cast<std::size_t>(p)];
            const BigInt& b = pc.back().second;
            const BigInt a = col.back().second;
            if (a % b == 0) {
                col = combine(1, col, -(a / b), pc);
                continue;
            }
            BigInt s, t;
            const BigInt g = extended_gcd(b, a, s, t);
            Column new_pivot = combine(s, pc, t, col);
            Column rest = combine(-(a / g), pc, b / g, col);
            pc = std::move(new_pivot);
            col = std::move(rest);
        }
        if (!col.empty()) {
            pivot_of_row[static_cast<std::size_t>(col.back().first)] = static_cast<std::int64_t>(j);
            cols[j] = std::move(col);
        }
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (cols[j].empty()) {
            continue;
        }
        ++result.rank;
        const BigInt& c = cols[j].back().second;
        if (c == 1 || c == -1) {
            result.unit_lows.push_back(cols[j].back().first);
        } else {
            result.unit_pivots = false;
        }
    }
    return result;
}

std::vector<BigInt> dense_invariants(const SparseMatrix& m)
{
    constexpr std::size_t kDenseLimit = 4'000'000;
    if (m.rows * m.cols > kDenseLimit) {
        throw PreconditionError("Smith normal form: matrix with non-unit pivots too large for the dense fallback");
    }
    std::vector<std::vector<BigInt>> dense(m.rows, std::vector<BigInt>(m.cols, 0));
    for (std::size_t j = 0; j < m.cols; ++j) {
        for (const auto& [r, v] : m.columns[j]) {
            dense[static_cast<std::size_t>(r)][j] = v;
        }
    }
    return smith_diagonal(std::move(dense));
}

}  // namespace

std::string AbelianGroup::to_string() const
{
    std::ostringstream out;
    bool first = true;
    if (rank > 0 || torsion.empty()) {
        if (rank == 0) {
            out << "0";
        } else if (rank == 1) {
            out << "Z";
        } else {
            out << "Z^" << rank;
        }
        first = false;
    }
    for (const BigInt& t : torsion) {
        out << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return out.str();
}

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr == rows) {
                return diag;
            }
            std::swap(a[t], a[pr]);
            for (std::size_t i = 0; i < rows; ++i) {
                std::swap(a[i][t], a[i][pc]);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) {
                    continue;
                }
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) {
                    a[i][j] -= q * a[t][j];
                }
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) {
                    continue;
                }
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) {
                    a[i][j] -= q * a[i][t];
                }
                clean = clean && a[t][j] == 0;
            }
            if (!clean) {
                continue;
            }
            // Divisibility: fold any row with an entry not divisible by the pivot into row t.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == rows) {
                break;
            }
            for (std::size_t j = t; j < cols; ++j) {
                a[t][j] += a[bad][j];
            }
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

SmithInvariants smith_invariants(const SparseMatrix& matrix)
{
    const Reduction r = reduce(matrix, {});
    SmithInvariants out{r.rank, {}};
    if (!r.unit_pivots) {
        for (BigInt& d : dense_invariants(matrix)) {
            if (d > 1) {
                out.nonunit.push_back(std::move(d));
            }
        }
    }
    return out;
}

std::vector<AbelianGroup> homology(const ChainComplex& complex, int max_degree)
{
    if (max_degree < 0) {
        throw PreconditionError("homology degree must be non-negative");
    }
    const auto top = static_cast<std::size_t>(max_degree) + 1;
    if (complex.ranks.size() <= top || complex.boundaries.size() <= top) {
        throw PreconditionError("homology needs the boundary map one degree above the last requested degree");
    }
    std::vector<std::size_t> rank(top + 2, 0);
    std::vector<std::vector<BigInt>> torsion(top + 2);
    // Top-down so that pivots of ∂_{n+1} can clear columns of ∂_n.
    std::vector<char> skip;
    for (std::size_t n = top; n >= 1; --n) {
        const SparseMatrix& d = complex.boundaries[n];
        if (d.cols != complex.ranks[n] || d.rows != complex.ranks[n - 1]) {
            throw PreconditionError("boundary matrix shape does not match the chain ranks");
        }
        const Reduction r = reduce(d, skip);
        rank[n] = r.rank;
        if (!r.unit_pivots) {
            for (BigInt& x : dense_invariants(d)) {
                if (x > 1) {
                    torsion[n].push_back(std::move(x));
                }
            }
        }
        skip.assign(d.rows, 0);
        for (std::int64_t row : r.unit_lows) {
            skip[static_cast<std::size_t>(row)] = 1;
        }
    }
    std::vector<AbelianGroup> out;
    for (std::size_t i = 0; i + 1 <= top; ++i) {
        AbelianGroup g;
        g.rank = complex.ranks[i] - (i == 0 ? 0 : rank[i]) - rank[i + 1];
        g.torsion = torsion[i + 1];
        std::sort(g.torsion.begin(), g.torsion.end());
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace pmcat
