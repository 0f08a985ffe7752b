#include "pmcat/common.hpp"
#include "pmcat/homology.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace pmcat;

namespace {

using Dense = std::vector<std::vector<BigInt>>;
using Rational = boost::multiprecision::cpp_rational;

Dense dense(std::initializer_list<std::initializer_list<int>> rows)
{
    Dense out;
    for (const auto& r : rows) {
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

SparseMatrix to_sparse(const Dense& a, std::size_t cols)
{
    SparseMatrix m{a.size(), cols, std::vector<std::vector<std::pair<std::int64_t, BigInt>>>(cols)};
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i][j] != 0) {
                m.columns[j].emplace_back(static_cast<std::int64_t>(i), a[i][j]);
            }
        }
    }
    return m;
}

BigInt det(Dense m)
{
    // Cofactor expansion; only used on tiny minors.
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m[0][0];
    }
    BigInt total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Dense minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != j) {
                    row.push_back(m[i][c]);
                }
            }
            minor.push_back(std::move(row));
        }
        const BigInt term = m[0][j] * det(std::move(minor));
        total += (j % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Invariant factors from determinantal divisors: s_k = d_k / d_{k-1}, d_k = gcd of k-minors.
std::vector<BigInt> determinantal_oracle(const Dense& a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<BigInt> out;
    BigInt previous = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs;
        std::vector<std::vector<std::size_t>> cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        BigInt g = 0;
        for (const auto& r : rs) {
            for (const auto& c : cs) {
                Dense minor(k, std::vector<BigInt>(k));
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) {
                        minor[i][j] = a[r[i]][c[j]];
                    }
                }
                g = boost::multiprecision::gcd(g, abs(det(std::move(minor))));
            }
        }
        if (g == 0) {
            break;
        }
        out.push_back(g / previous);
        previous = g;
    }
    return out;
}

std::size_t rational_rank(const Dense& a, std::size_t cols)
{
    std::vector<std::vector<Rational>> m;
    for (const auto& row : a) {
        m.emplace_back(row.begin(), row.end());
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c] != 0) {
                const Rational f = m[i][c] / m[rank][c];
                for (std::size_t j = c; j < cols; ++j) {
                    m[i][j] -= f * m[rank][j];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Oriented simplicial chain complex of a complex given by its maximal faces.
struct Complex
{
    std::vector<std::vector<std::vector<int>>> simplices;  // by dimension, sorted
    ChainComplex chains;
    std::vector<Dense> dense;
};

Complex build_complex(const std::vector<std::vector<int>>& facets, int top)
{
    std::vector<std::set<std::vector<int>>> by_dim(static_cast<std::size_t>(top) + 2);
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        const std::size_t n = f.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    s.push_back(f[i]);
                }
            }
            if (s.size() <= by_dim.size()) {
                by_dim[s.size() - 1].insert(s);
            }
        }
    }
    Complex c;
    for (const auto& d : by_dim) {
        c.simplices.emplace_back(d.begin(), d.end());
        c.chains.ranks.push_back(d.size());
    }
    c.chains.boundaries.emplace_back();
    c.dense.emplace_back();
    for (std::size_t n = 1; n < c.simplices.size(); ++n) {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < c.simplices[n - 1].size(); ++i) {
            index[c.simplices[n - 1][i]] = i;
        }
        Dense d(c.simplices[n - 1].size(), std::vector<BigInt>(c.simplices[n].size(), 0));
        for (std::size_t j = 0; j < c.simplices[n].size(); ++j) {
            const auto& s = c.simplices[n][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                auto face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                d[index.at(face)][j] = (i % 2 == 0) ? 1 : -1;
            }
        }
        c.chains.boundaries.push_back(to_sparse(d, c.simplices[n].size()));
        c.dense.push_back(std::move(d));
    }
    return c;
}

}  // namespace

TEST_SUITE("homology")
{
    TEST_CASE("Smith normal form of known matrices")
    {
        CHECK(smith_diagonal(dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) == std::vector<BigInt>{2, 6, 12});
        CHECK(smith_diagonal(dense({{0, 0}, {0, 0}})).empty());
        CHECK(smith_diagonal(dense({{6, 0}, {0, 4}})) == std::vector<BigInt>{2, 12});
        CHECK(smith_diagonal(dense({{1, 1, 1}})) == std::vector<BigInt>{1});
        CHECK(smith_diagonal({}).empty());
    }

    TEST_CASE("property: Smith diagonal equals quotients of determinantal divisors")
    {
        std::mt19937_64 rng(0x5eed0101);
        std::uniform_int_distribution<int> size(1, 4);
        std::uniform_int_distribution<int> entry(-6, 6);
        std::bernoulli_distribution zero(0.3);
        for (int round = 0; round < 300; ++round) {
            const auto rows = static_cast<std::size_t>(size(rng));
            const auto cols = static_cast<std::size_t>(size(rng));
            Dense a(rows, std::vector<BigInt>(cols));
            for (auto& row : a) {
                for (auto& x : row) {
                    x = zero(rng) ? 0 : entry(rng);
                }
            }
            CAPTURE(round);
            const std::vector<BigInt> expected = determinantal_oracle(a);
            CHECK(smith_diagonal(a) == expected);
            const SmithInvariants sparse = smith_invariants(to_sparse(a, cols));
            CHECK(sparse.rank == expected.size());
            std::vector<BigInt> nonunit;
            std::copy_if(expected.begin(), expected.end(), std::back_inserter(nonunit),
                         [](const BigInt& d) { return d > 1; });
            CHECK(sparse.nonunit == nonunit);
        }
    }

    TEST_CASE("multiplication by two has cokernel Z/2")
    {
        ChainComplex c;
        c.ranks = {1, 1, 0};
        c.boundaries = {SparseMatrix{}, to_sparse(dense({{2}}), 1), SparseMatrix{1, 0, {}}};
        const auto h = homology(c, 1);
        REQUIRE(h.size() == 2);
        CHECK(h[0] == AbelianGroup{0, {2}});
        CHECK(h[1].trivial());
        CHECK(h[0].to_string() == "Z/2");
        CHECK_THROWS_AS((void)homology(c, 2), PreconditionError);
    }

    TEST_CASE("projective plane: H = (Z, Z/2, 0)")
    {
        const std::vector<std::vector<int>> rp2{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                                {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
        const Complex c = build_complex(rp2, 2);
        REQUIRE(c.chains.ranks == std::vector<std::size_t>{6, 15, 10, 0});
        const auto h = homology(c.chains, 2);
        CHECK(h[0] == AbelianGroup{1, {}});
        CHECK(h[1] == AbelianGroup{0, {2}});
        CHECK(h[2].trivial());
    }

    TEST_CASE("circle and two-sphere")
    {
        const Complex circle = build_complex({{0, 1}, {1, 2}, {0, 2}}, 1);
        const auto hc = homology(circle.chains, 1);
        CHECK(hc[0] == AbelianGroup{1, {}});
        CHECK(hc[1] == AbelianGroup{1, {}});
        const Complex sphere = build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 2);
        const auto hs = homology(sphere.chains, 2);
        CHECK(hs[0] == AbelianGroup{1, {}});
        CHECK(hs[1].trivial());
        CHECK(hs[2] == AbelianGroup{1, {}});
        CHECK(hs[2].to_string() == "Z");
    }

    TEST_CASE("property: Betti numbers of random complexes match rational ranks")
    {
        std::mt19937_64 rng(0x5eed0102);
        for (int round = 0; round < 150; ++round) {
            const int vertices = std::uniform_int_distribution<int>(2, 7)(rng);
            const int facet_count = std::uniform_int_distribution<int>(1, 9)(rng);
            std::vector<std::vector<int>> facets;
            for (int f = 0; f < facet_count; ++f) {
                std::vector<int> all(static_cast<std::size_t>(vertices));
                std::iota(all.begin(), all.end(), 0);
                std::shuffle(all.begin(), all.end(), rng);
                const int dim = std::uniform_int_distribution<int>(1, std::min(vertices, 4))(rng);
                std::vector<int> s(all.begin(), all.begin() + dim);
                std::sort(s.begin(), s.end());
                facets.push_back(std::move(s));
            }
            CAPTURE(round);
            const Complex c = build_complex(facets, 2);
            const auto h = homology(c.chains, 2);
            std::vector<std::size_t> rank(c.dense.size() + 1, 0);
            for (std::size_t n = 1; n < c.dense.size(); ++n) {
                rank[n] = rational_rank(c.dense[n], c.chains.ranks[n]);
            }
            for (std::size_t i = 0; i <= 2; ++i) {
                const std::size_t betti = c.chains.ranks[i] - (i == 0 ? 0 : rank[i]) - rank[i + 1];
                CHECK(h[i].rank == betti);
            }
            CHECK(h[0].torsion.empty());
            CHECK(h[0].rank >= 1);
            CHECK(h[0].rank <= c.chains.ranks[0]);
        }
    }
}
