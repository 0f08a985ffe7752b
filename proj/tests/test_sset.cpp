#include "pmcat/nerve_homology.hpp"
#include "pmcat/sset.hpp"

#include "support/fixtures.hpp"
#include "support/random_relcat.hpp"

#include <doctest.h>

using namespace pmcat;
using namespace pmcat::testing;

namespace {

std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

CategoryPtr parallel_arrows()
{
    CategoryDescription d;
    d.objects = {"a", "b"};
    d.morphisms = {{"p", "a", "b"}, {"q", "a", "b"}};
    return share(FinCategory::from_description(d));
}

Functor constant_functor(const CategoryPtr& source, const CategoryPtr& target, ObjId value)
{
    Functor f{source, target, std::vector<ObjId>(source->object_count(), value),
              std::vector<MorId>(source->morphism_count(), target->identity(value))};
    return f;
}

/// Counts (k, n)-grids straight from the definition: k+1 columns and n+1 rows of objects,
/// horizontal maps arbitrary, vertical maps in W, every square commuting.
struct GridCounter
{
    const RelCategory& rc;
    int k;
    int n;
    std::vector<std::vector<MorId>> horizontal;  // [row][column]
    std::vector<std::vector<MorId>> vertical;    // [row - 1][column]
    std::size_t total = 0;

    ObjId object(int row, int column) const
    {
        const FinCategory& c = *rc.cat;
        if (k == 0) {
            return row == 0 ? current_vertex : c.target(vertical[static_cast<std::size_t>(row) - 1][0]);
        }
        const auto& h = horizontal[static_cast<std::size_t>(row)];
        return column < k ? c.source(h[static_cast<std::size_t>(column)]) : c.target(h.back());
    }

    ObjId current_vertex = kNoObject;

    void place(int row, int column)
    {
        const FinCategory& c = *rc.cat;
        if (row > n) {
            ++total;
            return;
        }
        if (column > k) {
            place(row + 1, 0);
            return;
        }
        if (row == 0) {
            // Row 0 is a k-chain, laid down one horizontal map at a time.
            if (column == k) {
                place(1, 0);
                return;
            }
            const ObjId from = column == 0 ? kNoObject : c.target(horizontal[0][static_cast<std::size_t>(column) - 1]);
            for (std::size_t f = 0; f < c.morphism_count(); ++f) {
                const auto m = static_cast<MorId>(f);
                if (from != kNoObject && c.source(m) != from) {
                    continue;
                }
                horizontal[0].push_back(m);
                place(0, column + 1);
                horizontal[0].pop_back();
            }
            return;
        }
        // Vertical W-map out of the object above, then the horizontal map into it (if column > 0).
        const ObjId above = object(row - 1, column);
        auto& vrow = vertical[static_cast<std::size_t>(row) - 1];
        for (MorId v : c.out(above)) {
            if (!rc.is_weq(v)) {
                continue;
            }
            vrow.push_back(v);
            if (column == 0) {
                place(row, column + 1);
            } else {
                auto& hrow = horizontal[static_cast<std::size_t>(row)];
                const ObjId left = c.target(vrow[static_cast<std::size_t>(column) - 1]);
                const MorId top = horizontal[static_cast<std::size_t>(row) - 1][static_cast<std::size_t>(column) - 1];
                for (MorId h : c.hom(left, c.target(v))) {
                    if (c.compose(vrow[static_cast<std::size_t>(column) - 1], h) != c.compose(top, v)) {
                        continue;
                    }
                    hrow.push_back(h);
                    place(row, column + 1);
                    hrow.pop_back();
                }
            }
            vrow.pop_back();
        }
    }

    std::size_t run()
    {
        horizontal.assign(static_cast<std::size_t>(n) + 1, {});
        vertical.assign(static_cast<std::size_t>(n), {});
        if (k > 0) {
            place(0, 0);
            return total;
        }
        // k = 0: a single column, a chain of n weak equivalences.
        for (std::size_t x = 0; x < rc.cat->object_count(); ++x) {
            current_vertex = static_cast<ObjId>(x);
            column_chain(1);
        }
        return total;
    }

    void column_chain(int row)
    {
        if (row > n) {
            ++total;
            return;
        }
        const ObjId above = row == 1 ? current_vertex : rc.cat->target(vertical[static_cast<std::size_t>(row) - 2][0]);
        for (MorId v : rc.cat->out(above)) {
            if (rc.is_weq(v)) {
                vertical[static_cast<std::size_t>(row) - 1].push_back(v);
                column_chain(row + 1);
                vertical[static_cast<std::size_t>(row) - 1].pop_back();
            }
        }
    }
};

}  // namespace

TEST_SUITE("sset")
{
    TEST_CASE("nerve of [m] has C(m+n+1, n+1) n-simplices")
    {
        for (int m = 0; m <= 3; ++m) {
            const CategoryPtr c = preorder_category(m + 1, [](int a, int b) { return a <= b; });
            const TruncatedSimplicialSet s = nerve(*c, 4);
            for (int n = 0; n <= 4; ++n) {
                CAPTURE(m);
                CAPTURE(n);
                CHECK(s.count(n) == binomial(static_cast<std::size_t>(m + n + 1), static_cast<std::size_t>(n + 1)));
            }
            CHECK(check_simplicial_identities(s).ok());
        }
    }

    TEST_CASE("small nerves: point, interval, walking isomorphism")
    {
        const TruncatedSimplicialSet pt = nerve(*load_fixture("pt").rc.cat, 2);
        CHECK(pt.counts == std::vector<std::size_t>{1, 1, 1});
        const TruncatedSimplicialSet i1 = nerve(*load_fixture("I1").rc.cat, 1);
        CHECK(i1.counts == std::vector<std::size_t>{2, 3});
        const TruncatedSimplicialSet j = nerve(*load_fixture("J").rc.cat, 2);
        CHECK(j.counts == std::vector<std::size_t>{2, 4, 8});
        // d_0 drops the first map, d_n the last; s_i inserts an identity.
        const CategoryPtr jcat = load_fixture("J").rc.cat;
        const FinCategory& jc = *jcat;
        for (SimplexId x = 0; x < static_cast<SimplexId>(j.count(2)); ++x) {
            const auto chain = j.label(2, x);
            CHECK(j.label(1, j.face(2, 0, x))[0] == chain[1]);
            CHECK(j.label(1, j.face(2, 2, x))[0] == chain[0]);
            CHECK(j.label(1, j.face(2, 1, x))[0] == jc.compose(chain[0], chain[1]));
        }
        for (SimplexId x = 0; x < static_cast<SimplexId>(j.count(1)); ++x) {
            const auto chain = j.label(1, x);
            CHECK(j.label(2, j.degeneracy(1, 0, x))[0] == jc.identity(jc.source(chain[0])));
            CHECK(j.label(2, j.degeneracy(1, 1, x))[1] == jc.identity(jc.target(chain[0])));
        }
    }

    TEST_CASE("simplicial identities hold on every fixture nerve")
    {
        for (const auto& name : fixture_names()) {
            CAPTURE(name);
            CHECK(check_simplicial_identities(nerve(*load_fixture(name).rc.cat, 4)).ok());
        }
    }

    TEST_CASE("homology of nerves")
    {
        const auto j = load_fixture("J");
        const auto hj = homology(nerve(*j.rc.cat, 4), 2);
        CHECK(hj == std::vector<AbelianGroup>{{1, {}}, {0, {}}, {0, {}}});
        const auto hi = homology(nerve(*load_fixture("I1").rc.cat, 2), 1);
        CHECK(hi == std::vector<AbelianGroup>{{1, {}}, {0, {}}});
        const auto disc = restrict_to_weq(load_fixture("I1").rc);
        CHECK(homology(nerve(*disc.cat, 1), 0).front() == AbelianGroup{2, {}});
        const auto circle = homology(nerve(*parallel_arrows(), 3), 2);
        CHECK(circle == std::vector<AbelianGroup>{{1, {}}, {1, {}}, {0, {}}});
        CHECK_THROWS_AS((void)homology(nerve(*j.rc.cat, 2), 2), PreconditionError);
    }

    TEST_CASE("H_0 rank equals the number of components")
    {
        std::mt19937_64 rng(0x5eed0201);
        for (int round = 0; round < 60; ++round) {
            const int n = std::uniform_int_distribution<int>(1, 6)(rng);
            const auto leq = random_preorder(rng, n, 0.2);
            const CategoryPtr c = preorder_category(n, [&leq](int a, int b) {
                return leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
            });
            const TruncatedSimplicialSet s = nerve(*c, 2);
            CHECK(homology(s, 1).front().rank == pi0(s).count);
            CHECK(pi0(s).count == component_count(*c));
        }
    }

    TEST_CASE("property: reduced nerve invariants agree with the direct nerve")
    {
        std::mt19937_64 rng(0x5eed0202);
        for (int round = 0; round < 60; ++round) {
            const int n = std::uniform_int_distribution<int>(1, 6)(rng);
            const auto leq = random_preorder(rng, n, std::uniform_real_distribution<double>(0.1, 0.5)(rng));
            const CategoryPtr c = preorder_category(n, [&leq](int a, int b) {
                return leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
            });
            CAPTURE(round);
            const NerveInvariants inv = nerve_invariants(c, 2);
            CHECK(inv.thin);
            CHECK(inv.homology == direct_nerve_homology(*c, 2));
            CHECK(inv.components == pi0(nerve(*c, 1)).count);
        }
        const NerveInvariants circle = nerve_invariants(parallel_arrows(), 2);
        CHECK_FALSE(circle.thin);
        CHECK(circle.homology == direct_nerve_homology(*parallel_arrows(), 2));
        // J is equivalent to a point.
        const NerveInvariants j = nerve_invariants(load_fixture("J").rc.cat, 2);
        CHECK(j.homology == direct_nerve_homology(*load_fixture("pt").rc.cat, 2));
        CHECK(j.reduced_objects == 1);
    }

    TEST_CASE("maps induced by functors")
    {
        const CategoryPtr pt = load_fixture("pt").rc.cat;
        const CategoryPtr i1 = load_fixture("I1").rc.cat;
        const CategoryPtr circle = parallel_arrows();
        const TruncatedSimplicialSet npt = nerve(*pt, 3);
        const TruncatedSimplicialSet ni1 = nerve(*i1, 3);
        const TruncatedSimplicialSet ncircle = nerve(*circle, 3);

        const Functor collapse = constant_functor(i1, pt, 0);
        const SimplicialMap m1 = nerve_map(collapse, ni1, npt);
        CHECK(check_simplicial_map(ni1, npt, m1).ok());
        const InducedMapReport r1 = induced_map_check(ni1, npt, m1, 2);
        CHECK(r1.pi0_bijective);
        CHECK(r1.homology_isomorphism);

        const SimplicialMap m2 = nerve_map(constant_functor(circle, pt, 0), ncircle, npt);
        const InducedMapReport r2 = induced_map_check(ncircle, npt, m2, 2);
        CHECK(r2.pi0_bijective);
        CHECK_FALSE(r2.homology_isomorphism);
        CHECK(r2.first_failing_degree == 1);

        // Inclusion of the endpoint 0 into the discrete pair misses a component.
        const RelCategory disc = restrict_to_weq(load_fixture("I1").rc);
        const TruncatedSimplicialSet ndisc = nerve(*disc.cat, 3);
        const SimplicialMap m3 = nerve_map(constant_functor(pt, disc.cat, 0), npt, ndisc);
        const InducedMapReport r3 = induced_map_check(npt, ndisc, m3, 2);
        CHECK_FALSE(r3.pi0_bijective);
        CHECK_FALSE(r3.homology_isomorphism);
        CHECK(r3.first_failing_degree == 0);

        const SimplicialMap id = nerve_map(identity_functor(circle), ncircle, ncircle);
        CHECK(induced_map_check(ncircle, ncircle, id, 2).homology_isomorphism);
    }

    TEST_CASE("classification nerve of Iw: (0,0) = 2, (1,0) = 3, (0,1) = 3")
    {
        const auto iw = load_fixture("Iw");
        const TruncatedBisimplicialSet b = rezk_nerve(iw.rc, 1, 1);
        CHECK(b.count(0, 0) == 2);
        CHECK(b.count(1, 0) == 3);
        CHECK(b.count(0, 1) == 3);
        CHECK(b.count(1, 1) == 6);
        CHECK(check_bisimplicial_identities(b).ok());
    }

    TEST_CASE("classification nerve of I1 at level 0 is the discrete pair")
    {
        const TruncatedBisimplicialSet b = rezk_nerve(load_fixture("I1").rc, 0, 4);
        for (int n = 0; n <= 4; ++n) {
            CHECK(b.count(0, n) == 2);
        }
    }

    TEST_CASE("property: grid counts match a direct enumeration")
    {
        for (const auto& name : fixture_names()) {
            const auto doc = load_fixture(name);
            const TruncatedBisimplicialSet b = rezk_nerve(doc.rc, 3, 3);
            for (int k = 0; k <= 3; ++k) {
                for (int n = 0; n <= 3; ++n) {
                    CAPTURE(name);
                    CAPTURE(k);
                    CAPTURE(n);
                    GridCounter counter{doc.rc, k, n, {}, {}, 0};
                    CHECK(b.count(k, n) == counter.run());
                }
            }
        }
        std::mt19937_64 rng(0x5eed0203);
        for (int round = 0; round < 25; ++round) {
            const RandomRelCat r = random_relcat(rng, 4);
            const TruncatedBisimplicialSet b = rezk_nerve(r.rc, 2, 2);
            CHECK(check_bisimplicial_identities(b).ok());
            for (int k = 0; k <= 2; ++k) {
                for (int n = 0; n <= 2; ++n) {
                    GridCounter counter{r.rc, k, n, {}, {}, 0};
                    CHECK(b.count(k, n) == counter.run());
                }
            }
        }
    }

    TEST_CASE("grids are well-formed: vertical maps are weak equivalences")
    {
        const auto b2 = load_fixture("B2");
        const TruncatedBisimplicialSet b = rezk_nerve(b2.rc, 2, 2);
        const FinCategory& c = *b2.rc.cat;
        const int k = 2;
        const int n = 2;
        for (SimplexId x = 0; x < static_cast<SimplexId>(b.count(k, n)); ++x) {
            const auto g = grid(b, k, n, x);
            const std::size_t objects = static_cast<std::size_t>((k + 1) * (n + 1));
            const std::size_t hmaps = static_cast<std::size_t>((n + 1) * k);
            REQUIRE(g.size() == objects + hmaps + static_cast<std::size_t>((k + 1) * n));
            for (std::size_t i = objects + hmaps; i < g.size(); ++i) {
                CHECK(b2.rc.is_weq(g[i]));
            }
            for (int row = 0; row <= n; ++row) {
                for (int col = 0; col < k; ++col) {
                    const MorId h = g[objects + static_cast<std::size_t>(row * k + col)];
                    CHECK(c.source(h) == g[static_cast<std::size_t>(row * (k + 1) + col)]);
                    CHECK(c.target(h) == g[static_cast<std::size_t>(row * (k + 1) + col + 1)]);
                }
            }
        }
    }

    TEST_CASE("level 0 of the classification nerve is the nerve of W")
    {
        for (const auto& name : fixture_names()) {
            CAPTURE(name);
            const auto doc = load_fixture(name);
            const TruncatedBisimplicialSet b = rezk_nerve(doc.rc, 1, 3);
            const RelCategory w = restrict_to_weq(doc.rc);
            CHECK(find_isomorphism(b.levels[0].cat, w.cat).has_value());
            CHECK(b.columns[0].counts == nerve(*w.cat, 3).counts);
        }
    }

    TEST_CASE("diagonals")
    {
        const TruncatedSimplicialSet di = diagonal(rezk_nerve(load_fixture("I1").rc, 2, 2));
        CHECK(di.count(0) == 2);
        CHECK(check_simplicial_identities(di).ok());
        const TruncatedSimplicialSet dw = diagonal(rezk_nerve(load_fixture("Iw").rc, 2, 2));
        CHECK(pi0(dw).count == 1);
        CHECK(check_simplicial_identities(dw).ok());
        CHECK(pi0(diagonal(rezk_nerve(load_fixture("Iw").rc, 1, 1))).count == 1);
        CHECK(pi0(nerve(*load_fixture("pt").rc.cat, 1)).count == 1);
        CHECK_THROWS_AS((void)diagonal(rezk_nerve(load_fixture("Iw").rc, 1, 2)), PreconditionError);
    }
}
