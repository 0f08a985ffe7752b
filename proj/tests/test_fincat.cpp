#include "pmcat/fincat.hpp"

#include "support/fixtures.hpp"
#include "support/random_relcat.hpp"

#include <doctest.h>

using namespace pmcat;
using namespace pmcat::testing;

namespace {

MorId mor(const FinCategory& c, const std::string& name)
{
    const auto f = c.find_morphism(name);
    REQUIRE_MESSAGE(f.has_value(), name);
    return *f;
}

ObjId obj(const FinCategory& c, const std::string& name)
{
    const auto o = c.find_object(name);
    REQUIRE_MESSAGE(o.has_value(), name);
    return *o;
}

/// Least upper bound of a and b in a preorder, as the smallest index among all joins.
std::optional<int> join_of(const std::vector<std::vector<char>>& leq, int a, int b)
{
    const int n = static_cast<int>(leq.size());
    auto le = [&](int x, int y) { return leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] != 0; };
    for (int z = 0; z < n; ++z) {
        if (!le(a, z) || !le(b, z)) {
            continue;
        }
        bool least = true;
        for (int u = 0; u < n && least; ++u) {
            if (le(a, u) && le(b, u) && !le(z, u)) {
                least = false;
            }
        }
        if (least) {
            return z;
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_SUITE("fincat")
{
    TEST_CASE("terminal category is valid with one identity")
    {
        const auto pt = load_fixture("pt");
        CHECK(pt.rc.cat->object_count() == 1);
        CHECK(pt.rc.cat->morphism_count() == 1);
        CHECK(check_category_laws(*pt.rc.cat).ok());
    }

    TEST_CASE("poset [3] with its full composition table is valid")
    {
        const auto p4 = load_fixture("P4");
        const FinCategory& c = *p4.rc.cat;
        CHECK(check_category_laws(c).ok());
        CHECK(c.morphism_count() == 10);
        CHECK(c.compose(mor(c, "01"), mor(c, "12")) == mor(c, "02"));
        CHECK(c.compose(mor(c, "02"), mor(c, "23")) == mor(c, "03"));
    }

    TEST_CASE("missing composite is reported with its pair")
    {
        CategoryDescription d;
        d.objects = {"a", "b", "c"};
        d.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}};
        const ValidationReport r = validate_category(d);
        REQUIRE(r.has(IssueKind::MissingComposite));
        CHECK(r.issues.front().witness == std::vector<std::string>{"f", "g"});
        CHECK_THROWS_AS((void)FinCategory::from_description(d), InvalidCategory);
    }

    TEST_CASE("non-associative table is rejected")
    {
        // a -f-> b -g-> c -h-> d with two parallel maps a -> d, bracketings disagree.
        CategoryDescription d;
        d.objects = {"a", "b", "c", "d"};
        d.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}, {"h", "c", "d"}, {"gf", "a", "c"}, {"hg", "b", "d"},
                       {"p", "a", "d"},  {"q", "a", "d"}};
        d.composites = {{"f", "g", "gf"}, {"g", "h", "hg"}, {"gf", "h", "p"}, {"f", "hg", "q"}};
        const ValidationReport r = validate_category(d);
        CHECK(r.has(IssueKind::Associativity));
    }

    TEST_CASE("structural problems: unknown object, duplicate, reserved identity name")
    {
        CategoryDescription d;
        d.objects = {"a", "a"};
        d.morphisms = {{"f", "a", "z"}, {"id:a", "a", "a"}};
        const ValidationReport r = validate_category(d);
        CHECK(r.count(IssueKind::Structural) >= 2);
    }

    TEST_CASE("boolean lattice pushout and pullback")
    {
        const auto b2 = load_fixture("B2");
        const FinCategory& c = *b2.rc.cat;
        const auto po = find_pushout(c, mor(c, "0-1"), mor(c, "0-2"));
        REQUIRE(po.has_value());
        CHECK(po->cocone.apex == obj(c, "12"));
        CHECK(is_pushout(c, mor(c, "0-1"), mor(c, "0-2"), po->cocone));
        const auto pb = find_pullback(c, mor(c, "1-12"), mor(c, "2-12"));
        REQUIRE(pb.has_value());
        CHECK(pb->cone.apex == obj(c, "0"));
        CHECK(is_pullback(c, mor(c, "1-12"), mor(c, "2-12"), pb->cone));
        for (const auto& [cocone, map] : po->comparisons) {
            CHECK(cocone_comparison(c, po->cocone, cocone) == map);
        }
    }

    TEST_CASE("pushout along an identity is the other leg")
    {
        const auto p4 = load_fixture("P4");
        const FinCategory& c = *p4.rc.cat;
        const MorId f = mor(c, "12");
        const auto po = find_pushout(c, f, c.identity(obj(c, "1")));
        REQUIRE(po.has_value());
        CHECK(po->cocone.apex == obj(c, "2"));
        CHECK(po->cocone.from_first == c.identity(obj(c, "2")));
        CHECK(po->cocone.from_second == f);
    }

    TEST_CASE("functors: identity, composite, broken")
    {
        const auto p4 = load_fixture("P4");
        const Functor id = identity_functor(p4.rc.cat);
        CHECK(check_functor(id).ok());
        CHECK(check_functor(compose_functors(id, id)).ok());
        Functor broken = id;
        broken.on_morphisms[static_cast<std::size_t>(mor(*p4.rc.cat, "02"))] = mor(*p4.rc.cat, "01");
        CHECK_FALSE(check_functor(broken).ok());
    }

    TEST_CASE("skeleton of the walking isomorphism is a point")
    {
        const auto j = load_fixture("J");
        const Subcategory s = skeleton(j.rc.cat);
        CHECK(s.cat->object_count() == 1);
        CHECK(s.cat->morphism_count() == 1);
        CHECK(is_isomorphism(*j.rc.cat, mor(*j.rc.cat, "f")));
        CHECK(inverse_of(*j.rc.cat, mor(*j.rc.cat, "f")) == mor(*j.rc.cat, "g"));
    }

    TEST_CASE("category isomorphism search")
    {
        const auto i1 = load_fixture("I1");
        const CategoryPtr reversed = preorder_category(2, [](int a, int b) { return a >= b; });
        CHECK(find_isomorphism(i1.rc.cat, reversed).has_value());
        const auto j = load_fixture("J");
        CHECK_FALSE(find_isomorphism(i1.rc.cat, j.rc.cat).has_value());
    }

    TEST_CASE("property: pushouts in random preorders are joins, pullbacks are meets")
    {
        std::mt19937_64 rng(0x5eed0001);
        int checked = 0;
        for (int round = 0; round < 200; ++round) {
            const int n = std::uniform_int_distribution<int>(1, 5)(rng);
            const auto leq = random_preorder(rng, n, 0.4);
            const CategoryPtr cat = preorder_category(n, [&leq](int i, int j) {
                return leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
            });
            const FinCategory& c = *cat;
            REQUIRE(check_category_laws(c).ok());
            auto opposite = leq;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    opposite[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        leq[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                }
            }
            for (std::size_t f = 0; f < c.morphism_count(); ++f) {
                for (std::size_t g = 0; g < c.morphism_count(); ++g) {
                    const auto mf = static_cast<MorId>(f);
                    const auto mg = static_cast<MorId>(g);
                    if (c.source(mf) == c.source(mg)) {
                        const auto po = find_pushout(c, mf, mg);
                        const auto join = join_of(leq, c.target(mf), c.target(mg));
                        CHECK(po.has_value() == join.has_value());
                        if (po && join) {
                            // Joins are unique up to isomorphism; the search returns the smallest apex.
                            CHECK(po->cocone.apex == *join);
                            CHECK(is_pushout(c, mf, mg, po->cocone));
                        }
                        ++checked;
                    }
                    if (c.target(mf) == c.target(mg)) {
                        const auto pb = find_pullback(c, mf, mg);
                        const auto meet = join_of(opposite, c.source(mf), c.source(mg));
                        CHECK(pb.has_value() == meet.has_value());
                        if (pb && meet) {
                            CHECK(pb->cone.apex == *meet);
                            CHECK(is_pullback(c, mf, mg, pb->cone));
                        }
                        ++checked;
                    }
                }
            }
        }
        CHECK(checked > 1000);
    }

    TEST_CASE("strict pullback of identity functors is the category itself")
    {
        const auto b2 = load_fixture("B2");
        const Functor id = identity_functor(b2.rc.cat);
        const StrictPullback p = strict_pullback_category(id, id);
        CHECK(find_isomorphism(p.cat, b2.rc.cat).has_value());
    }
}
