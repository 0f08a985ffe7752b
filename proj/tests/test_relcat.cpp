#include "pmcat/relcat.hpp"

#include "support/fixtures.hpp"
#include "support/random_relcat.hpp"

#include <doctest.h>

using namespace pmcat;
using namespace pmcat::testing;

namespace {

using Rel = std::vector<std::vector<char>>;

bool in(const Rel& r, int a, int b)
{
    return r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
}

/// Two-out-of-six on relation matrices: every composable triple a ≤ b ≤ c ≤ d.
bool oracle_two_of_six(const Rel& leq, const Rel& w)
{
    const int n = static_cast<int>(leq.size());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    if (!in(leq, a, b) || !in(leq, b, c) || !in(leq, c, d)) {
                        continue;
                    }
                    if (in(w, a, c) && in(w, b, d) && !(in(w, a, b) && in(w, b, c) && in(w, c, d) && in(w, a, d))) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool oracle_two_of_three(const Rel& leq, const Rel& w)
{
    const int n = static_cast<int>(leq.size());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (!in(leq, a, b) || !in(leq, b, c)) {
                    continue;
                }
                const int count = in(w, a, b) + in(w, b, c) + in(w, a, c);
                if (count == 2) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool oracle_isos_in_w(const Rel& leq, const Rel& w)
{
    const int n = static_cast<int>(leq.size());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (in(leq, a, b) && in(leq, b, a) && !in(w, a, b)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::string> names(const FinCategory& c, const std::vector<MorId>& ms)
{
    std::vector<std::string> out;
    for (MorId m : ms) {
        out.push_back(c.name(m));
    }
    return out;
}

}  // namespace

TEST_SUITE("relcat")
{
    TEST_CASE("fixtures are valid relative categories")
    {
        for (const auto& name : fixture_names()) {
            CAPTURE(name);
            CHECK(validate_relative(load_fixture(name).rc).ok());
        }
    }

    TEST_CASE("W must contain identities and be closed under composition")
    {
        const auto p4 = load_fixture("P4");
        RelCategory rc = p4.rc;
        const FinCategory& c = *rc.cat;
        rc.weq[static_cast<std::size_t>(*c.find_morphism("01"))] = 1;
        rc.weq[static_cast<std::size_t>(*c.find_morphism("12"))] = 1;
        rc.weq[static_cast<std::size_t>(*c.find_morphism("02"))] = 0;
        CHECK(validate_relative(rc).has(IssueKind::WeqComposition));
        rc.weq[static_cast<std::size_t>(c.identity(0))] = 0;
        CHECK(validate_relative(rc).has(IssueKind::WeqIdentity));
    }

    TEST_CASE("two-out-of-three on fixtures")
    {
        CHECK(check_two_of_three(load_fixture("Iw").rc).pass);
        CHECK(check_two_of_three(load_fixture("P4").rc).pass);
        CHECK(check_two_of_three(load_fixture("I1").rc).pass);
    }

    TEST_CASE("two-out-of-six fails on P4 with witness (01, 12, 23)")
    {
        const auto p4 = load_fixture("P4");
        const TwoOfSixReport r = check_two_of_six(p4.rc);
        CHECK_FALSE(r.property.pass);
        CHECK(names(*p4.rc.cat, r.property.witness) == std::vector<std::string>{"01", "12", "23"});
        CHECK_FALSE(r.two_of_three.has_value());
        CHECK(check_two_of_six(load_fixture("Iw").rc).pass());
        CHECK(check_two_of_six(load_fixture("I1").rc).pass());
        CHECK(check_two_of_six(load_fixture("J").rc).pass());
    }

    TEST_CASE("homotopically full subcategories")
    {
        const auto iw = load_fixture("Iw");
        const std::vector<ObjId> seed{0};
        CHECK(homotopically_full_subcategory(iw.rc, seed).objects == std::vector<ObjId>{0, 1});
        const auto i1 = load_fixture("I1");
        CHECK(homotopically_full_subcategory(i1.rc, seed).objects == std::vector<ObjId>{0});
    }

    TEST_CASE("relative functor categories")
    {
        const auto pt = load_fixture("pt");
        const auto iw = load_fixture("Iw");
        const auto i1 = load_fixture("I1");
        const auto j = load_fixture("J");
        const FunctorCategory from_point = relative_functor_category(iw.rc, pt.rc);
        CHECK(find_relative_isomorphism(from_point.rc, iw.rc).has_value());
        // All functors [1] → [1]: constant at 0, constant at 1, identity.
        CHECK(relative_functor_category(iw.rc, i1.rc).functors.size() == 3);
        // A walking isomorphism with W = all must land in W = ids of I1: constants only.
        CHECK(relative_functor_category(i1.rc, j.rc).functors.size() == 2);
        const FunctorCategory fc = relative_functor_category(iw.rc, i1.rc);
        CHECK(check_category_laws(*fc.rc.cat).ok());
        CHECK(validate_relative(fc.rc).ok());
    }

    TEST_CASE("restriction to W")
    {
        const auto iw = load_fixture("Iw");
        CHECK(find_relative_isomorphism(restrict_to_weq(iw.rc), iw.rc).has_value());
        const RelCategory i1w = restrict_to_weq(load_fixture("I1").rc);
        CHECK(i1w.cat->object_count() == 2);
        CHECK(i1w.cat->morphism_count() == 2);
        const RelCategory p4w = restrict_to_weq(load_fixture("P4").rc);
        CHECK(p4w.cat->morphism_count() == 6);
        CHECK(p4w.cat->find_morphism("02").has_value());
        CHECK(p4w.cat->find_morphism("13").has_value());
        CHECK_FALSE(p4w.cat->find_morphism("01").has_value());
    }

    TEST_CASE("isomorphisms of the walking isomorphism lie in W")
    {
        CHECK(check_isomorphisms_in_weq(load_fixture("J").rc).pass);
        const auto j = load_fixture("J");
        const RelCategory minimal = RelCategory::minimal(j.rc.cat);
        const PropertyReport r = check_isomorphisms_in_weq(minimal);
        CHECK_FALSE(r.pass);
        CHECK(r.witness.size() == 1);
    }

    TEST_CASE("property: library verdicts agree with brute-force relation oracles")
    {
        std::mt19937_64 rng(0x5eed0002);
        int six = 0;
        for (int round = 0; round < 400; ++round) {
            const RandomRelCat r = random_relcat(rng, 5);
            CAPTURE(round);
            CAPTURE(r.mode);
            REQUIRE(validate_relative(r.rc).ok());
            const TwoOfSixReport lib = check_two_of_six(r.rc);
            CHECK(lib.property.pass == oracle_two_of_six(r.leq, r.weq));
            CHECK(check_two_of_three(r.rc).pass == oracle_two_of_three(r.leq, r.weq));
            CHECK(check_isomorphisms_in_weq(r.rc).pass == oracle_isos_in_w(r.leq, r.weq));
            if (lib.property.pass) {
                ++six;
                CHECK(lib.pass());
            }
        }
        CHECK(six > 50);
    }
}
