#include "pmcat/hammock.hpp"
#include "pmcat/localization.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

using namespace pmcat;
using namespace pmcat::testing;

namespace {

/// Zigzags a ← X → Y ← b counted straight from the definition.
std::size_t count_zigzags(const RelCategory& rc, ObjId a, ObjId b)
{
    const FinCategory& c = *rc.cat;
    std::size_t total = 0;
    for (MorId left : c.in(a)) {
        if (!rc.is_weq(left)) {
            continue;
        }
        for (MorId right : c.out(b)) {
            if (!rc.is_weq(right)) {
                continue;
            }
            total += c.hom(c.source(left), c.target(right)).size();
        }
    }
    return total;
}

MorId mor(const FinCategory& c, const std::string& name)
{
    const auto f = c.find_morphism(name);
    REQUIRE_MESSAGE(f.has_value(), name);
    return *f;
}

}  // namespace

TEST_SUITE("hammock")
{
    TEST_CASE("zigzag categories of small fixtures")
    {
        const auto i1 = load_fixture("I1");
        const ZigzagCategory z01 = zigzag_category(i1.rc, 0, 1);
        REQUIRE(z01.size() == 1);
        const Zigzag only = z01.zigzag(0);
        CHECK(only == zigzag_of(*i1.rc.cat, mor(*i1.rc.cat, "01")));
        CHECK(zigzag_category(i1.rc, 1, 0).size() == 0);
        const auto pt = load_fixture("pt");
        const ZigzagCategory zpt = zigzag_category(pt.rc, 0, 0);
        REQUIRE(zpt.size() == 1);
        CHECK(zpt.zigzag(0) == identity_zigzag(*pt.rc.cat, 0));
        CHECK(zpt.cat().morphism_count() == 1);
    }

    TEST_CASE("zigzag counts match a direct enumeration on every fixture")
    {
        for (const auto& name : fixture_names()) {
            const auto doc = load_fixture(name);
            const auto n = static_cast<ObjId>(doc.rc.cat->object_count());
            for (ObjId a = 0; a < n; ++a) {
                for (ObjId b = 0; b < n; ++b) {
                    CAPTURE(name);
                    CAPTURE(a);
                    CAPTURE(b);
                    const ZigzagCategory z = zigzag_category(doc.rc, a, b);
                    CHECK(z.size() == count_zigzags(doc.rc, a, b));
                    // Every component of every zigzag morphism is a weak equivalence.
                    for (const auto& comps : z.diagrams.components) {
                        for (MorId m : comps) {
                            CHECK(doc.rc.is_weq(m));
                        }
                    }
                    if (a == b) {
                        CHECK(z.find(identity_zigzag(*doc.rc.cat, a)).has_value());
                    }
                }
            }
        }
    }

    TEST_CASE("mapping spaces")
    {
        const auto i1 = load_fixture("I1");
        const TruncatedSimplicialSet point = mapping_space(i1.rc, 0, 1, 2);
        CHECK(point.counts == std::vector<std::size_t>{1, 1, 1});
        const TruncatedSimplicialSet empty = mapping_space(i1.rc, 1, 0, 2);
        CHECK(empty.counts == std::vector<std::size_t>{0, 0, 0});
        const auto iw = load_fixture("Iw");
        CHECK(pi0(mapping_space(iw.rc, 0, 1, 1)).count == 1);
        const TruncatedSimplicialSet back = mapping_space(iw.rc, 1, 0, 2);
        CHECK(back.count(0) == 3);
        CHECK(pi0(back).count == 1);
        CHECK(homology(back, 1) == std::vector<AbelianGroup>{{1, {}}, {0, {}}});
    }

    TEST_CASE("commuting-map convention has at least as many morphisms")
    {
        const auto b2 = load_fixture("B2");
        const auto n = static_cast<ObjId>(b2.rc.cat->object_count());
        for (ObjId a = 0; a < n; ++a) {
            for (ObjId b = 0; b < n; ++b) {
                const ZigzagCategory weak = zigzag_category(b2.rc, a, b);
                const ZigzagCategory any = zigzag_category(b2.rc, a, b, ZigzagConvention::CommutingMaps);
                CHECK(weak.size() == any.size());
                CHECK(weak.cat().morphism_count() <= any.cat().morphism_count());
                CHECK(any.convention == ZigzagConvention::CommutingMaps);
            }
        }
        const auto i1 = load_fixture("I1");
        // With W = identities, commuting maps between zigzags 1 ⇝ 1 are not identities.
        CHECK(zigzag_category(i1.rc, 1, 1, ZigzagConvention::CommutingMaps).cat().morphism_count() >=
              zigzag_category(i1.rc, 1, 1).cat().morphism_count());
    }

    TEST_CASE("Ho(I1) is [1] and Ho(Iw) is the walking isomorphism")
    {
        const HoCategory hi = homotopy_category(*load_fixture("I1").pms);
        CHECK(hi.lawful());
        CHECK(hi.hom_size(0, 0) == 1);
        CHECK(hi.hom_size(0, 1) == 1);
        CHECK(hi.hom_size(1, 0) == 0);
        CHECK(hi.hom_size(1, 1) == 1);
        CHECK_FALSE(hi.is_isomorphism(0, 1, 0));

        const HoCategory hw = homotopy_category(*load_fixture("Iw").pms);
        CHECK(hw.lawful());
        for (ObjId a = 0; a < 2; ++a) {
            for (ObjId b = 0; b < 2; ++b) {
                CHECK(hw.hom_size(a, b) == 1);
                CHECK(hw.is_isomorphism(a, b, 0));
            }
        }
        const HoCategory hp = homotopy_category(*load_fixture("pt").pms);
        CHECK(hp.objects == 1);
        CHECK(hp.hom_size(0, 0) == 1);
    }

    TEST_CASE("Ho satisfies the category laws on every model fixture")
    {
        for (const auto& name : model_fixture_names()) {
            CAPTURE(name);
            const HoCategory h = homotopy_category(*load_fixture(name).pms);
            CHECK(h.lawful());
            const auto n = static_cast<ObjId>(h.objects);
            for (ObjId a = 0; a < n; ++a) {
                for (ObjId b = 0; b < n; ++b) {
                    for (std::int32_t i = 0; i < static_cast<std::int32_t>(h.hom_size(a, b)); ++i) {
                        CHECK(h.compose(a, a, b, h.identities[h.index(a, a)], i) == i);
                        CHECK(h.compose(a, b, b, i, h.identities[h.index(b, b)]) == i);
                    }
                }
            }
        }
    }

    TEST_CASE("ho_compose of w with its formal inverse is the identity class")
    {
        const auto iw = load_fixture("Iw");
        const FinCategory& c = *iw.rc.cat;
        const MorId w = mor(c, "01");
        const Zigzag forward = zigzag_of(c, w);
        const Zigzag backward{1, 0, 1, 1, c.identity(1), c.identity(1), w};
        const HoCategory h = homotopy_category(*iw.pms);
        const Zigzag there_and_back = ho_compose(*iw.pms, forward, backward);
        CHECK(there_and_back.source == 0);
        CHECK(there_and_back.target == 0);
        CHECK(iw.rc.is_weq(there_and_back.left));
        CHECK(iw.rc.is_weq(there_and_back.right));
        CHECK(h.class_of(there_and_back) == h.identities[h.index(0, 0)]);
        CHECK(h.class_of(ho_compose(*iw.pms, backward, forward)) == h.identities[h.index(1, 1)]);
        // Unit law on representatives.
        CHECK(h.class_of(ho_compose(*iw.pms, identity_zigzag(c, 0), forward)) == h.class_of(forward));
    }

    TEST_CASE("B2: composites of morphism zigzags agree with composition in the lattice")
    {
        const auto b2 = load_fixture("B2");
        const FinCategory& c = *b2.rc.cat;
        const HoCategory h = homotopy_category(*b2.pms);
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            for (MorId g : c.out(c.target(static_cast<MorId>(f)))) {
                const auto mf = static_cast<MorId>(f);
                const Zigzag z = ho_compose(*b2.pms, zigzag_of(c, mf), zigzag_of(c, g));
                CHECK(h.class_of(z) == h.class_of_morphism(c, c.compose(mf, g)));
            }
        }
    }

    TEST_CASE("oracle: stable class counts equal Ho hom-set sizes")
    {
        for (const std::string name : {"pt", "I1", "Iw", "B2", "J"}) {
            const auto doc = load_fixture(name);
            const HoCategory h = homotopy_category(*doc.pms);
            const auto n = static_cast<ObjId>(h.objects);
            for (ObjId a = 0; a < n; ++a) {
                for (ObjId b = 0; b < n; ++b) {
                    CAPTURE(name);
                    CAPTURE(a);
                    CAPTURE(b);
                    const OracleClasses o = bounded_localization_oracle(doc.rc, a, b, 7);
                    CHECK(o.stable);
                    CHECK(o.classes.size() == h.hom_size(a, b));
                }
            }
        }
    }

    TEST_CASE("oracle on small inputs")
    {
        const auto i1 = load_fixture("I1");
        const OracleClasses o = bounded_localization_oracle(i1.rc, 0, 1, 7);
        CHECK(o.classes.size() == 1);
        CHECK(o.stable);
        const auto pt = load_fixture("pt");
        CHECK(bounded_localization_oracle(pt.rc, 0, 0, 7).classes.size() == 1);

        const auto p4 = load_fixture("P4");
        const FinCategory& c = *p4.rc.cat;
        const OracleClasses q = bounded_localization_oracle(p4.rc, 0, 1, 7);
        CHECK(q.stable);
        REQUIRE(q.classes.size() == 1);
        const Word w01{0, {Letter{mor(c, "01"), false}}};
        bool found = false;
        for (const Word& word : q.classes[0]) {
            found = found || word == w01;
        }
        CHECK(found);
        const LocalizationOracle oracle(p4.rc, 7);
        CHECK(oracle.invertible(w01) == std::optional<bool>(true));
        // Normal forms: adjacent forward letters compose.
        const Word two{0, {Letter{mor(c, "01"), false}, Letter{mor(c, "12"), false}}};
        CHECK(normalize(c, two) == Word{0, {Letter{mor(c, "02"), false}}});
    }

    TEST_CASE("saturation")
    {
        for (const auto& name : model_fixture_names()) {
            CAPTURE(name);
            const auto doc = load_fixture(name);
            const SaturationReport r = check_saturation(*doc.pms);
            CHECK(r.pass());
            CHECK(r.mode == "homotopy-category");
            CHECK(check_saturation_diagnostic(doc.rc, 7).pass());
        }
        const auto p4 = load_fixture("P4");
        const SaturationReport d = check_saturation_diagnostic(p4.rc, 7);
        CHECK(d.verdict == Verdict::Fail);
        CHECK(d.stable);
        CHECK(d.mode == "bounded-oracle");
        const FinCategory& c = *p4.rc.cat;
        CHECK(std::find(d.invertible_outside_weq.begin(), d.invertible_outside_weq.end(), mor(c, "01")) !=
              d.invertible_outside_weq.end());
        CHECK(d.weq_not_invertible.empty());
    }

    TEST_CASE("a groupoid with W = isomorphisms is saturated")
    {
        const auto j = load_fixture("J");
        CHECK(check_saturation(*j.pms).pass());
        CHECK(check_saturation_diagnostic(j.rc, 7).pass());
    }
}
