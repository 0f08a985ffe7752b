#include "pmcat/segal.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <chrono>
#include <set>

using namespace pmcat;
using namespace pmcat::testing;

namespace {

/// Diagrams of a tree shape counted directly: a sum over node assignments of the product
/// of hom-set sizes (W-hom-set sizes on weak edges).
std::size_t count_tree_diagrams(const RelCategory& rc, const DiagramShape& shape)
{
    const FinCategory& c = *rc.cat;
    const auto objects = static_cast<ObjId>(c.object_count());
    std::vector<ObjId> at(static_cast<std::size_t>(shape.nodes), 0);
    std::size_t total = 0;
    while (true) {
        std::size_t product = 1;
        for (const auto& e : shape.edges) {
            std::size_t n = 0;
            for (MorId m : c.hom(at[static_cast<std::size_t>(e.from)], at[static_cast<std::size_t>(e.to)])) {
                n += (!e.weak || rc.is_weq(m)) ? 1 : 0;
            }
            product *= n;
        }
        total += product;
        std::size_t i = 0;
        while (i < at.size() && ++at[i] == objects) {
            at[i] = 0;
            ++i;
        }
        if (i == at.size()) {
            break;
        }
    }
    return total;
}

}  // namespace

TEST_SUITE("segal")
{
    TEST_CASE("A_k and B_k of Iw and I1")
    {
        const auto iw = load_fixture("Iw");
        const DiagramCategory a1 = chain_category(iw.rc, 1);
        CHECK(a1.cat->object_count() == 3);
        CHECK(a1.cat->morphism_count() == 6);
        CHECK(chain_category(iw.rc, 2).cat->object_count() == 4);
        CHECK(zigzag_chain_category(iw.rc, 2).cat->object_count() == 15);
        CHECK(zigzag_chain_category(load_fixture("I1").rc, 2).cat->object_count() == 4);
        CHECK_THROWS_AS((void)zigzag_chain_category(iw.rc, 1), PreconditionError);
    }

    TEST_CASE("A_0 is W")
    {
        for (const auto& name : fixture_names()) {
            CAPTURE(name);
            const auto doc = load_fixture(name);
            const DiagramCategory a0 = chain_category(doc.rc, 0);
            const RelCategory w = restrict_to_weq(doc.rc);
            CHECK(*a0.cat == *w.cat);
        }
    }

    TEST_CASE("object counts of A_k and B_k match a direct count")
    {
        for (const auto& name : fixture_names()) {
            const auto doc = load_fixture(name);
            for (int k = 1; k <= 3; ++k) {
                CAPTURE(name);
                CAPTURE(k);
                CHECK(chain_category(doc.rc, k).cat->object_count() == count_tree_diagrams(doc.rc, chain_shape(k)));
                if (k >= 2) {
                    CHECK(zigzag_chain_category(doc.rc, k).cat->object_count() ==
                          count_tree_diagrams(doc.rc, zigzag_chain_shape(k)));
                }
            }
        }
    }

    TEST_CASE("h_k inserts three identities and is injective")
    {
        const auto iw = load_fixture("Iw");
        const FinCategory& base = *iw.rc.cat;
        for (int k = 2; k <= 3; ++k) {
            const IdentityInsertion h = insert_identities(iw.rc, k);
            CHECK(check_functor(h.functor).ok());
            const std::set<ObjId> objects(h.functor.on_objects.begin(), h.functor.on_objects.end());
            CHECK(objects.size() == h.chains.cat->object_count());
            const std::set<MorId> morphisms(h.functor.on_morphisms.begin(), h.functor.on_morphisms.end());
            CHECK(morphisms.size() == h.chains.cat->morphism_count());
            CHECK(h.image.cat->object_count() == objects.size());
            for (std::size_t a = 0; a < h.chains.cat->object_count(); ++a) {
                const auto& chain = h.chains.edges[a];
                const auto& image = h.zigzags.edges[static_cast<std::size_t>(h.functor.object(static_cast<ObjId>(a)))];
                REQUIRE(image.size() == chain.size() + 3);
                CHECK(image[0] == chain[0]);
                for (std::size_t e = 1; e <= 3; ++e) {
                    CHECK(base.is_identity(image[e]));
                }
                for (std::size_t j = 1; j < chain.size(); ++j) {
                    CHECK(image[j + 3] == chain[j]);
                }
            }
        }
        CHECK(insert_identities(iw.rc, 2).image.cat->object_count() == 4);
    }

    TEST_CASE("A'_k is full in B_k")
    {
        const auto b2 = load_fixture("B2");
        const IdentityInsertion h = insert_identities(b2.rc, 2);
        const FinCategory& bk = *h.zigzags.cat;
        for (ObjId x : h.image.objects) {
            for (ObjId y : h.image.objects) {
                const auto sub_x = h.image.object_index[static_cast<std::size_t>(x)];
                const auto sub_y = h.image.object_index[static_cast<std::size_t>(y)];
                CHECK(h.image.cat->hom(sub_x, sub_y).size() == bk.hom(x, y).size());
            }
        }
    }

    TEST_CASE("strict Segal identity on every fixture, k = 1..3")
    {
        for (const auto& name : fixture_names()) {
            for (int k = 1; k <= 3; ++k) {
                CAPTURE(name);
                CAPTURE(k);
                std::string detail;
                CHECK(strict_segal_identity(load_fixture(name).rc, k, &detail));
            }
        }
    }

    TEST_CASE("retraction certificates validate on Iw, I1, B2 for k = 2, 3")
    {
        for (const std::string name : {"Iw", "I1", "B2"}) {
            const auto doc = load_fixture(name);
            for (int k = 2; k <= 3; ++k) {
                CAPTURE(name);
                CAPTURE(k);
                const auto start = std::chrono::steady_clock::now();
                const SegalCertificate cert = build_retraction(*doc.pms, k);
                const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                CHECK(seconds < 30.0);
                CHECK(cert.valid());
                for (const auto& check : cert.checks) {
                    CAPTURE(check.name);
                    CAPTURE(check.first_failure);
                    CHECK(check.pass());
                    CHECK(check.checked > 0);
                }
                // r is a functor into A'_k.
                CHECK(check_functor(cert.retraction).ok());
                CHECK(cert.retraction.target == cert.insertion.image.cat);
                // Independent re-check: every component of every recorded transformation is in W.
                for (const auto* family : {&cert.zigzag, &cert.restricted_zigzag}) {
                    for (const Transformation& t : *family) {
                        for (const auto& per_object : t.components) {
                            for (MorId m : per_object) {
                                CHECK(doc.rc.is_weq(m));
                            }
                        }
                    }
                }
                CHECK(cert.zigzag.size() == 4);
                CHECK(cert.data.size() == cert.insertion.zigzags.cat->object_count());
                CHECK_FALSE(cert.reading.empty());
            }
        }
    }

    TEST_CASE("I1: the retraction fixes every object")
    {
        const auto i1 = load_fixture("I1");
        const SegalCertificate cert = build_retraction(*i1.pms, 2);
        REQUIRE(cert.valid());
        // B_2 = A'_2 when x, y, w are forced to be identities.
        CHECK(cert.insertion.image.cat->object_count() == cert.insertion.zigzags.cat->object_count());
        for (const Transformation& t : cert.restricted_zigzag) {
            for (const auto& per_object : t.components) {
                for (MorId m : per_object) {
                    CHECK(i1.rc.cat->is_identity(m));
                }
            }
        }
    }

    TEST_CASE("verify_segal on Iw and B2")
    {
        const SegalReport iw = verify_segal(*load_fixture("Iw").pms, {2, 3}, 2);
        CHECK(iw.pass());
        REQUIRE(iw.levels.size() == 2);
        for (const SegalLevel& level : iw.levels) {
            CHECK(level.strict_pullback);
            CHECK(level.certificate_valid == std::optional<bool>(true));
            CHECK(level.corroborated == std::optional<bool>(true));
            REQUIRE(level.image_nerve.has_value());
            CHECK(level.image_nerve->homology == level.zigzag_nerve->homology);
            CHECK(level.image_nerve->components == level.zigzag_nerve->components);
        }
        CHECK(iw.saturation.pass());
        CHECK_FALSE(iw.boundary.empty());
        CHECK(verify_segal(*load_fixture("B2").pms, {2}, 2).pass());
        CHECK_THROWS_AS((void)verify_segal(*load_fixture("Iw").pms, {5}, 2), PreconditionError);
    }

    TEST_CASE("P4 has no Segal certificate")
    {
        const auto p4 = load_fixture("P4");
        const SegalReport r = verify_segal(*p4.pms, {2}, 2);
        CHECK_FALSE(r.pass());
        CHECK_FALSE(r.saturation.pass());
        // The strict identity needs no partial model structure.
        CHECK(r.levels.front().strict_pullback);
    }
}
