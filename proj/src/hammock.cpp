#include "pmcat/hammock.hpp"

#include <array>

namespace pmcat {

std::string_view to_string(ZigzagConvention convention)
{
    return convention == ZigzagConvention::WeakEquivalences ? "weak-equivalences" : "commuting-maps";
}

Zigzag identity_zigzag(const FinCategory& cat, ObjId a)
{
    const MorId id = cat.identity(a);
    return {a, a, a, a, id, id, id};
}

Zigzag zigzag_of(const FinCategory& cat, MorId f)
{
    const ObjId a = cat.source(f);
    const ObjId b = cat.target(f);
    return {a, b, a, b, cat.identity(a), f, cat.identity(b)};
}

std::string zigzag_name(const FinCategory& cat, const Zigzag& z)
{
    return cat.object_name(z.source) + " <-" + cat.name(z.left) + "- " + cat.object_name(z.left_object) + " -" +
           cat.name(z.middle) + "-> " + cat.object_name(z.right_object) + " <-" + cat.name(z.right) + "- " +
           cat.object_name(z.target);
}

Zigzag ZigzagCategory::zigzag(ObjId object) const
{
    const auto& nodes = diagrams.nodes[static_cast<std::size_t>(object)];
    const auto& edges = diagrams.edges[static_cast<std::size_t>(object)];
    return {nodes[0], nodes[3], nodes[1], nodes[2], edges[0], edges[1], edges[2]};
}

std::optional<ObjId> ZigzagCategory::find(const Zigzag& z) const
{
    if (z.source != source || z.target != target) {
        return std::nullopt;
    }
    const std::array<ObjId, 4> nodes{z.source, z.left_object, z.right_object, z.target};
    const std::array<MorId, 3> edges{z.left, z.middle, z.right};
    return diagrams.find_object(nodes, edges);
}

ZigzagCategory zigzag_category(const RelCategory& rc, ObjId a, ObjId b, ZigzagConvention convention)
{
    const auto n = static_cast<ObjId>(rc.cat->object_count());
    if (a < 0 || a >= n || b < 0 || b >= n) {
        throw PreconditionError("zigzag endpoints must be objects of the category");
    }
    ZigzagCategory z;
    z.source = a;
    z.target = b;
    z.convention = convention;
    z.diagrams = diagram_category(rc, zigzag_shape(a, b),
                                  convention == ZigzagConvention::WeakEquivalences ? ComponentRule::WeakEquivalences
                                                                                   : ComponentRule::AnyMorphism);
    return z;
}

TruncatedSimplicialSet mapping_space(const RelCategory& rc, ObjId a, ObjId b, int n_max, ZigzagConvention convention)
{
    return nerve(zigzag_category(rc, a, b, convention).cat(), n_max);
}

Zigzag ho_compose(const PartialModelStructure& pms, const Zigzag& first, const Zigzag& second)
{
    const FinCategory& c = pms.cat();
    if (first.target != second.source) {
        throw PreconditionError("zigzags are not composable: endpoints differ");
    }
    const MorId w = c.compose(second.left, first.right);
    if (!pms.rc.is_weq(w)) {
        throw CalculusViolation("merged backward map " + c.name(w) + " is not a weak equivalence");
    }
    const auto& entry = pms.factorization[static_cast<std::size_t>(w)];
    if (!entry) {
        throw CalculusViolation("no factorization recorded for " + c.name(w));
    }
    const Factorization& fz = *entry;
    const auto pb = find_pullback(c, fz.v, first.middle);
    if (!pb) {
        throw CalculusViolation("no pullback of " + c.name(fz.v) + " along " + c.name(first.middle));
    }
    const auto po = find_pushout(c, fz.u, second.middle);
    if (!po) {
        throw CalculusViolation("no pushout of " + c.name(fz.u) + " along " + c.name(second.middle));
    }
    const MorId v_pulled = pb->cone.to_second;     // P → X1
    const MorId middle_pulled = pb->cone.to_first;  // P → M
    const MorId middle_pushed = po->cocone.from_first;  // M → Q
    const MorId u_pushed = po->cocone.from_second;      // Y2 → Q
    Zigzag out;
    out.source = first.source;
    out.target = second.target;
    out.left_object = pb->cone.apex;
    out.right_object = po->cocone.apex;
    out.left = c.compose(v_pulled, first.left);
    out.middle = c.compose(middle_pulled, middle_pushed);
    out.right = c.compose(second.right, u_pushed);
    if (!pms.rc.is_weq(out.left) || !pms.rc.is_weq(out.right)) {
        throw CalculusViolation("composite zigzag has an outer map outside W");
    }
    return out;
}

std::int32_t HoCategory::compose(ObjId a, ObjId b, ObjId c, std::int32_t i, std::int32_t j) const
{
    const std::size_t table = index(a, b) * objects + static_cast<std::size_t>(c);
    return composition[table][static_cast<std::size_t>(i) * hom_size(b, c) + static_cast<std::size_t>(j)];
}

std::int32_t HoCategory::class_of(const Zigzag& z) const
{
    const std::size_t h = index(z.source, z.target);
    const auto object = homs[h].find(z);
    if (!object) {
        return -1;
    }
    return zigzag_class[h][static_cast<std::size_t>(*object)];
}

std::int32_t HoCategory::class_of_morphism(const FinCategory& cat, MorId f) const
{
    return class_of(zigzag_of(cat, f));
}

bool HoCategory::is_isomorphism(ObjId a, ObjId b, std::int32_t i) const
{
    const auto back = static_cast<std::int32_t>(hom_size(b, a));
    for (std::int32_t j = 0; j < back; ++j) {
        if (compose(a, b, a, i, j) == identities[static_cast<std::size_t>(a)] &&
            compose(b, a, b, j, i) == identities[static_cast<std::size_t>(b)]) {
            return true;
        }
    }
    return false;
}

HoCategory homotopy_category(const PartialModelStructure& pms, ZigzagConvention convention)
{
    const FinCategory& c = pms.cat();
    HoCategory ho;
    ho.objects = c.object_count();
    ho.convention = convention;
    const auto n = static_cast<ObjId>(ho.objects);
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            ZigzagCategory z = zigzag_category(pms.rc, a, b, convention);
            const Components comps = pi0(nerve(z.cat(), 1));
            std::vector<Zigzag> reps(comps.count);
            std::vector<char> seen(comps.count, 0);
            for (std::size_t o = 0; o < z.size(); ++o) {
                const auto k = static_cast<std::size_t>(comps.component[o]);
                if (!seen[k]) {
                    seen[k] = 1;
                    reps[k] = z.zigzag(static_cast<ObjId>(o));
                }
            }
            ho.zigzag_class.push_back(comps.component);
            ho.representatives.push_back(std::move(reps));
            ho.homs.push_back(std::move(z));
        }
    }
    for (ObjId a = 0; a < n; ++a) {
        ho.identities.push_back(ho.class_of(identity_zigzag(c, a)));
    }

    auto composite_class = [&](const Zigzag& z1, const Zigzag& z2, std::string& error) -> std::int32_t {
        try {
            const std::int32_t k = ho.class_of(ho_compose(pms, z1, z2));
            if (k < 0) {
                error = "composite of " + zigzag_name(c, z1) + " and " + zigzag_name(c, z2) +
                        " is not an object of the zigzag category";
            }
            return k;
        } catch (const CalculusViolation& e) {
            error = e.what();
            return -1;
        }
    };

    ho.composition.resize(ho.objects * ho.objects * ho.objects);
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            for (ObjId d = 0; d < n; ++d) {
                const auto& left = ho.representatives[ho.index(a, b)];
                const auto& right = ho.representatives[ho.index(b, d)];
                auto& table = ho.composition[ho.index(a, b) * ho.objects + static_cast<std::size_t>(d)];
                table.reserve(left.size() * right.size());
                for (const Zigzag& z1 : left) {
                    for (const Zigzag& z2 : right) {
                        std::string error;
                        table.push_back(composite_class(z1, z2, error));
                        if (!error.empty()) {
                            ho.issues.push_back(error);
                        }
                    }
                }
            }
        }
    }
    if (!ho.issues.empty()) {
        return ho;
    }

    // Well-definedness: every pair of zigzags, not just the representatives.
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            const ZigzagCategory& zab = ho.homs[ho.index(a, b)];
            for (ObjId d = 0; d < n; ++d) {
                const ZigzagCategory& zbd = ho.homs[ho.index(b, d)];
                for (std::size_t x = 0; x < zab.size(); ++x) {
                    const Zigzag z1 = zab.zigzag(static_cast<ObjId>(x));
                    const std::int32_t i = ho.zigzag_class[ho.index(a, b)][x];
                    for (std::size_t y = 0; y < zbd.size(); ++y) {
                        const Zigzag z2 = zbd.zigzag(static_cast<ObjId>(y));
                        const std::int32_t j = ho.zigzag_class[ho.index(b, d)][y];
                        std::string error;
                        const std::int32_t k = composite_class(z1, z2, error);
                        if (!error.empty()) {
                            ho.issues.push_back(error);
                        } else if (k != ho.compose(a, b, d, i, j)) {
                            ho.issues.push_back("composition is not well defined on classes: " + zigzag_name(c, z1) +
                                                " then " + zigzag_name(c, z2));
                        }
                    }
                }
            }
        }
    }

    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            for (std::int32_t i = 0; i < static_cast<std::int32_t>(ho.hom_size(a, b)); ++i) {
                if (ho.compose(a, a, b, ho.identities[static_cast<std::size_t>(a)], i) != i ||
                    ho.compose(a, b, b, i, ho.identities[static_cast<std::size_t>(b)]) != i) {
                    ho.issues.push_back("unit law fails for class " + std::to_string(i) + " of hom(" +
                                        c.object_name(a) + ", " + c.object_name(b) + ")");
                }
            }
        }
    }
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            for (ObjId d = 0; d < n; ++d) {
                for (ObjId e = 0; e < n; ++e) {
                    const auto sab = static_cast<std::int32_t>(ho.hom_size(a, b));
                    const auto sbd = static_cast<std::int32_t>(ho.hom_size(b, d));
                    const auto sde = static_cast<std::int32_t>(ho.hom_size(d, e));
                    for (std::int32_t i = 0; i < sab; ++i) {
                        for (std::int32_t j = 0; j < sbd; ++j) {
                            const std::int32_t ij = ho.compose(a, b, d, i, j);
                            for (std::int32_t k = 0; k < sde; ++k) {
                                if (ho.compose(a, d, e, ij, k) != ho.compose(a, b, e, i, ho.compose(b, d, e, j, k))) {
                                    ho.issues.push_back("associativity fails on hom(" + c.object_name(a) + ", " +
                                                        c.object_name(b) + ", " + c.object_name(d) + ", " +
                                                        c.object_name(e) + ")");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return ho;
}

}  // namespace pmcat
