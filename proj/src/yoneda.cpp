#include "pmcat/yoneda.hpp"

#include <array>

namespace pmcat {

namespace {

/// Functor between zigzag categories that rewrites the outer legs and keeps X, Y.
Functor reattach(const FinCategory& c, const ZigzagCategory& from, const ZigzagCategory& to, MorId left_after,
                 MorId right_before)
{
    Functor f{from.diagrams.cat, to.diagrams.cat, {}, {}};
    for (std::size_t o = 0; o < from.size(); ++o) {
        Zigzag z = from.zigzag(static_cast<ObjId>(o));
        z.source = to.source;
        z.target = to.target;
        if (left_after != kNoMorphism) {
            z.left = c.compose(z.left, left_after);
        }
        if (right_before != kNoMorphism) {
            z.right = c.compose(right_before, z.right);
        }
        const auto found = to.find(z);
        if (!found) {
            throw std::logic_error("reattached zigzag is not an object of the target zigzag category");
        }
        f.on_objects.push_back(*found);
    }
    for (std::size_t m = 0; m < from.diagrams.components.size(); ++m) {
        const auto& phi = from.diagrams.components[m];
        const std::array<MorId, 4> comps{c.identity(to.source), phi[1], phi[2], c.identity(to.target)};
        const ObjId s = f.on_objects[static_cast<std::size_t>(from.cat().source(static_cast<MorId>(m)))];
        const ObjId t = f.on_objects[static_cast<std::size_t>(from.cat().target(static_cast<MorId>(m)))];
        f.on_morphisms.push_back(*to.diagrams.find_morphism(s, t, comps));
    }
    return f;
}

SimplicialMap compose_maps(const SimplicialMap& first, const SimplicialMap& second)
{
    SimplicialMap out;
    for (std::size_t n = 0; n < first.on_simplices.size(); ++n) {
        std::vector<SimplexId> level;
        for (SimplexId x : first.on_simplices[n]) {
            level.push_back(second.on_simplices[n][static_cast<std::size_t>(x)]);
        }
        out.on_simplices.push_back(std::move(level));
    }
    return out;
}

bool is_identity_map(const SimplicialMap& m)
{
    for (const auto& level : m.on_simplices) {
        for (std::size_t x = 0; x < level.size(); ++x) {
            if (level[x] != static_cast<SimplexId>(x)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

SimplicialPresheaf yoneda_object(const RelCategory& rc, ObjId a, int n_max, ZigzagConvention convention)
{
    const FinCategory& c = *rc.cat;
    SimplicialPresheaf p;
    p.apex = a;
    p.n_max = n_max;
    p.convention = convention;
    for (std::size_t b = 0; b < c.object_count(); ++b) {
        p.categories.push_back(zigzag_category(rc, static_cast<ObjId>(b), a, convention));
        p.values.push_back(nerve(p.categories.back().cat(), n_max));
    }
    p.action.resize(c.morphism_count());
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
        if (!rc.is_weq(static_cast<MorId>(g))) {
            continue;
        }
        const auto s = static_cast<std::size_t>(c.source(static_cast<MorId>(g)));
        const auto t = static_cast<std::size_t>(c.target(static_cast<MorId>(g)));
        const Functor f = reattach(c, p.categories[s], p.categories[t], static_cast<MorId>(g), kNoMorphism);
        p.action[g] = nerve_map(f, p.values[s], p.values[t]);
    }
    return p;
}

ValidationReport check_presheaf(const RelCategory& rc, const SimplicialPresheaf& p)
{
    const FinCategory& c = *rc.cat;
    ValidationReport report;
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
        if (!p.action[g]) {
            continue;
        }
        const auto s = static_cast<std::size_t>(c.source(static_cast<MorId>(g)));
        const auto t = static_cast<std::size_t>(c.target(static_cast<MorId>(g)));
        report.append(check_simplicial_map(p.values[s], p.values[t], *p.action[g]));
        if (c.is_identity(static_cast<MorId>(g)) && !is_identity_map(*p.action[g])) {
            report.add(IssueKind::FunctorIdentity, "action of " + c.name(static_cast<MorId>(g)) + " is not the identity");
        }
        for (MorId h : c.out(static_cast<ObjId>(t))) {
            if (!p.action[static_cast<std::size_t>(h)]) {
                continue;
            }
            const MorId hg = c.compose(static_cast<MorId>(g), h);
            const auto& direct = p.action[static_cast<std::size_t>(hg)];
            if (!direct ||
                direct->on_simplices != compose_maps(*p.action[g], *p.action[static_cast<std::size_t>(h)]).on_simplices) {
                report.add(IssueKind::FunctorComposition, "action does not respect " + c.name(h) + " after " +
                                                              c.name(static_cast<MorId>(g)));
            }
        }
    }
    return report;
}

std::vector<SimplicialMap> yoneda_map(const RelCategory& rc, const SimplicialPresheaf& target_side,
                                      const SimplicialPresheaf& source_side, MorId w)
{
    const FinCategory& c = *rc.cat;
    if (!rc.is_weq(w) || c.source(w) != source_side.apex || c.target(w) != target_side.apex) {
        throw PreconditionError("y(w) needs a weak equivalence from the source apex to the target apex");
    }
    std::vector<SimplicialMap> out;
    for (std::size_t b = 0; b < c.object_count(); ++b) {
        const Functor f = reattach(c, target_side.categories[b], source_side.categories[b], kNoMorphism, w);
        out.push_back(nerve_map(f, target_side.values[b], source_side.values[b]));
    }
    return out;
}

bool YonedaReport::pi0_yoneda_pass() const
{
    for (const Pi0Comparison& p : pi0) {
        if (p.ho && *p.ho != p.presheaf) {
            return false;
        }
    }
    return true;
}

YonedaReport verify_yoneda_relative(const RelCategory& rc, int dims, const PartialModelStructure* pms,
                                    int oracle_bound, ZigzagConvention convention)
{
    if (dims < 0) {
        throw PreconditionError("homology degree must be non-negative");
    }
    const FinCategory& c = *rc.cat;
    YonedaReport report;
    report.dims = dims;
    report.convention = convention;
    report.model = "width-1 zigzag nerves A <- X -> Y <- B, morphisms: " + std::string(to_string(convention));
    report.gap = "the essential image of the embedding is not built; only levelwise pi0 and homology of y(w) and the "
                 "pi0-level Yoneda bijection are checked";
    std::vector<SimplicialPresheaf> presheaves;
    for (std::size_t a = 0; a < c.object_count(); ++a) {
        presheaves.push_back(yoneda_object(rc, static_cast<ObjId>(a), dims + 1, convention));
        const ValidationReport laws = check_presheaf(rc, presheaves.back());
        for (const Issue& i : laws.issues) {
            report.presheaf_issues.push_back("y(" + c.object_name(static_cast<ObjId>(a)) + "): " + i.message);
        }
    }
    for (MorId w : rc.weq_morphisms()) {
        const auto a = static_cast<std::size_t>(c.source(w));
        const auto a2 = static_cast<std::size_t>(c.target(w));
        const auto maps = yoneda_map(rc, presheaves[a2], presheaves[a], w);
        for (std::size_t b = 0; b < c.object_count(); ++b) {
            ++report.maps_checked;
            const InducedMapReport r = induced_map_check(presheaves[a2].values[b], presheaves[a].values[b], maps[b], dims);
            if (!r.pi0_bijective) {
                report.failures.push_back({w, static_cast<ObjId>(b), -1, "not a bijection on pi0"});
            } else if (!r.homology_isomorphism) {
                report.failures.push_back({w, static_cast<ObjId>(b), r.first_failing_degree,
                                           "not an isomorphism on H_" + std::to_string(r.first_failing_degree)});
            }
        }
    }

    std::optional<HoCategory> ho;
    if (pms && verify_partial_model(*pms).pass()) {
        ho = homotopy_category(*pms, convention);
        report.ho_available = ho->lawful();
    }
    std::optional<LocalizationOracle> current, previous;
    if (oracle_bound >= 2) {
        current.emplace(rc, oracle_bound);
        previous.emplace(rc, oracle_bound - 2);
    }
    const auto n = static_cast<ObjId>(c.object_count());
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            Pi0Comparison cmp{a, b, pi0(presheaves[static_cast<std::size_t>(b)].values[static_cast<std::size_t>(a)]).count,
                              std::nullopt, std::nullopt};
            if (report.ho_available) {
                cmp.ho = ho->hom_size(a, b);
            }
            if (current && current->class_count(a, b) == previous->class_count(a, b)) {
                cmp.oracle = current->class_count(a, b);
            }
            report.pi0.push_back(cmp);
        }
    }
    return report;
}

}  // namespace pmcat
