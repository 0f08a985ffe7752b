#include "pmcat/relcat.hpp"

#include <numeric>

namespace pmcat {

std::vector<MorId> RelCategory::weq_morphisms() const
{
    std::vector<MorId> out;
    for (std::size_t f = 0; f < weq.size(); ++f) {
        if (weq[f]) {
            out.push_back(static_cast<MorId>(f));
        }
    }
    return out;
}

RelCategory RelCategory::minimal(CategoryPtr cat)
{
    return with_weq(std::move(cat), {});
}

RelCategory RelCategory::maximal(CategoryPtr cat)
{
    RelCategory rc{std::move(cat), {}};
    rc.weq.assign(rc.cat->morphism_count(), 1);
    return rc;
}

RelCategory RelCategory::with_weq(CategoryPtr cat, std::span<const MorId> weq)
{
    RelCategory rc{std::move(cat), {}};
    rc.weq.assign(rc.cat->morphism_count(), 0);
    for (std::size_t o = 0; o < rc.cat->object_count(); ++o) {
        rc.weq[static_cast<std::size_t>(rc.cat->identity(static_cast<ObjId>(o)))] = 1;
    }
    for (MorId f : weq) {
        if (f < 0 || static_cast<std::size_t>(f) >= rc.weq.size()) {
            throw PreconditionError("weak equivalence id out of range");
        }
        rc.weq[static_cast<std::size_t>(f)] = 1;
    }
    return rc;
}

ValidationReport validate_relative(const RelCategory& rc)
{
    ValidationReport report;
    if (!rc.cat) {
        report.add(IssueKind::Structural, "relative category without a category");
        return report;
    }
    const FinCategory& c = *rc.cat;
    if (rc.weq.size() != c.morphism_count()) {
        report.add(IssueKind::Structural, "weak-equivalence marks do not match the morphism list");
        return report;
    }
    for (std::size_t o = 0; o < c.object_count(); ++o) {
        const MorId id = c.identity(static_cast<ObjId>(o));
        if (!rc.is_weq(id)) {
            report.add(IssueKind::WeqIdentity, "identity not in W: " + c.name(id), {c.name(id)});
        }
    }
    for (std::size_t fi = 0; fi < c.morphism_count(); ++fi) {
        const auto f = static_cast<MorId>(fi);
        if (!rc.is_weq(f)) {
            continue;
        }
        for (MorId g : c.out(c.target(f))) {
            if (rc.is_weq(g) && !rc.is_weq(c.compose(f, g))) {
                report.add(IssueKind::WeqComposition,
                           "W not closed under composition: " + c.name(g) + " ∘ " + c.name(f) + " = " +
                               c.name(c.compose(f, g)) + " is not in W",
                           {c.name(f), c.name(g), c.name(c.compose(f, g))});
            }
        }
    }
    return report;
}

PropertyReport check_two_of_three(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    for (std::size_t ri = 0; ri < c.morphism_count(); ++ri) {
        const auto r = static_cast<MorId>(ri);
        for (MorId s : c.out(c.target(r))) {
            const MorId sr = c.compose(r, s);
            const int in_w = rc.is_weq(r) + rc.is_weq(s) + rc.is_weq(sr);
            if (in_w == 2) {
                const MorId odd = !rc.is_weq(r) ? r : (!rc.is_weq(s) ? s : sr);
                return {false, {r, s},
                        "two of (" + c.name(r) + ", " + c.name(s) + ", " + c.name(sr) + ") are in W but " +
                            c.name(odd) + " is not"};
            }
        }
    }
    return {true, {}, "two-out-of-three holds"};
}

PropertyReport check_isomorphisms_in_weq(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    for (std::size_t fi = 0; fi < c.morphism_count(); ++fi) {
        const auto f = static_cast<MorId>(fi);
        if (!rc.is_weq(f) && is_isomorphism(c, f)) {
            return {false, {f}, "isomorphism " + c.name(f) + " is not in W"};
        }
    }
    return {true, {}, "every isomorphism is in W"};
}

TwoOfSixReport check_two_of_six(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    TwoOfSixReport report;
    for (std::size_t ri = 0; ri < c.morphism_count() && report.property.pass; ++ri) {
        const auto r = static_cast<MorId>(ri);
        for (MorId s : c.out(c.target(r))) {
            const MorId sr = c.compose(r, s);
            if (!rc.is_weq(sr)) {
                continue;
            }
            for (MorId t : c.out(c.target(s))) {
                const MorId ts = c.compose(s, t);
                if (!rc.is_weq(ts)) {
                    continue;
                }
                const MorId tsr = c.compose(sr, t);
                for (MorId x : {r, s, t, tsr}) {
                    if (!rc.is_weq(x)) {
                        report.property = {false,
                                           {r, s, t},
                                           c.name(s) + " ∘ " + c.name(r) + " = " + c.name(sr) + " and " + c.name(t) +
                                               " ∘ " + c.name(s) + " = " + c.name(ts) + " are in W but " +
                                               c.name(x) + " is not"};
                        break;
                    }
                }
                if (!report.property.pass) {
                    break;
                }
            }
            if (!report.property.pass) {
                break;
            }
        }
    }
    if (report.property.pass) {
        report.property.detail = "two-out-of-six holds";
        report.two_of_three = check_two_of_three(rc);
        report.isomorphisms_in_weq = check_isomorphisms_in_weq(rc);
    }
    return report;
}

RelSubcategory homotopically_full_subcategory(const RelCategory& rc, std::span<const ObjId> seeds)
{
    const FinCategory& c = *rc.cat;
    std::vector<ObjId> parent(c.object_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](ObjId x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (rc.weq[f]) {
            const ObjId a = find(c.source(static_cast<MorId>(f)));
            const ObjId b = find(c.target(static_cast<MorId>(f)));
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    std::vector<char> wanted_root(c.object_count(), 0);
    for (ObjId s : seeds) {
        if (s < 0 || static_cast<std::size_t>(s) >= c.object_count()) {
            throw PreconditionError("seed object out of range");
        }
        wanted_root[static_cast<std::size_t>(find(s))] = 1;
    }
    std::vector<ObjId> closure;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
        if (wanted_root[static_cast<std::size_t>(find(static_cast<ObjId>(o)))]) {
            closure.push_back(static_cast<ObjId>(o));
        }
    }
    Subcategory sub = full_subcategory(rc.cat, closure);
    RelSubcategory out{RelCategory{sub.cat, {}}, sub.objects};
    for (MorId f : sub.morphisms) {
        out.rc.weq.push_back(rc.weq[static_cast<std::size_t>(f)]);
    }
    return out;
}

namespace {

class FunctorEnumerator
{
public:
    FunctorEnumerator(const RelCategory& target, const RelCategory& source)
        : t_(target)
        , s_(source)
        , tc_(*target.cat)
        , sc_(*source.cat)
    {
        factorizations_.resize(sc_.morphism_count());
        for (std::size_t p = 0; p < sc_.morphism_count(); ++p) {
            for (MorId q : sc_.out(sc_.target(static_cast<MorId>(p)))) {
                factorizations_[static_cast<std::size_t>(sc_.compose(static_cast<MorId>(p), q))].emplace_back(
                    static_cast<MorId>(p), q);
            }
        }
    }

    std::vector<Functor> run()
    {
        objects_.assign(sc_.object_count(), kNoObject);
        morphisms_.assign(sc_.morphism_count(), kNoMorphism);
        object_step(0);
        return std::move(found_);
    }

private:
    void object_step(std::size_t a)
    {
        if (a == sc_.object_count()) {
            morphism_step(0);
            return;
        }
        for (std::size_t x = 0; x < tc_.object_count(); ++x) {
            objects_[a] = static_cast<ObjId>(x);
            object_step(a + 1);
        }
        objects_[a] = kNoObject;
    }

    bool consistent(MorId f) const
    {
        auto img = [this](MorId x) { return morphisms_[static_cast<std::size_t>(x)]; };
        for (MorId g : sc_.out(sc_.target(f))) {
            const MorId h = sc_.compose(f, g);
            if (img(g) != kNoMorphism && img(h) != kNoMorphism && tc_.compose(img(f), img(g)) != img(h)) {
                return false;
            }
        }
        for (MorId g : sc_.in(sc_.source(f))) {
            const MorId h = sc_.compose(g, f);
            if (img(g) != kNoMorphism && img(h) != kNoMorphism && tc_.compose(img(g), img(f)) != img(h)) {
                return false;
            }
        }
        for (const auto& [p, q] : factorizations_[static_cast<std::size_t>(f)]) {
            if (img(p) != kNoMorphism && img(q) != kNoMorphism && tc_.compose(img(p), img(q)) != img(f)) {
                return false;
            }
        }
        return true;
    }

    void morphism_step(std::size_t fi)
    {
        if (fi == sc_.morphism_count()) {
            found_.push_back(Functor{s_.cat, t_.cat, objects_, morphisms_});
            return;
        }
        const auto f = static_cast<MorId>(fi);
        const ObjId a = objects_[static_cast<std::size_t>(sc_.source(f))];
        const ObjId b = objects_[static_cast<std::size_t>(sc_.target(f))];
        auto attempt = [&](MorId g) {
            morphisms_[fi] = g;
            if (consistent(f)) {
                morphism_step(fi + 1);
            }
        };
        if (sc_.is_identity(f)) {
            attempt(tc_.identity(a));
        } else {
            for (MorId g : tc_.hom(a, b)) {
                if (!s_.is_weq(f) || t_.is_weq(g)) {
                    attempt(g);
                }
            }
        }
        morphisms_[fi] = kNoMorphism;
    }

    const RelCategory& t_;
    const RelCategory& s_;
    const FinCategory& tc_;
    const FinCategory& sc_;
    std::vector<ObjId> objects_;
    std::vector<MorId> morphisms_;
    std::vector<std::vector<std::pair<MorId, MorId>>> factorizations_;
    std::vector<Functor> found_;
};

void transformations(const FinCategory& sc, const FinCategory& tc, const Functor& F, const Functor& G,
                     std::vector<MorId>& alpha, std::size_t a, std::vector<std::vector<MorId>>& out)
{
    if (a == sc.object_count()) {
        out.push_back(alpha);
        return;
    }
    const auto x = static_cast<ObjId>(a);
    for (MorId c : tc.hom(F.object(x), G.object(x))) {
        alpha[a] = c;
        bool ok = true;
        for (std::size_t fi = 0; fi < sc.morphism_count() && ok; ++fi) {
            const auto f = static_cast<MorId>(fi);
            const auto s = static_cast<std::size_t>(sc.source(f));
            const auto t = static_cast<std::size_t>(sc.target(f));
            if (std::max(s, t) != a) {
                continue;
            }
            ok = tc.compose(alpha[s], G.morphism(f)) == tc.compose(F.morphism(f), alpha[t]);
        }
        if (ok) {
            transformations(sc, tc, F, G, alpha, a + 1, out);
        }
    }
    alpha[a] = kNoMorphism;
}

}  // namespace

FunctorCategory relative_functor_category(const RelCategory& target, const RelCategory& source)
{
    const FinCategory& sc = *source.cat;
    const FinCategory& tc = *target.cat;
    FunctorCategory out;
    out.functors = FunctorEnumerator(target, source).run();

    std::vector<std::string> names;
    for (const Functor& F : out.functors) {
        std::string name = "<";
        for (std::size_t f = 0; f < F.on_morphisms.size(); ++f) {
            name += (f > 0 ? "," : "") + sc.name(static_cast<MorId>(f)) + ":" + tc.name(F.on_morphisms[f]);
        }
        names.push_back(name + ">");
    }

    std::vector<FinCategory::Arrow> arrows;
    std::vector<MorId> identities(out.functors.size(), kNoMorphism);
    TupleIndex index;
    std::vector<std::vector<MorId>> found;
    std::vector<MorId> alpha(sc.object_count(), kNoMorphism);
    for (std::size_t i = 0; i < out.functors.size(); ++i) {
        for (std::size_t j = 0; j < out.functors.size(); ++j) {
            found.clear();
            transformations(sc, tc, out.functors[i], out.functors[j], alpha, 0, found);
            for (auto& comps : found) {
                const auto id = static_cast<MorId>(arrows.size());
                std::vector<std::int32_t> key{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)};
                key.insert(key.end(), comps.begin(), comps.end());
                index.emplace(std::move(key), id);
                bool is_id = i == j;
                bool weak = true;
                for (MorId c : comps) {
                    is_id = is_id && tc.is_identity(c);
                    weak = weak && target.is_weq(c);
                }
                if (is_id) {
                    identities[i] = id;
                }
                out.rc.weq.push_back(weak ? 1 : 0);
                arrows.push_back({tuple_name(tc, comps), static_cast<ObjId>(i), static_cast<ObjId>(j)});
                out.components.push_back(std::move(comps));
            }
        }
    }
    std::vector<ObjId> sources, targets;
    for (const auto& a : arrows) {
        sources.push_back(a.source);
        targets.push_back(a.target);
    }
    out.rc.cat = share(FinCategory::assemble(std::move(names), std::move(arrows), std::move(identities),
                                             [&](MorId f, MorId g) {
                                                 const auto& cf = out.components[static_cast<std::size_t>(f)];
                                                 const auto& cg = out.components[static_cast<std::size_t>(g)];
                                                 std::vector<std::int32_t> key{sources[static_cast<std::size_t>(f)],
                                                                               targets[static_cast<std::size_t>(g)]};
                                                 for (std::size_t a = 0; a < cf.size(); ++a) {
                                                     key.push_back(tc.compose(cf[a], cg[a]));
                                                 }
                                                 auto it = index.find(key);
                                                 return it == index.end() ? kNoMorphism : it->second;
                                             }));
    return out;
}

RelCategory restrict_to_weq(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    std::vector<MorId> kept;
    std::vector<MorId> index(c.morphism_count(), kNoMorphism);
    std::vector<FinCategory::Arrow> arrows;
    for (std::size_t a = 0; a < c.object_count(); ++a) {
        for (std::size_t b = 0; b < c.object_count(); ++b) {
            for (MorId f : c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b))) {
                if (!rc.is_weq(f)) {
                    continue;
                }
                index[static_cast<std::size_t>(f)] = static_cast<MorId>(kept.size());
                kept.push_back(f);
                arrows.push_back({c.name(f), c.source(f), c.target(f)});
            }
        }
    }
    std::vector<MorId> identities;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
        identities.push_back(index[static_cast<std::size_t>(c.identity(static_cast<ObjId>(o)))]);
    }
    auto cat = share(FinCategory::assemble(c.objects(), std::move(arrows), std::move(identities),
                                           [&](MorId f, MorId g) {
                                               return index[static_cast<std::size_t>(
                                                   c.compose(kept[static_cast<std::size_t>(f)],
                                                             kept[static_cast<std::size_t>(g)]))];
                                           }));
    return RelCategory::maximal(std::move(cat));
}

std::optional<Functor> find_relative_isomorphism(const RelCategory& a, const RelCategory& b)
{
    return find_isomorphism(a.cat, b.cat, a.weq, b.weq);
}

}  // namespace pmcat
