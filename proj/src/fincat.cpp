#include "pmcat/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace pmcat {

namespace {

std::uint64_t pair_key(MorId f, MorId g)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f)) << 32) | static_cast<std::uint32_t>(g);
}

struct Resolved
{
    std::vector<std::string> objects;
    std::vector<FinCategory::Arrow> arrows;
    std::vector<MorId> identities;
    std::unordered_map<std::uint64_t, MorId> table;
};

ValidationReport resolve(const CategoryDescription& d, Resolved& out)
{
    ValidationReport report;
    std::unordered_map<std::string, ObjId> objects;
    for (const auto& name : d.objects) {
        if (name.empty()) {
            report.add(IssueKind::Structural, "empty object name");
            continue;
        }
        if (!objects.emplace(name, static_cast<ObjId>(out.objects.size())).second) {
            report.add(IssueKind::Structural, "duplicate object '" + name + "'", {name});
            continue;
        }
        out.objects.push_back(name);
    }

    std::unordered_map<std::string, MorId> morphisms;
    out.identities.assign(out.objects.size(), kNoMorphism);
    for (const auto& a : d.morphisms) {
        auto s = objects.find(a.source);
        auto t = objects.find(a.target);
        if (s == objects.end() || t == objects.end()) {
            const std::string& missing = s == objects.end() ? a.source : a.target;
            report.add(IssueKind::Structural, "morphism '" + a.name + "' refers to unknown object '" + missing + "'",
                       {a.name, missing});
            continue;
        }
        if (morphisms.count(a.name) != 0) {
            report.add(IssueKind::Structural, "duplicate morphism '" + a.name + "'", {a.name});
            continue;
        }
        const auto id = static_cast<MorId>(out.arrows.size());
        if (a.name.rfind("id:", 0) == 0) {
            auto owner = objects.find(a.name.substr(3));
            if (owner == objects.end() || owner->second != s->second || owner->second != t->second) {
                report.add(IssueKind::Structural, "reserved identity name '" + a.name + "' used for a non-identity",
                           {a.name});
                continue;
            }
            out.identities[static_cast<std::size_t>(owner->second)] = id;
        }
        morphisms.emplace(a.name, id);
        out.arrows.push_back({a.name, s->second, t->second});
    }
    for (std::size_t o = 0; o < out.objects.size(); ++o) {
        if (out.identities[o] != kNoMorphism) {
            continue;
        }
        const std::string name = identity_name(out.objects[o]);
        if (morphisms.count(name) != 0) {
            continue;
        }
        const auto id = static_cast<MorId>(out.arrows.size());
        morphisms.emplace(name, id);
        out.identities[o] = id;
        out.arrows.push_back({name, static_cast<ObjId>(o), static_cast<ObjId>(o)});
    }

    for (const auto& c : d.composites) {
        auto f = morphisms.find(c.first);
        auto g = morphisms.find(c.second);
        auto h = morphisms.find(c.result);
        if (f == morphisms.end() || g == morphisms.end() || h == morphisms.end()) {
            const std::string& missing =
                f == morphisms.end() ? c.first : (g == morphisms.end() ? c.second : c.result);
            report.add(IssueKind::Structural, "composite refers to unknown morphism '" + missing + "'",
                       {c.first, c.second, c.result});
            continue;
        }
        if (out.arrows[static_cast<std::size_t>(f->second)].target !=
            out.arrows[static_cast<std::size_t>(g->second)].source) {
            report.add(IssueKind::Structural, "composite given for non-composable pair (" + c.first + ", " +
                                                  c.second + ")",
                       {c.first, c.second});
            continue;
        }
        auto [it, inserted] = out.table.emplace(pair_key(f->second, g->second), h->second);
        if (!inserted && it->second != h->second) {
            report.add(IssueKind::Structural, "conflicting composites for (" + c.first + ", " + c.second + ")",
                       {c.first, c.second});
        }
    }
    for (std::size_t f = 0; f < out.arrows.size(); ++f) {
        const auto m = static_cast<MorId>(f);
        const auto& a = out.arrows[f];
        out.table.emplace(pair_key(out.identities[static_cast<std::size_t>(a.source)], m), m);
        out.table.emplace(pair_key(m, out.identities[static_cast<std::size_t>(a.target)]), m);
    }
    return report;
}

FinCategory assemble_resolved(Resolved r)
{
    auto table = std::move(r.table);
    return FinCategory::assemble(std::move(r.objects), std::move(r.arrows), std::move(r.identities),
                                 [&table](MorId f, MorId g) {
                                     auto it = table.find(pair_key(f, g));
                                     return it == table.end() ? kNoMorphism : it->second;
                                 });
}

}  // namespace

std::string identity_name(std::string_view object)
{
    return "id:" + std::string(object);
}

FinCategory FinCategory::assemble(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                  std::vector<MorId> identities, const ComposeFn& compose)
{
    FinCategory c;
    c.objects_ = std::move(objects);
    c.arrows_ = std::move(arrows);
    c.identities_ = std::move(identities);
    const std::size_t n = c.objects_.size();
    const std::size_t m = c.arrows_.size();
    c.out_.assign(n, {});
    c.in_.assign(n, {});
    for (std::size_t f = 0; f < m; ++f) {
        c.out_[static_cast<std::size_t>(c.arrows_[f].source)].push_back(static_cast<MorId>(f));
        c.in_[static_cast<std::size_t>(c.arrows_[f].target)].push_back(static_cast<MorId>(f));
    }
    for (auto& list : c.out_) {
        std::stable_sort(list.begin(), list.end(),
                         [&c](MorId x, MorId y) { return c.target(x) < c.target(y); });
    }
    for (auto& list : c.in_) {
        std::stable_sort(list.begin(), list.end(),
                         [&c](MorId x, MorId y) { return c.source(x) < c.source(y); });
    }
    c.out_pos_.assign(m, 0);
    for (const auto& list : c.out_) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            c.out_pos_[static_cast<std::size_t>(list[i])] = static_cast<std::int32_t>(i);
        }
    }
    c.after_.resize(m);
    for (std::size_t f = 0; f < m; ++f) {
        const auto& next = c.out_[static_cast<std::size_t>(c.arrows_[f].target)];
        auto& row = c.after_[f];
        row.resize(next.size());
        for (std::size_t i = 0; i < next.size(); ++i) {
            row[i] = compose(static_cast<MorId>(f), next[i]);
        }
    }
    c.object_lookup_.reserve(n);
    for (std::size_t o = 0; o < n; ++o) {
        c.object_lookup_.emplace(c.objects_[o], static_cast<ObjId>(o));
    }
    c.morphism_lookup_.reserve(m);
    for (std::size_t f = 0; f < m; ++f) {
        c.morphism_lookup_.emplace(c.arrows_[f].name, static_cast<MorId>(f));
    }
    return c;
}

FinCategory FinCategory::from_description(const CategoryDescription& description)
{
    Resolved r;
    ValidationReport report = resolve(description, r);
    if (!report.ok()) {
        throw InvalidCategory(std::move(report));
    }
    FinCategory cat = assemble_resolved(std::move(r));
    report = check_category_laws(cat);
    if (!report.ok()) {
        throw InvalidCategory(std::move(report));
    }
    return cat;
}

std::span<const MorId> FinCategory::hom(ObjId a, ObjId b) const
{
    const auto& list = out_[static_cast<std::size_t>(a)];
    auto lo = std::lower_bound(list.begin(), list.end(), b, [this](MorId f, ObjId t) { return target(f) < t; });
    auto hi = lo;
    while (hi != list.end() && target(*hi) == b) {
        ++hi;
    }
    return {list.data() + (lo - list.begin()), static_cast<std::size_t>(hi - lo)};
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const
{
    auto it = object_lookup_.find(std::string(name));
    if (it == object_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const
{
    auto it = morphism_lookup_.find(std::string(name));
    if (it == morphism_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool operator==(const FinCategory& a, const FinCategory& b)
{
    return a.objects_ == b.objects_ && a.arrows_ == b.arrows_ && a.identities_ == b.identities_ &&
           a.after_ == b.after_;
}

InvalidCategory::InvalidCategory(ValidationReport report)
    : std::invalid_argument(report.issues.empty() ? std::string("invalid category")
                                                  : "invalid category: " + report.issues.front().message)
    , report_(std::move(report))
{
}

ValidationReport validate_category(const CategoryDescription& description)
{
    Resolved r;
    ValidationReport report = resolve(description, r);
    if (!report.ok()) {
        return report;
    }
    return check_category_laws(assemble_resolved(std::move(r)));
}

ValidationReport check_category_laws(const FinCategory& cat)
{
    ValidationReport report;
    const auto m = static_cast<MorId>(cat.morphism_count());
    auto well_typed = [&cat](MorId f, MorId g, MorId h) {
        return h != kNoMorphism && cat.source(h) == cat.source(f) && cat.target(h) == cat.target(g);
    };
    for (std::size_t o = 0; o < cat.object_count(); ++o) {
        const MorId id = cat.identity(static_cast<ObjId>(o));
        if (id < 0 || id >= m || cat.source(id) != static_cast<ObjId>(o) || cat.target(id) != static_cast<ObjId>(o)) {
            report.add(IssueKind::Structural, "identity of '" + cat.object_name(static_cast<ObjId>(o)) +
                                                  "' is not an endomorphism of it",
                       {cat.object_name(static_cast<ObjId>(o))});
            return report;
        }
    }
    for (MorId f = 0; f < m; ++f) {
        for (MorId g : cat.out(cat.target(f))) {
            const MorId h = cat.compose(f, g);
            if (h == kNoMorphism) {
                report.add(IssueKind::MissingComposite,
                           "no composite for (" + cat.name(f) + ", " + cat.name(g) + ")",
                           {cat.name(f), cat.name(g)});
            } else if (!well_typed(f, g, h)) {
                report.add(IssueKind::CompositeEndpoints,
                           "composite of (" + cat.name(f) + ", " + cat.name(g) + ") is " + cat.name(h) +
                               " with wrong endpoints",
                           {cat.name(f), cat.name(g), cat.name(h)});
            }
        }
    }
    for (MorId f = 0; f < m; ++f) {
        const MorId ids = cat.identity(cat.source(f));
        const MorId idt = cat.identity(cat.target(f));
        const MorId left = cat.compose(ids, f);
        const MorId right = cat.compose(f, idt);
        if (left != f) {
            report.add(IssueKind::IdentityLaw,
                       cat.name(f) + " ∘ " + cat.name(ids) + " is not " + cat.name(f),
                       {cat.name(ids), cat.name(f), left == kNoMorphism ? "undefined" : cat.name(left)});
        }
        if (right != f) {
            report.add(IssueKind::IdentityLaw,
                       cat.name(idt) + " ∘ " + cat.name(f) + " is not " + cat.name(f),
                       {cat.name(f), cat.name(idt), right == kNoMorphism ? "undefined" : cat.name(right)});
        }
    }
    for (MorId f = 0; f < m; ++f) {
        for (MorId g : cat.out(cat.target(f))) {
            const MorId gf = cat.compose(f, g);
            if (!well_typed(f, g, gf)) {
                continue;
            }
            for (MorId h : cat.out(cat.target(g))) {
                const MorId hg = cat.compose(g, h);
                if (!well_typed(g, h, hg)) {
                    continue;
                }
                const MorId lhs = cat.compose(gf, h);
                const MorId rhs = cat.compose(f, hg);
                if (lhs != rhs) {
                    report.add(IssueKind::Associativity,
                               "composition of (" + cat.name(f) + ", " + cat.name(g) + ", " + cat.name(h) +
                                   ") depends on bracketing",
                               {cat.name(f), cat.name(g), cat.name(h)});
                }
            }
        }
    }
    return report;
}

Functor identity_functor(const CategoryPtr& cat)
{
    Functor f{cat, cat, {}, {}};
    f.on_objects.resize(cat->object_count());
    std::iota(f.on_objects.begin(), f.on_objects.end(), 0);
    f.on_morphisms.resize(cat->morphism_count());
    std::iota(f.on_morphisms.begin(), f.on_morphisms.end(), 0);
    return f;
}

Functor compose_functors(const Functor& first, const Functor& second)
{
    Functor f{first.source, second.target, {}, {}};
    f.on_objects.reserve(first.on_objects.size());
    for (ObjId o : first.on_objects) {
        f.on_objects.push_back(second.object(o));
    }
    f.on_morphisms.reserve(first.on_morphisms.size());
    for (MorId m : first.on_morphisms) {
        f.on_morphisms.push_back(second.morphism(m));
    }
    return f;
}

ValidationReport check_functor(const Functor& F)
{
    ValidationReport report;
    if (!F.source || !F.target) {
        report.add(IssueKind::Structural, "functor without source or target category");
        return report;
    }
    const FinCategory& s = *F.source;
    const FinCategory& t = *F.target;
    if (F.on_objects.size() != s.object_count() || F.on_morphisms.size() != s.morphism_count()) {
        report.add(IssueKind::Structural, "functor maps are not total on the source");
        return report;
    }
    for (std::size_t o = 0; o < s.object_count(); ++o) {
        const ObjId img = F.on_objects[o];
        if (img < 0 || static_cast<std::size_t>(img) >= t.object_count()) {
            report.add(IssueKind::Structural, "object '" + s.object_name(static_cast<ObjId>(o)) +
                                                  "' maps to an unknown object",
                       {s.object_name(static_cast<ObjId>(o))});
        }
    }
    for (std::size_t f = 0; f < s.morphism_count(); ++f) {
        const MorId img = F.on_morphisms[f];
        if (img < 0 || static_cast<std::size_t>(img) >= t.morphism_count()) {
            report.add(IssueKind::Structural, "morphism '" + s.name(static_cast<MorId>(f)) +
                                                  "' maps to an unknown morphism",
                       {s.name(static_cast<MorId>(f))});
        }
    }
    if (!report.ok()) {
        return report;
    }
    const auto m = static_cast<MorId>(s.morphism_count());
    for (MorId f = 0; f < m; ++f) {
        const MorId img = F.morphism(f);
        if (t.source(img) != F.object(s.source(f)) || t.target(img) != F.object(s.target(f))) {
            report.add(IssueKind::FunctorEndpoints,
                       "image of " + s.name(f) + " is " + t.name(img) + " with mismatched endpoints",
                       {s.name(f), t.name(img)});
        }
    }
    if (!report.ok()) {
        return report;
    }
    for (std::size_t o = 0; o < s.object_count(); ++o) {
        const MorId id = s.identity(static_cast<ObjId>(o));
        if (F.morphism(id) != t.identity(F.on_objects[o])) {
            report.add(IssueKind::FunctorIdentity, "identity " + s.name(id) + " maps to " + t.name(F.morphism(id)),
                       {s.name(id), t.name(F.morphism(id))});
        }
    }
    for (MorId f = 0; f < m; ++f) {
        for (MorId g : s.out(s.target(f))) {
            const MorId lhs = F.morphism(s.compose(f, g));
            const MorId rhs = t.compose(F.morphism(f), F.morphism(g));
            if (lhs != rhs) {
                report.add(IssueKind::FunctorComposition,
                           "composite of (" + s.name(f) + ", " + s.name(g) + ") is not preserved",
                           {s.name(f), s.name(g)});
            }
        }
    }
    return report;
}

std::optional<CoconeWitness> find_pushout(const FinCategory& cat, MorId f, MorId g)
{
    if (cat.source(f) != cat.source(g)) {
        throw PreconditionError("pushout needs a span: '" + cat.name(f) + "' and '" + cat.name(g) +
                                "' have different sources");
    }
    const ObjId b = cat.target(f);
    const ObjId c = cat.target(g);
    std::vector<Cocone> cocones;
    for (std::size_t q = 0; q < cat.object_count(); ++q) {
        const auto apex = static_cast<ObjId>(q);
        for (MorId i : cat.hom(b, apex)) {
            for (MorId j : cat.hom(c, apex)) {
                if (cat.compose(f, i) == cat.compose(g, j)) {
                    cocones.push_back({apex, i, j});
                }
            }
        }
    }
    for (const Cocone& candidate : cocones) {
        CoconeWitness witness{candidate, {}};
        bool universal = true;
        for (const Cocone& other : cocones) {
            const MorId m = cocone_comparison(cat, candidate, other);
            if (m == kNoMorphism) {
                universal = false;
                break;
            }
            witness.comparisons.emplace_back(other, m);
        }
        if (universal) {
            return witness;
        }
    }
    return std::nullopt;
}

std::optional<ConeWitness> find_pullback(const FinCategory& cat, MorId f, MorId g)
{
    if (cat.target(f) != cat.target(g)) {
        throw PreconditionError("pullback needs a cospan: '" + cat.name(f) + "' and '" + cat.name(g) +
                                "' have different targets");
    }
    const ObjId b = cat.source(f);
    const ObjId c = cat.source(g);
    std::vector<Cone> cones;
    for (std::size_t q = 0; q < cat.object_count(); ++q) {
        const auto apex = static_cast<ObjId>(q);
        for (MorId p : cat.hom(apex, b)) {
            for (MorId r : cat.hom(apex, c)) {
                if (cat.compose(p, f) == cat.compose(r, g)) {
                    cones.push_back({apex, p, r});
                }
            }
        }
    }
    for (const Cone& candidate : cones) {
        ConeWitness witness{candidate, {}};
        bool universal = true;
        for (const Cone& other : cones) {
            const MorId m = cone_comparison(cat, candidate, other);
            if (m == kNoMorphism) {
                universal = false;
                break;
            }
            witness.comparisons.emplace_back(other, m);
        }
        if (universal) {
            return witness;
        }
    }
    return std::nullopt;
}

MorId cocone_comparison(const FinCategory& cat, const Cocone& pushout, const Cocone& other)
{
    MorId found = kNoMorphism;
    for (MorId m : cat.hom(pushout.apex, other.apex)) {
        if (cat.compose(pushout.from_first, m) == other.from_first &&
            cat.compose(pushout.from_second, m) == other.from_second) {
            if (found != kNoMorphism) {
                return kNoMorphism;
            }
            found = m;
        }
    }
    return found;
}

MorId cone_comparison(const FinCategory& cat, const Cone& pullback, const Cone& other)
{
    MorId found = kNoMorphism;
    for (MorId m : cat.hom(other.apex, pullback.apex)) {
        if (cat.compose(m, pullback.to_first) == other.to_first &&
            cat.compose(m, pullback.to_second) == other.to_second) {
            if (found != kNoMorphism) {
                return kNoMorphism;
            }
            found = m;
        }
    }
    return found;
}

// The two re-checks below deliberately avoid hom() and the out-lists: they scan the
// full morphism list so that a bug in the indexed search cannot hide itself.
bool is_pushout(const FinCategory& cat, MorId f, MorId g, const Cocone& cocone)
{
    const auto m = static_cast<MorId>(cat.morphism_count());
    const ObjId b = cat.target(f);
    const ObjId c = cat.target(g);
    if (cat.source(f) != cat.source(g)) {
        return false;
    }
    const auto& i = cocone.from_first;
    const auto& j = cocone.from_second;
    if (cat.source(i) != b || cat.source(j) != c || cat.target(i) != cocone.apex || cat.target(j) != cocone.apex ||
        cat.compose(f, i) != cat.compose(g, j)) {
        return false;
    }
    std::vector<MorId> from_b, from_c, from_apex;
    for (MorId x = 0; x < m; ++x) {
        if (cat.source(x) == b) {
            from_b.push_back(x);
        }
        if (cat.source(x) == c) {
            from_c.push_back(x);
        }
        if (cat.source(x) == cocone.apex) {
            from_apex.push_back(x);
        }
    }
    for (MorId i2 : from_b) {
        for (MorId j2 : from_c) {
            if (cat.target(i2) != cat.target(j2) || cat.compose(f, i2) != cat.compose(g, j2)) {
                continue;
            }
            int count = 0;
            for (MorId x : from_apex) {
                if (cat.target(x) == cat.target(i2) && cat.compose(i, x) == i2 && cat.compose(j, x) == j2) {
                    ++count;
                }
            }
            if (count != 1) {
                return false;
            }
        }
    }
    return true;
}

bool is_pullback(const FinCategory& cat, MorId f, MorId g, const Cone& cone)
{
    const auto m = static_cast<MorId>(cat.morphism_count());
    const ObjId b = cat.source(f);
    const ObjId c = cat.source(g);
    if (cat.target(f) != cat.target(g)) {
        return false;
    }
    const auto& p = cone.to_first;
    const auto& q = cone.to_second;
    if (cat.target(p) != b || cat.target(q) != c || cat.source(p) != cone.apex || cat.source(q) != cone.apex ||
        cat.compose(p, f) != cat.compose(q, g)) {
        return false;
    }
    std::vector<MorId> into_b, into_c, into_apex;
    for (MorId x = 0; x < m; ++x) {
        if (cat.target(x) == b) {
            into_b.push_back(x);
        }
        if (cat.target(x) == c) {
            into_c.push_back(x);
        }
        if (cat.target(x) == cone.apex) {
            into_apex.push_back(x);
        }
    }
    for (MorId p2 : into_b) {
        for (MorId q2 : into_c) {
            if (cat.source(p2) != cat.source(q2) || cat.compose(p2, f) != cat.compose(q2, g)) {
                continue;
            }
            int count = 0;
            for (MorId x : into_apex) {
                if (cat.source(x) == cat.source(p2) && cat.compose(x, p) == p2 && cat.compose(x, q) == q2) {
                    ++count;
                }
            }
            if (count != 1) {
                return false;
            }
        }
    }
    return true;
}

StrictPullback strict_pullback_category(const Functor& left, const Functor& right)
{
    if (!left.target || !right.target || (left.target != right.target && !(*left.target == *right.target))) {
        throw PreconditionError("strict pullback needs two functors with a common target");
    }
    const FinCategory& x = *left.source;
    const FinCategory& y = *right.source;

    std::vector<std::string> objects;
    std::vector<std::pair<ObjId, ObjId>> object_pairs;
    std::unordered_map<std::uint64_t, ObjId> object_index;
    for (std::size_t a = 0; a < x.object_count(); ++a) {
        for (std::size_t b = 0; b < y.object_count(); ++b) {
            if (left.on_objects[a] == right.on_objects[b]) {
                object_index.emplace(pair_key(static_cast<ObjId>(a), static_cast<ObjId>(b)),
                                     static_cast<ObjId>(objects.size()));
                object_pairs.emplace_back(static_cast<ObjId>(a), static_cast<ObjId>(b));
                objects.push_back("(" + x.object_name(static_cast<ObjId>(a)) + "," +
                                  y.object_name(static_cast<ObjId>(b)) + ")");
            }
        }
    }

    std::vector<FinCategory::Arrow> arrows;
    std::vector<std::pair<MorId, MorId>> morphism_pairs;
    std::unordered_map<std::uint64_t, MorId> morphism_index;
    std::vector<MorId> identities(objects.size(), kNoMorphism);
    for (std::size_t o = 0; o < object_pairs.size(); ++o) {
        const auto [a, b] = object_pairs[o];
        for (MorId f : x.out(a)) {
            for (MorId g : y.out(b)) {
                if (left.morphism(f) != right.morphism(g)) {
                    continue;
                }
                const ObjId tgt = object_index.at(pair_key(x.target(f), y.target(g)));
                const auto id = static_cast<MorId>(arrows.size());
                morphism_index.emplace(pair_key(f, g), id);
                morphism_pairs.emplace_back(f, g);
                arrows.push_back({"(" + x.name(f) + "," + y.name(g) + ")", static_cast<ObjId>(o), tgt});
                if (f == x.identity(a) && g == y.identity(b)) {
                    identities[o] = id;
                }
            }
        }
    }
    auto cat = share(FinCategory::assemble(std::move(objects), std::move(arrows), std::move(identities),
                                           [&](MorId p, MorId q) {
                                               const auto [f1, g1] = morphism_pairs[static_cast<std::size_t>(p)];
                                               const auto [f2, g2] = morphism_pairs[static_cast<std::size_t>(q)];
                                               return morphism_index.at(
                                                   pair_key(x.compose(f1, f2), y.compose(g1, g2)));
                                           }));
    StrictPullback result{cat, Functor{cat, left.source, {}, {}}, Functor{cat, right.source, {}, {}}};
    for (const auto& [a, b] : object_pairs) {
        result.to_left.on_objects.push_back(a);
        result.to_right.on_objects.push_back(b);
    }
    for (const auto& [f, g] : morphism_pairs) {
        result.to_left.on_morphisms.push_back(f);
        result.to_right.on_morphisms.push_back(g);
    }
    return result;
}

Subcategory full_subcategory(const CategoryPtr& cat, std::span<const ObjId> objects)
{
    Subcategory sub;
    sub.object_index.assign(cat->object_count(), kNoObject);
    std::vector<ObjId> sorted(objects.begin(), objects.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> names;
    for (ObjId o : sorted) {
        sub.object_index[static_cast<std::size_t>(o)] = static_cast<ObjId>(sub.objects.size());
        sub.objects.push_back(o);
        names.push_back(cat->object_name(o));
    }
    sub.morphism_index.assign(cat->morphism_count(), kNoMorphism);
    std::vector<FinCategory::Arrow> arrows;
    for (std::size_t f = 0; f < cat->morphism_count(); ++f) {
        const ObjId s = sub.object_index[static_cast<std::size_t>(cat->source(static_cast<MorId>(f)))];
        const ObjId t = sub.object_index[static_cast<std::size_t>(cat->target(static_cast<MorId>(f)))];
        if (s == kNoObject || t == kNoObject) {
            continue;
        }
        sub.morphism_index[f] = static_cast<MorId>(sub.morphisms.size());
        sub.morphisms.push_back(static_cast<MorId>(f));
        arrows.push_back({cat->name(static_cast<MorId>(f)), s, t});
    }
    std::vector<MorId> identities;
    for (ObjId o : sub.objects) {
        identities.push_back(sub.morphism_index[static_cast<std::size_t>(cat->identity(o))]);
    }
    sub.cat = share(FinCategory::assemble(std::move(names), std::move(arrows), std::move(identities),
                                          [&](MorId f, MorId g) {
                                              return sub.morphism_index[static_cast<std::size_t>(cat->compose(
                                                  sub.morphisms[static_cast<std::size_t>(f)],
                                                  sub.morphisms[static_cast<std::size_t>(g)]))];
                                          }));
    return sub;
}

MorId inverse_of(const FinCategory& cat, MorId f)
{
    const ObjId a = cat.source(f);
    const ObjId b = cat.target(f);
    for (MorId g : cat.hom(b, a)) {
        if (cat.compose(f, g) == cat.identity(a) && cat.compose(g, f) == cat.identity(b)) {
            return g;
        }
    }
    return kNoMorphism;
}

bool is_isomorphism(const FinCategory& cat, MorId f)
{
    return inverse_of(cat, f) != kNoMorphism;
}

Subcategory skeleton(const CategoryPtr& cat)
{
    const std::size_t n = cat->object_count();
    std::vector<char> covered(n, 0);
    std::vector<ObjId> representatives;
    for (std::size_t a = 0; a < n; ++a) {
        if (covered[a]) {
            continue;
        }
        representatives.push_back(static_cast<ObjId>(a));
        for (MorId f : cat->out(static_cast<ObjId>(a))) {
            if (is_isomorphism(*cat, f)) {
                covered[static_cast<std::size_t>(cat->target(f))] = 1;
            }
        }
    }
    return full_subcategory(cat, representatives);
}

namespace {

std::vector<std::int32_t> refine_colors(const FinCategory& a, const FinCategory& b)
{
    // Joint color refinement over the disjoint union, so colors are comparable.
    const std::size_t na = a.object_count();
    const std::size_t n = na + b.object_count();
    auto cat_of = [&](std::size_t o) -> const FinCategory& { return o < na ? a : b; };
    auto local = [&](std::size_t o) { return static_cast<ObjId>(o < na ? o : o - na); };
    std::vector<std::int32_t> color(n, 0);
    for (int round = 0; round < 8; ++round) {
        std::map<std::vector<std::int64_t>, std::int32_t> palette;
        std::vector<std::int32_t> next(n);
        for (std::size_t o = 0; o < n; ++o) {
            const FinCategory& c = cat_of(o);
            const ObjId x = local(o);
            const std::size_t offset = o < na ? 0 : na;
            std::vector<std::int64_t> sig{color[o], static_cast<std::int64_t>(c.hom(x, x).size())};
            std::vector<std::int64_t> around;
            for (std::size_t y = 0; y < c.object_count(); ++y) {
                const auto hy = static_cast<ObjId>(y);
                const auto out = static_cast<std::int64_t>(c.hom(x, hy).size());
                const auto in = static_cast<std::int64_t>(c.hom(hy, x).size());
                if (out == 0 && in == 0) {
                    continue;
                }
                around.push_back((out * 1000003 + in) * 1000003 + color[y + offset]);
            }
            std::sort(around.begin(), around.end());
            sig.insert(sig.end(), around.begin(), around.end());
            next[o] = palette.emplace(std::move(sig), static_cast<std::int32_t>(palette.size())).first->second;
        }
        if (next == color) {
            break;
        }
        color = std::move(next);
    }
    return color;
}

class IsoSearch
{
public:
    IsoSearch(const FinCategory& a, const FinCategory& b)
        : a_(a)
        , b_(b)
        , color_(refine_colors(a, b))
    {
    }

    /// Searches object bijections preserving hom-set sizes until `accept` takes one.
    bool run(const std::function<bool(const std::vector<ObjId>&)>& accept)
    {
        accept_ = &accept;
        map_.assign(a_.object_count(), kNoObject);
        used_.assign(b_.object_count(), 0);
        return assign(0);
    }

private:
    bool compatible(ObjId x, ObjId y) const
    {
        if (a_.hom(x, x).size() != b_.hom(y, y).size()) {
            return false;
        }
        for (std::size_t p = 0; p < a_.object_count(); ++p) {
            const ObjId q = map_[p];
            if (q == kNoObject) {
                continue;
            }
            const auto px = static_cast<ObjId>(p);
            if (a_.hom(x, px).size() != b_.hom(y, q).size() || a_.hom(px, x).size() != b_.hom(q, y).size()) {
                return false;
            }
        }
        return true;
    }

    bool assign(std::size_t x)
    {
        if (x == a_.object_count()) {
            return (*accept_)(map_);
        }
        const std::size_t na = a_.object_count();
        for (std::size_t y = 0; y < b_.object_count(); ++y) {
            if (used_[y] || color_[x] != color_[na + y] || !compatible(static_cast<ObjId>(x), static_cast<ObjId>(y))) {
                continue;
            }
            map_[x] = static_cast<ObjId>(y);
            used_[y] = 1;
            if (assign(x + 1)) {
                return true;
            }
            used_[y] = 0;
            map_[x] = kNoObject;
        }
        return false;
    }

    const FinCategory& a_;
    const FinCategory& b_;
    std::vector<std::int32_t> color_;
    std::vector<ObjId> map_;
    std::vector<char> used_;
    const std::function<bool(const std::vector<ObjId>&)>* accept_ = nullptr;
};

class MorphismMatch
{
public:
    MorphismMatch(const FinCategory& a, const FinCategory& b, const std::vector<ObjId>& objects,
                  std::span<const char> marked_a, std::span<const char> marked_b)
        : a_(a)
        , b_(b)
        , objects_(objects)
        , marked_a_(marked_a)
        , marked_b_(marked_b)
    {
        factorizations_.resize(a.morphism_count());
        for (std::size_t f = 0; f < a.morphism_count(); ++f) {
            for (MorId g : a.out(a.target(static_cast<MorId>(f)))) {
                factorizations_[static_cast<std::size_t>(a.compose(static_cast<MorId>(f), g))].emplace_back(
                    static_cast<MorId>(f), g);
            }
        }
        // Identities first; they are forced.
        for (std::size_t f = 0; f < a.morphism_count(); ++f) {
            order_.push_back(static_cast<MorId>(f));
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&a](MorId x, MorId y) { return a.is_identity(x) && !a.is_identity(y); });
    }

    std::optional<std::vector<MorId>> run()
    {
        map_.assign(a_.morphism_count(), kNoMorphism);
        used_.assign(b_.morphism_count(), 0);
        if (!assign(0)) {
            return std::nullopt;
        }
        return map_;
    }

private:
    bool consistent(MorId f) const
    {
        auto img = [this](MorId x) { return map_[static_cast<std::size_t>(x)]; };
        for (const auto& [p, q] : factorizations_[static_cast<std::size_t>(f)]) {
            if (img(p) != kNoMorphism && img(q) != kNoMorphism && b_.compose(img(p), img(q)) != img(f)) {
                return false;
            }
        }
        for (MorId g : a_.out(a_.target(f))) {
            const MorId h = a_.compose(f, g);
            if (img(g) != kNoMorphism && img(h) != kNoMorphism && b_.compose(img(f), img(g)) != img(h)) {
                return false;
            }
        }
        for (MorId g : a_.in(a_.source(f))) {
            const MorId h = a_.compose(g, f);
            if (img(g) != kNoMorphism && img(h) != kNoMorphism && b_.compose(img(g), img(f)) != img(h)) {
                return false;
            }
        }
        return true;
    }

    bool assign(std::size_t i)
    {
        if (i == order_.size()) {
            return true;
        }
        const MorId f = order_[i];
        const ObjId s = objects_[static_cast<std::size_t>(a_.source(f))];
        const ObjId t = objects_[static_cast<std::size_t>(a_.target(f))];
        for (MorId g : b_.hom(s, t)) {
            if (used_[static_cast<std::size_t>(g)]) {
                continue;
            }
            if (a_.is_identity(f) != b_.is_identity(g)) {
                continue;
            }
            if (!marked_a_.empty() && (marked_a_[static_cast<std::size_t>(f)] != 0) !=
                                          (marked_b_[static_cast<std::size_t>(g)] != 0)) {
                continue;
            }
            map_[static_cast<std::size_t>(f)] = g;
            used_[static_cast<std::size_t>(g)] = 1;
            if (consistent(f) && assign(i + 1)) {
                return true;
            }
            used_[static_cast<std::size_t>(g)] = 0;
            map_[static_cast<std::size_t>(f)] = kNoMorphism;
        }
        return false;
    }

    const FinCategory& a_;
    const FinCategory& b_;
    const std::vector<ObjId>& objects_;
    std::span<const char> marked_a_;
    std::span<const char> marked_b_;
    std::vector<std::vector<std::pair<MorId, MorId>>> factorizations_;
    std::vector<MorId> order_;
    std::vector<MorId> map_;
    std::vector<char> used_;
};

}  // namespace

std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b)
{
    return find_isomorphism(a, b, {}, {});
}

std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b, std::span<const char> marked_a,
                                        std::span<const char> marked_b)
{
    if (a->object_count() != b->object_count() || a->morphism_count() != b->morphism_count()) {
        return std::nullopt;
    }
    std::optional<Functor> found;
    IsoSearch(*a, *b).run([&](const std::vector<ObjId>& objects) {
        auto morphisms = MorphismMatch(*a, *b, objects, marked_a, marked_b).run();
        if (!morphisms) {
            return false;
        }
        Functor iso{a, b, objects, std::move(*morphisms)};
        if (!check_functor(iso).ok()) {
            return false;
        }
        found = std::move(iso);
        return true;
    });
    return found;
}

std::string tuple_name(const FinCategory& cat, std::span<const MorId> morphisms)
{
    std::string s = "(";
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
        if (i > 0) {
            s += ",";
        }
        s += cat.name(morphisms[i]);
    }
    return s + ")";
}

}  // namespace pmcat
