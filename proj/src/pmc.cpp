#include "pmcat/pmc.hpp"

#include <algorithm>

namespace pmcat {

namespace {

std::string square_text(const FinCategory& c, const WeqSquare& s)
{
    return "(" + c.name(s.from) + " -> " + c.name(s.to) + " via " + c.name(s.top) + ", " + c.name(s.bottom) + ")";
}

bool is_square(const RelCategory& rc, const WeqSquare& s)
{
    const FinCategory& c = *rc.cat;
    const auto m = static_cast<MorId>(c.morphism_count());
    for (MorId f : {s.from, s.to, s.top, s.bottom}) {
        if (f < 0 || f >= m || !rc.is_weq(f)) {
            return false;
        }
    }
    return c.source(s.top) == c.source(s.from) && c.target(s.top) == c.source(s.to) &&
           c.source(s.bottom) == c.target(s.from) && c.target(s.bottom) == c.target(s.to) &&
           c.compose(s.from, s.bottom) == c.compose(s.top, s.to);
}

/// Checks that `marks` describe a subcategory of W containing every identity.
void check_subcategory(const RelCategory& rc, const std::vector<char>& marks, const std::string& label,
                       AxiomVerdict& verdict)
{
    const FinCategory& c = *rc.cat;
    for (std::size_t o = 0; o < c.object_count() && verdict.pass; ++o) {
        const MorId id = c.identity(static_cast<ObjId>(o));
        ++verdict.checks;
        if (!marks[static_cast<std::size_t>(id)]) {
            verdict.pass = false;
            verdict.witness = {c.name(id)};
            verdict.detail = "identity " + c.name(id) + " is not in " + label;
        }
    }
    for (std::size_t f = 0; f < c.morphism_count() && verdict.pass; ++f) {
        if (!marks[f]) {
            continue;
        }
        ++verdict.checks;
        if (!rc.weq[f]) {
            verdict.pass = false;
            verdict.witness = {c.name(static_cast<MorId>(f))};
            verdict.detail = c.name(static_cast<MorId>(f)) + " is in " + label + " but not in W";
            break;
        }
        for (MorId g : c.out(c.target(static_cast<MorId>(f)))) {
            if (!marks[static_cast<std::size_t>(g)]) {
                continue;
            }
            ++verdict.checks;
            const MorId h = c.compose(static_cast<MorId>(f), g);
            if (!marks[static_cast<std::size_t>(h)]) {
                verdict.pass = false;
                verdict.witness = {c.name(static_cast<MorId>(f)), c.name(g)};
                verdict.detail = label + " is not closed under composition: " + c.name(g) + " ∘ " +
                                 c.name(static_cast<MorId>(f)) + " = " + c.name(h);
                break;
            }
        }
    }
}

/// Pushouts and pullbacks are determined up to isomorphism of the apex: a class need
/// only contain one representative of the leg.
MorId pushed_in(const PartialModelStructure& pms, MorId pushed)
{
    const FinCategory& c = pms.cat();
    if (pms.is_u(pushed)) {
        return pushed;
    }
    for (MorId phi : c.out(c.target(pushed))) {
        if (is_isomorphism(c, phi) && pms.is_u(c.compose(pushed, phi))) {
            return c.compose(pushed, phi);
        }
    }
    return kNoMorphism;
}

MorId pulled_in(const PartialModelStructure& pms, MorId pulled)
{
    const FinCategory& c = pms.cat();
    if (pms.is_v(pulled)) {
        return pulled;
    }
    for (MorId phi : c.in(c.source(pulled))) {
        if (is_isomorphism(c, phi) && pms.is_v(c.compose(phi, pulled))) {
            return c.compose(phi, pulled);
        }
    }
    return kNoMorphism;
}

AxiomVerdict check_pushout_closure(const PartialModelStructure& pms)
{
    const FinCategory& c = pms.cat();
    AxiomVerdict v{"c-i", "U has pushouts along every map and is closed under them", true, {}, {}, 0};
    check_subcategory(pms.rc, pms.in_u, "U", v);
    for (std::size_t ui = 0; ui < c.morphism_count() && v.pass; ++ui) {
        const auto u = static_cast<MorId>(ui);
        if (!pms.is_u(u)) {
            continue;
        }
        for (MorId f : c.out(c.source(u))) {
            ++v.checks;
            auto po = find_pushout(c, u, f);
            if (!po) {
                v.pass = false;
                v.witness = {c.name(u), c.name(f)};
                v.detail = "no pushout of " + c.name(u) + " along " + c.name(f);
                break;
            }
            const MorId pushed = po->cocone.from_second;
            if (pushed_in(pms, pushed) == kNoMorphism) {
                v.pass = false;
                v.witness = {c.name(u), c.name(f), c.name(pushed)};
                v.detail = "pushout of " + c.name(u) + " along " + c.name(f) + " is " + c.name(pushed) +
                           ", which is not in U";
                break;
            }
        }
    }
    return v;
}

AxiomVerdict check_pullback_closure(const PartialModelStructure& pms)
{
    const FinCategory& c = pms.cat();
    AxiomVerdict v{"c-ii", "V has pullbacks along every map and is closed under them", true, {}, {}, 0};
    check_subcategory(pms.rc, pms.in_v, "V", v);
    for (std::size_t vi = 0; vi < c.morphism_count() && v.pass; ++vi) {
        const auto m = static_cast<MorId>(vi);
        if (!pms.is_v(m)) {
            continue;
        }
        for (MorId f : c.in(c.target(m))) {
            ++v.checks;
            auto pb = find_pullback(c, m, f);
            if (!pb) {
                v.pass = false;
                v.witness = {c.name(m), c.name(f)};
                v.detail = "no pullback of " + c.name(m) + " along " + c.name(f);
                break;
            }
            const MorId pulled = pb->cone.to_second;
            if (pulled_in(pms, pulled) == kNoMorphism) {
                v.pass = false;
                v.witness = {c.name(m), c.name(f), c.name(pulled)};
                v.detail = "pullback of " + c.name(m) + " along " + c.name(f) + " is " + c.name(pulled) +
                           ", which is not in V";
                break;
            }
        }
    }
    return v;
}

AxiomVerdict check_factorization(const PartialModelStructure& pms)
{
    const FinCategory& c = pms.cat();
    AxiomVerdict v{"c-iii", "functorial factorization w = v u with u in U and v in V", true, {}, {}, 0};
    auto fail = [&v](std::vector<std::string> witness, std::string detail) {
        v.pass = false;
        v.witness = std::move(witness);
        v.detail = std::move(detail);
    };
    for (std::size_t wi = 0; wi < c.morphism_count() && v.pass; ++wi) {
        const auto w = static_cast<MorId>(wi);
        if (!pms.rc.is_weq(w)) {
            continue;
        }
        ++v.checks;
        const auto& entry = pms.factorization[wi];
        if (!entry) {
            fail({c.name(w)}, "no factorization recorded for " + c.name(w));
            break;
        }
        const Factorization& fz = *entry;
        if (c.source(fz.u) != c.source(w) || c.target(fz.u) != fz.middle || c.source(fz.v) != fz.middle ||
            c.target(fz.v) != c.target(w)) {
            fail({c.name(w), c.name(fz.u), c.name(fz.v)}, "factorization of " + c.name(w) + " has wrong endpoints");
        } else if (c.compose(fz.u, fz.v) != w) {
            fail({c.name(w), c.name(fz.u), c.name(fz.v)},
                 c.name(fz.v) + " ∘ " + c.name(fz.u) + " is not " + c.name(w));
        } else if (!pms.is_u(fz.u)) {
            fail({c.name(w), c.name(fz.u)}, "first factor " + c.name(fz.u) + " of " + c.name(w) + " is not in U");
        } else if (!pms.is_v(fz.v)) {
            fail({c.name(w), c.name(fz.v)}, "second factor " + c.name(fz.v) + " of " + c.name(w) + " is not in V");
        }
    }
    if (!v.pass) {
        return v;
    }

    const auto squares = weq_squares(pms.rc);
    std::map<WeqSquare, MorId> middle;
    for (const WeqSquare& s : squares) {
        ++v.checks;
        auto it = pms.middle_maps.find(s);
        if (it == pms.middle_maps.end()) {
            fail({c.name(s.from), c.name(s.to), c.name(s.top), c.name(s.bottom)},
                 "no middle map for the square " + square_text(c, s));
            return v;
        }
        const MorId m = it->second;
        const Factorization& a = *pms.factorization[static_cast<std::size_t>(s.from)];
        const Factorization& b = *pms.factorization[static_cast<std::size_t>(s.to)];
        if (c.source(m) != a.middle || c.target(m) != b.middle) {
            fail({c.name(s.from), c.name(s.to), c.name(s.top), c.name(s.bottom), c.name(m)},
                 "middle map " + c.name(m) + " of " + square_text(c, s) + " has wrong endpoints");
            return v;
        }
        if (c.compose(a.u, m) != c.compose(s.top, b.u) || c.compose(m, b.v) != c.compose(a.v, s.bottom)) {
            fail({c.name(s.from), c.name(s.to), c.name(s.top), c.name(s.bottom), c.name(m)},
                 "middle map " + c.name(m) + " of " + square_text(c, s) + " does not commute with the factors");
            return v;
        }
        middle.emplace(s, m);
    }
    for (const auto& [s, m] : pms.middle_maps) {
        if (!middle.count(s)) {
            fail({}, "middle map recorded for something that is not a square of weak equivalences");
            return v;
        }
    }
    for (const WeqSquare& s : squares) {
        if (s.from == s.to && c.is_identity(s.top) && c.is_identity(s.bottom)) {
            ++v.checks;
            const MorId m = middle.at(s);
            if (!c.is_identity(m)) {
                fail({c.name(s.from), c.name(m)}, "identity square on " + c.name(s.from) + " has middle map " +
                                                      c.name(m));
                return v;
            }
        }
    }
    for (const WeqSquare& s1 : squares) {
        for (const WeqSquare& s2 : squares) {
            if (s1.to != s2.from) {
                continue;
            }
            ++v.checks;
            const WeqSquare s{s1.from, s2.to, c.compose(s1.top, s2.top), c.compose(s1.bottom, s2.bottom)};
            const MorId expected = c.compose(middle.at(s1), middle.at(s2));
            const MorId got = middle.at(s);
            if (expected != got) {
                fail({square_text(c, s1), square_text(c, s2)},
                     "middle map of the composite square " + square_text(c, s) + " is " + c.name(got) +
                         ", not the composite " + c.name(expected));
                return v;
            }
        }
    }
    return v;
}

}  // namespace

PartialModelStructure PartialModelStructure::with_trivial_factorization(RelCategory rc, std::vector<char> in_u,
                                                                        std::vector<char> in_v)
{
    PartialModelStructure pms{std::move(rc), std::move(in_u), std::move(in_v), {}, {}};
    const FinCategory& c = pms.cat();
    pms.factorization.assign(c.morphism_count(), std::nullopt);
    for (std::size_t w = 0; w < c.morphism_count(); ++w) {
        if (pms.rc.weq[w]) {
            const auto m = static_cast<MorId>(w);
            pms.factorization[w] = Factorization{m, c.target(m), c.identity(c.target(m))};
        }
    }
    for (const WeqSquare& s : weq_squares(pms.rc)) {
        pms.middle_maps.emplace(s, s.bottom);
    }
    return pms;
}

PartialModelStructure PartialModelStructure::trivial(RelCategory rc)
{
    std::vector<char> u = rc.weq;
    std::vector<char> v(rc.weq.size(), 0);
    for (std::size_t o = 0; o < rc.cat->object_count(); ++o) {
        v[static_cast<std::size_t>(rc.cat->identity(static_cast<ObjId>(o)))] = 1;
    }
    return with_trivial_factorization(std::move(rc), std::move(u), std::move(v));
}

std::vector<WeqSquare> weq_squares(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    std::vector<WeqSquare> out;
    for (std::size_t wi = 0; wi < c.morphism_count(); ++wi) {
        const auto w = static_cast<MorId>(wi);
        if (!rc.is_weq(w)) {
            continue;
        }
        for (MorId top : c.out(c.source(w))) {
            if (!rc.is_weq(top)) {
                continue;
            }
            for (MorId w2 : c.out(c.target(top))) {
                if (!rc.is_weq(w2)) {
                    continue;
                }
                const MorId diagonal = c.compose(top, w2);
                for (MorId bottom : c.hom(c.target(w), c.target(w2))) {
                    if (rc.is_weq(bottom) && c.compose(w, bottom) == diagonal) {
                        out.push_back({w, w2, top, bottom});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool AxiomReport::pass() const
{
    return structural.ok() && !verdicts.empty() &&
           std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.pass; });
}

const AxiomVerdict& AxiomReport::verdict(std::string_view axiom) const
{
    for (const auto& v : verdicts) {
        if (v.axiom == axiom) {
            return v;
        }
    }
    throw PreconditionError("no verdict for axiom " + std::string(axiom));
}

AxiomReport verify_partial_model(const PartialModelStructure& pms)
{
    AxiomReport report;
    if (!pms.rc.cat) {
        report.structural.add(IssueKind::Structural, "partial model structure without a category");
        return report;
    }
    const FinCategory& c = pms.cat();
    const std::size_t m = c.morphism_count();
    if (pms.rc.weq.size() != m || pms.in_u.size() != m || pms.in_v.size() != m || pms.factorization.size() != m) {
        report.structural.add(IssueKind::Structural, "marks or factorization table do not match the morphism list");
        return report;
    }
    auto valid_mor = [m](MorId f) { return f >= 0 && static_cast<std::size_t>(f) < m; };
    for (std::size_t w = 0; w < m; ++w) {
        const auto& fz = pms.factorization[w];
        if (fz && (!valid_mor(fz->u) || !valid_mor(fz->v) || fz->middle < 0 ||
                   static_cast<std::size_t>(fz->middle) >= c.object_count())) {
            report.structural.add(IssueKind::Structural,
                                  "factorization of " + c.name(static_cast<MorId>(w)) + " refers to unknown ids");
        }
        if (fz && !pms.rc.weq[w]) {
            report.structural.add(IssueKind::Structural,
                                  "factorization given for " + c.name(static_cast<MorId>(w)) +
                                      ", which is not a weak equivalence");
        }
    }
    for (const auto& [s, mid] : pms.middle_maps) {
        if (!valid_mor(s.from) || !valid_mor(s.to) || !valid_mor(s.top) || !valid_mor(s.bottom) || !valid_mor(mid)) {
            report.structural.add(IssueKind::Structural, "middle map entry refers to unknown morphisms");
        }
    }
    if (!report.structural.ok()) {
        return report;
    }

    AxiomVerdict a{"a", "W is a wide subcategory", true, {}, {}, 1};
    const auto rel = validate_relative(pms.rc);
    if (!rel.ok()) {
        a.pass = false;
        a.witness = rel.issues.front().witness;
        a.detail = rel.issues.front().message;
    }
    report.verdicts.push_back(a);

    AxiomVerdict b{"b", "two-out-of-six", true, {}, {}, 1};
    const auto six = check_two_of_six(pms.rc);
    if (!six.property.pass) {
        b.pass = false;
        for (MorId f : six.property.witness) {
            b.witness.push_back(c.name(f));
        }
        b.detail = six.property.detail;
    } else if (!six.pass()) {
        const PropertyReport& bad = six.two_of_three->pass ? *six.isomorphisms_in_weq : *six.two_of_three;
        b.pass = false;
        for (MorId f : bad.witness) {
            b.witness.push_back(c.name(f));
        }
        b.detail = bad.detail;
    } else {
        b.detail = "two-out-of-six holds; two-out-of-three holds; W contains every isomorphism";
    }
    report.verdicts.push_back(b);

    report.verdicts.push_back(check_pushout_closure(pms));
    report.verdicts.push_back(check_pullback_closure(pms));
    report.verdicts.push_back(check_factorization(pms));
    return report;
}

MorId factorization_middle_map(const PartialModelStructure& pms, const WeqSquare& square)
{
    const FinCategory& c = pms.cat();
    if (!is_square(pms.rc, square)) {
        throw PreconditionError("not a commutative square of weak equivalences");
    }
    auto it = pms.middle_maps.find(square);
    if (it == pms.middle_maps.end()) {
        throw CalculusViolation("no middle map recorded for " + square_text(c, square));
    }
    const auto& a = pms.factorization[static_cast<std::size_t>(square.from)];
    const auto& b = pms.factorization[static_cast<std::size_t>(square.to)];
    if (!a || !b) {
        throw CalculusViolation("missing factorization for " + square_text(c, square));
    }
    const MorId m = it->second;
    if (c.source(m) != a->middle || c.target(m) != b->middle || c.compose(a->u, m) != c.compose(square.top, b->u) ||
        c.compose(m, b->v) != c.compose(a->v, square.bottom)) {
        throw CalculusViolation("middle map of " + square_text(c, square) + " does not commute with the factors");
    }
    return m;
}

WeqRestrictionDiagnostic diagnose_weq_restriction(const PartialModelStructure& pms)
{
    const FinCategory& c = pms.cat();
    WeqRestrictionDiagnostic diag;
    RelCategory w = restrict_to_weq(pms.rc);
    const FinCategory& wc = *w.cat;
    auto map = [&](MorId f) -> MorId {
        auto found = wc.find_morphism(c.name(f));
        return found ? *found : kNoMorphism;
    };
    PartialModelStructure r{w, std::vector<char>(wc.morphism_count(), 0), std::vector<char>(wc.morphism_count(), 0),
                            std::vector<std::optional<Factorization>>(wc.morphism_count()), {}};
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto mf = static_cast<MorId>(f);
        if (!pms.rc.weq[f]) {
            if (pms.in_u[f] || pms.in_v[f]) {
                diag.problem = c.name(mf) + " lies in U or V but not in W";
                return diag;
            }
            continue;
        }
        const MorId g = map(mf);
        r.in_u[static_cast<std::size_t>(g)] = pms.in_u[f];
        r.in_v[static_cast<std::size_t>(g)] = pms.in_v[f];
        if (const auto& fz = pms.factorization[f]) {
            const MorId u = map(fz->u);
            const MorId v = map(fz->v);
            if (u == kNoMorphism || v == kNoMorphism) {
                diag.problem = "a factor of " + c.name(mf) + " is not a weak equivalence";
                return diag;
            }
            r.factorization[static_cast<std::size_t>(g)] = Factorization{u, fz->middle, v};
        }
    }
    for (const auto& [s, mid] : pms.middle_maps) {
        const MorId m = map(mid);
        if (m == kNoMorphism) {
            diag.problem = "middle map " + c.name(mid) + " is not a weak equivalence";
            return diag;
        }
        r.middle_maps.emplace(WeqSquare{map(s.from), map(s.to), map(s.top), map(s.bottom)}, m);
    }
    diag.report = verify_partial_model(r);
    diag.restricted = std::move(r);
    return diag;
}

}  // namespace pmcat
