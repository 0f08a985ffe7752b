#include "pmcat/report.hpp"

#include <filesystem>

namespace pmcat {

namespace {

Json names(const FinCategory& cat, const std::vector<MorId>& morphisms)
{
    Json out = Json::array();
    for (MorId f : morphisms) {
        out.push_back(cat.name(f));
    }
    return out;
}

Json optional_bool(const std::optional<bool>& b)
{
    return b ? Json(*b) : Json(nullptr);
}

Json optional_size(const std::optional<std::size_t>& n)
{
    return n ? Json(*n) : Json(nullptr);
}

void render(const Json& value, int indent, std::string& out);

bool is_scalar(const Json& v)
{
    return !v.is_object() && !v.is_array();
}

std::string scalar_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "n/a";
    }
    return v.dump();
}

bool flat_array(const Json& v)
{
    if (!v.is_array()) {
        return false;
    }
    for (const Json& x : v) {
        if (!is_scalar(x) && !(x.is_array() && flat_array(x) && x.size() <= 8)) {
            return false;
        }
    }
    return true;
}

std::string inline_text(const Json& v)
{
    if (is_scalar(v)) {
        return scalar_text(v);
    }
    std::string out = "[";
    bool first = true;
    for (const Json& x : v) {
        out += (first ? "" : ", ") + inline_text(x);
        first = false;
    }
    return out + "]";
}

void render_entry(const std::string& prefix, const Json& v, int indent, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(v) || v.empty() || (flat_array(v) && inline_text(v).size() <= 72)) {
        std::string line = pad + prefix + (v.is_object() ? "{}" : inline_text(v));
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + "\n";
        return;
    }
    out += pad + prefix.substr(0, prefix.size() - 1) + "\n";
    render(v, indent + 2, out);
}

void render(const Json& value, int indent, std::string& out)
{
    if (value.is_object()) {
        for (const auto& [key, v] : value.items()) {
            render_entry(key + ": ", v, indent, out);
        }
    } else if (value.is_array()) {
        for (const Json& v : value) {
            if (v.is_object() && !v.empty()) {
                std::string sub;
                render(v, indent + 2, sub);
                sub[static_cast<std::size_t>(indent)] = '-';
                out += sub;
            } else {
                render_entry("- ", v, indent, out);
            }
        }
    } else {
        out += std::string(static_cast<std::size_t>(indent), ' ') + scalar_text(value) + "\n";
    }
}

}  // namespace

Json report_header(std::string_view command, const std::string& input_path, std::string_view input_bytes)
{
    Json h;
    h["format_version"] = kReportFormatVersion;
    h["toolkit"] = {{"name", "pmcat"}, {"version", std::string(toolkit_version())}};
    h["command"] = std::string(command);
    h["input"] = {{"file", std::filesystem::path(input_path).filename().string()},
                  {"fnv1a64", hex64(fnv1a64(input_bytes))}};
    return h;
}

Json to_json(const AbelianGroup& g)
{
    return g.to_string();
}

Json to_json(const std::vector<AbelianGroup>& groups)
{
    Json out = Json::array();
    for (const AbelianGroup& g : groups) {
        out.push_back(to_json(g));
    }
    return out;
}

Json to_json(const NerveInvariants& n)
{
    return {{"components", n.components},
            {"homology", to_json(n.homology)},
            {"thin", n.thin},
            {"objects", n.objects},
            {"reduced_objects", n.reduced_objects}};
}

Json to_json(const FinCategory& cat, const PropertyReport& p)
{
    return {{"pass", p.pass}, {"witness", names(cat, p.witness)}, {"detail", p.detail}};
}

Json to_json(const FinCategory& cat, const TwoOfSixReport& r)
{
    Json out;
    out["pass"] = r.pass();
    out["two_of_six"] = to_json(cat, r.property);
    out["two_of_three"] = r.two_of_three ? to_json(cat, *r.two_of_three) : Json(nullptr);
    out["isomorphisms_in_weq"] = r.isomorphisms_in_weq ? to_json(cat, *r.isomorphisms_in_weq) : Json(nullptr);
    return out;
}

Json to_json(const ValidationReport& r)
{
    Json out = Json::array();
    for (const Issue& i : r.issues) {
        out.push_back({{"kind", std::string(to_string(i.kind))}, {"message", i.message}, {"witness", i.witness}});
    }
    return out;
}

Json to_json(const AxiomReport& r)
{
    Json out;
    out["pass"] = r.pass();
    out["structural"] = to_json(r.structural);
    Json axioms = Json::array();
    for (const AxiomVerdict& v : r.verdicts) {
        axioms.push_back({{"axiom", v.axiom},
                          {"title", v.title},
                          {"pass", v.pass},
                          {"checks", v.checks},
                          {"witness", v.witness},
                          {"detail", v.detail}});
    }
    out["axioms"] = std::move(axioms);
    return out;
}

Json to_json(const FinCategory& cat, const SaturationReport& r)
{
    Json out;
    out["mode"] = r.mode;
    out["verdict"] = std::string(to_string(r.verdict));
    if (r.mode == "bounded-oracle") {
        out["bound"] = r.bound;
        out["stable"] = r.stable;
    } else {
        out["convention"] = std::string(to_string(r.convention));
    }
    out["invertible_outside_weq"] = names(cat, r.invertible_outside_weq);
    out["weq_not_invertible"] = names(cat, r.weq_not_invertible);
    out["detail"] = r.detail;
    return out;
}

Json to_json(const FinCategory& cat, const SegalReport& r)
{
    Json out;
    out["pass"] = r.pass();
    out["dims"] = r.dims;
    Json levels = Json::array();
    for (const SegalLevel& l : r.levels) {
        Json level;
        level["k"] = l.k;
        level["pass"] = l.pass();
        level["strict_pullback"] = l.strict_pullback;
        level["strict_detail"] = l.strict_detail;
        level["certificate_valid"] = optional_bool(l.certificate_valid);
        Json checks = Json::array();
        for (const CertificateCheck& c : l.certificate_checks) {
            checks.push_back({{"name", c.name}, {"checked", c.checked}, {"failed", c.failed},
                              {"first_failure", c.first_failure}});
        }
        level["certificate_checks"] = std::move(checks);
        level["image_nerve"] = l.image_nerve ? to_json(*l.image_nerve) : Json(nullptr);
        level["zigzag_nerve"] = l.zigzag_nerve ? to_json(*l.zigzag_nerve) : Json(nullptr);
        level["corroborated"] = optional_bool(l.corroborated);
        level["error"] = l.error;
        levels.push_back(std::move(level));
    }
    out["levels"] = std::move(levels);
    out["saturation"] = to_json(cat, r.saturation);
    out["boundary"] = r.boundary;
    return out;
}

Json to_json(const FinCategory& cat, const HoCategory& ho)
{
    Json out;
    out["lawful"] = ho.lawful();
    out["convention"] = std::string(to_string(ho.convention));
    out["objects"] = cat.objects();
    const auto n = static_cast<ObjId>(ho.objects);
    Json sizes = Json::array();
    Json homs = Json::array();
    for (ObjId a = 0; a < n; ++a) {
        Json row = Json::array();
        for (ObjId b = 0; b < n; ++b) {
            row.push_back(ho.hom_size(a, b));
            Json reps = Json::array();
            for (const Zigzag& z : ho.representatives[ho.index(a, b)]) {
                reps.push_back(zigzag_name(cat, z));
            }
            Json hom{{"from", cat.object_name(a)}, {"to", cat.object_name(b)}, {"classes", std::move(reps)}};
            if (a == b) {
                hom["identity"] = ho.identities[static_cast<std::size_t>(a)];
            }
            Json isos = Json::array();
            for (std::size_t i = 0; i < ho.hom_size(a, b); ++i) {
                isos.push_back(ho.is_isomorphism(a, b, static_cast<std::int32_t>(i)));
            }
            hom["isomorphism"] = std::move(isos);
            homs.push_back(std::move(hom));
        }
        sizes.push_back(std::move(row));
    }
    out["hom_sizes"] = std::move(sizes);
    out["homs"] = std::move(homs);
    Json composition = Json::array();
    for (ObjId a = 0; a < n; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            for (ObjId c = 0; c < n; ++c) {
                const std::size_t p = ho.hom_size(a, b);
                const std::size_t q = ho.hom_size(b, c);
                if (p == 0 || q == 0) {
                    continue;
                }
                Json table = Json::array();
                for (std::size_t i = 0; i < p; ++i) {
                    Json row = Json::array();
                    for (std::size_t j = 0; j < q; ++j) {
                        row.push_back(ho.compose(a, b, c, static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)));
                    }
                    table.push_back(std::move(row));
                }
                composition.push_back({{"objects", {cat.object_name(a), cat.object_name(b), cat.object_name(c)}},
                                       {"table", std::move(table)}});
            }
        }
    }
    out["composition"] = std::move(composition);
    out["issues"] = ho.issues;
    return out;
}

Json to_json(const FinCategory& cat, const YonedaReport& r)
{
    Json out;
    out["pass"] = r.pass();
    out["dims"] = r.dims;
    out["convention"] = std::string(to_string(r.convention));
    out["model"] = r.model;
    out["gap"] = r.gap;
    out["weak_equivalences_pass"] = r.weak_equivalences_pass();
    out["maps_checked"] = r.maps_checked;
    Json failures = Json::array();
    for (const YonedaFailure& f : r.failures) {
        failures.push_back({{"weq", cat.name(f.w)}, {"object", cat.object_name(f.object)}, {"degree", f.degree},
                            {"detail", f.detail}});
    }
    out["failures"] = std::move(failures);
    out["presheaf_issues"] = r.presheaf_issues;
    out["ho_available"] = r.ho_available;
    out["pi0_yoneda_pass"] = r.pi0_yoneda_pass();
    Json pi0 = Json::array();
    for (const Pi0Comparison& p : r.pi0) {
        pi0.push_back({{"from", cat.object_name(p.a)}, {"to", cat.object_name(p.b)}, {"presheaf", p.presheaf},
                       {"ho", optional_size(p.ho)}, {"oracle", optional_size(p.oracle)}});
    }
    out["pi0"] = std::move(pi0);
    return out;
}

Json to_json(const TruncatedSimplicialSet& s)
{
    Json out;
    out["n_max"] = s.n_max;
    out["counts"] = s.counts;
    Json labels = Json::array();
    for (int n = 0; n <= s.n_max; ++n) {
        Json level = Json::array();
        for (std::size_t x = 0; x < s.count(n); ++x) {
            const auto l = s.label(n, static_cast<SimplexId>(x));
            level.push_back(std::vector<std::int32_t>(l.begin(), l.end()));
        }
        labels.push_back(std::move(level));
    }
    out["labels"] = std::move(labels);
    out["faces"] = s.faces;
    out["degeneracies"] = s.degeneracies;
    return out;
}

Json to_json(const TruncatedBisimplicialSet& b)
{
    Json out;
    out["k_max"] = b.k_max;
    out["n_max"] = b.n_max;
    Json counts = Json::array();
    for (const TruncatedSimplicialSet& c : b.columns) {
        counts.push_back(c.counts);
    }
    out["counts"] = std::move(counts);
    Json columns = Json::array();
    for (std::size_t k = 0; k < b.columns.size(); ++k) {
        const TruncatedSimplicialSet& c = b.columns[k];
        Json column;
        column["counts"] = c.counts;
        Json grids = Json::array();
        for (int n = 0; n <= c.n_max; ++n) {
            Json level = Json::array();
            for (std::size_t x = 0; x < c.count(n); ++x) {
                level.push_back(grid(b, static_cast<int>(k), n, static_cast<SimplexId>(x)));
            }
            grids.push_back(std::move(level));
        }
        column["grids"] = std::move(grids);
        column["faces"] = c.faces;
        column["degeneracies"] = c.degeneracies;
        columns.push_back(std::move(column));
    }
    out["columns"] = std::move(columns);
    out["hfaces"] = b.hfaces;
    out["hdegeneracies"] = b.hdegeneracies;
    return out;
}

Json to_json(const RelCatDocument& doc)
{
    using Kind = Statement::Kind;
    Json out;
    out["format"] = "relcat";
    out["version"] = 1;
    Json objects = Json::array();
    Json morphisms = Json::array();
    Json composites = Json::array();
    Json weq = Json::array();
    Json u = Json::array();
    Json v = Json::array();
    Json factors = Json::array();
    Json middles = Json::array();
    bool structure = false;
    bool trivial = false;
    for (const Statement& s : doc.statements) {
        const auto& a = s.args;
        switch (s.kind) {
        case Kind::Object:
            for (const auto& o : a) {
                objects.push_back(o);
            }
            break;
        case Kind::Morphism: morphisms.push_back({{"name", a[0]}, {"source", a[1]}, {"target", a[2]}}); break;
        case Kind::Compose: composites.push_back({{"first", a[0]}, {"second", a[1]}, {"result", a[2]}}); break;
        case Kind::Weq:
            for (const auto& f : a) {
                weq.push_back(f);
            }
            break;
        case Kind::U:
        case Kind::V:
            structure = true;
            for (const auto& f : a) {
                (s.kind == Kind::U ? u : v).push_back(f);
            }
            break;
        case Kind::FactorizationTrivial: structure = trivial = true; break;
        case Kind::Factor:
            structure = true;
            factors.push_back({{"w", a[0]}, {"u", a[1]}, {"middle", a[2]}, {"v", a[3]}});
            break;
        case Kind::Middle:
            structure = true;
            middles.push_back({{"from", a[0]}, {"to", a[1]}, {"top", a[2]}, {"bottom", a[3]}, {"map", a[4]}});
            break;
        default: break;
        }
    }
    out["objects"] = std::move(objects);
    out["morphisms"] = std::move(morphisms);
    out["composites"] = std::move(composites);
    out["weq"] = std::move(weq);
    if (structure) {
        out["u"] = std::move(u);
        out["v"] = std::move(v);
        out["factorization"] = trivial ? Json("trivial") : Json(std::move(factors));
        if (!trivial || !middles.empty()) {
            out["middle_maps"] = std::move(middles);
        }
    }
    return out;
}

std::string render_text(const Json& report)
{
    std::string out;
    render(report, 0, out);
    return out;
}

}  // namespace pmcat
