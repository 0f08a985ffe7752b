#include "pmcat/commands.hpp"

#include "pmcat/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pmcat {

namespace {

struct Options
{
    std::string input;
    std::string format = "text";
    int k_max = 2;
    int n_max = 2;
    std::vector<int> ks{2, 3};
    int dims = 2;
    bool allow_large = false;
    std::string from;
    std::string to;
    bool commuting = false;
    bool diagnostic = false;
    int bound = 7;
    std::string export_format = "relcat";
};

/// Invalid input detected after parsing the command line.
class InputError : public std::runtime_error
{
public:
    InputError(std::string field, const std::string& message, int line = 0)
        : std::runtime_error(message), field(std::move(field)), line(line)
    {
    }
    std::string field;
    int line;
};

struct Input
{
    std::string bytes;
    LoadedDocument doc;
};

std::string read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Input load(std::string bytes)
{
    Input input{std::move(bytes), {}};
    try {
        input.doc = interpret(parse_document_text(input.bytes));
    } catch (const DocumentError& e) {
        throw InputError(e.field(), e.message(), e.line());
    }
    return input;
}

const PartialModelStructure& require_structure(const Input& in)
{
    if (!in.doc.pms) {
        throw InputError("u", "the document has no partial model structure (u, v or factorization statements)");
    }
    return *in.doc.pms;
}

ObjId require_object(const FinCategory& c, const std::string& name, const std::string& flag)
{
    const auto o = c.find_object(name);
    if (!o) {
        throw InputError(flag, "unknown object '" + name + "'");
    }
    return *o;
}

int exit_code_of(const std::string& status)
{
    if (status == "pass") {
        return kExitPass;
    }
    return status == "fail" ? kExitPropertyFailed : kExitInvalidInput;
}

struct Outcome
{
    Json options = Json::object();
    Json result = Json::object();
    std::vector<std::string> failures;
};

Outcome run_check(const Input& in)
{
    const RelCategory& rc = in.doc.rc;
    const FinCategory& c = *rc.cat;
    Outcome o;
    const ValidationReport relative = validate_relative(rc);
    o.result["relative_issues"] = to_json(relative);
    if (!relative.ok()) {
        o.failures.push_back("W is not a wide subcategory: " + relative.issues.front().message);
    }
    const TwoOfSixReport six = check_two_of_six(rc);
    o.result["two_of_six"] = to_json(c, six);
    if (!six.property.pass) {
        o.failures.push_back("two-out-of-six fails at " + tuple_name(c, six.property.witness));
    } else if (!six.pass()) {
        o.failures.push_back("two-out-of-six holds but a consequence fails");
    }
    if (in.doc.pms) {
        const AxiomReport axioms = verify_partial_model(*in.doc.pms);
        o.result["partial_model"] = to_json(axioms);
        for (const AxiomVerdict& v : axioms.verdicts) {
            if (!v.pass) {
                o.failures.push_back("axiom (" + v.axiom + ") fails: " + v.detail);
            }
        }
        if (!axioms.structural.ok()) {
            o.failures.push_back("structure is malformed: " + axioms.structural.issues.front().message);
        }
    } else {
        o.result["partial_model"] = nullptr;
    }
    return o;
}

Outcome run_nerve(const Input& in, const Options& opt)
{
    if (opt.k_max < 0 || opt.n_max < 1) {
        throw InputError("--kmax", "need kmax >= 0 and nmax >= 1");
    }
    const RelCategory& rc = in.doc.rc;
    Outcome o;
    o.options = {{"kmax", opt.k_max}, {"nmax", opt.n_max}};
    const TruncatedBisimplicialSet b = rezk_nerve(rc, opt.k_max, opt.n_max);
    Json counts = Json::array();
    for (const auto& column : b.columns) {
        counts.push_back(column.counts);
    }
    o.result["counts"] = std::move(counts);
    o.result["counts_layout"] = "counts[k][n] = number of (k, n)-simplices";
    const ValidationReport ids = check_bisimplicial_identities(b);
    o.result["identity_violations"] = ids.issues.size();
    if (!ids.ok()) {
        o.failures.push_back("bisimplicial identity fails: " + ids.issues.front().message);
    }
    const RelCategory w = restrict_to_weq(rc);
    const TruncatedSimplicialSet nw = nerve(*w.cat, opt.n_max);
    const bool level0 = nw.counts == b.columns[0].counts;
    o.result["level0_matches_weq_nerve"] = level0;
    if (!level0) {
        o.failures.push_back("level 0 differs from the nerve of W");
    }
    const TruncatedSimplicialSet diag = diagonal(b);
    o.result["diagonal_counts"] = diag.counts;
    return o;
}

Outcome run_segal(const Input& in, const Options& opt)
{
    const PartialModelStructure& pms = require_structure(in);
    Outcome o;
    o.options = {{"k", opt.ks}, {"dims", opt.dims}, {"allow_large", opt.allow_large}};
    const AxiomReport axioms = verify_partial_model(pms);
    o.result["axioms_pass"] = axioms.pass();
    if (!axioms.pass()) {
        o.failures.push_back("the structure does not satisfy the partial model axioms");
    }
    SegalReport report;
    try {
        report = verify_segal(pms, opt.ks, opt.dims, opt.allow_large);
    } catch (const PreconditionError& e) {
        throw InputError("--k", e.what());
    }
    o.result["segal"] = to_json(pms.cat(), report);
    for (const SegalLevel& l : report.levels) {
        if (!l.pass()) {
            o.failures.push_back("level k = " + std::to_string(l.k) + " fails" + (l.error.empty() ? "" : ": " + l.error));
        }
    }
    if (!report.saturation.pass()) {
        o.failures.push_back("saturation verdict: " + std::string(to_string(report.saturation.verdict)));
    }
    return o;
}

Outcome run_ho(const Input& in)
{
    const PartialModelStructure& pms = require_structure(in);
    Outcome o;
    const AxiomReport axioms = verify_partial_model(pms);
    o.result["axioms_pass"] = axioms.pass();
    if (!axioms.pass()) {
        o.result["homotopy_category"] = nullptr;
        o.failures.push_back("the structure does not satisfy the partial model axioms; Ho is not built");
        return o;
    }
    const HoCategory ho = homotopy_category(pms);
    o.result["homotopy_category"] = to_json(pms.cat(), ho);
    if (!ho.lawful()) {
        o.failures.push_back(ho.issues.front());
    }
    return o;
}

Outcome run_mapspace(const Input& in, const Options& opt)
{
    const RelCategory& rc = in.doc.rc;
    const FinCategory& c = *rc.cat;
    if (opt.n_max < 1) {
        throw InputError("--nmax", "need nmax >= 1");
    }
    const ObjId a = require_object(c, opt.from, "--from");
    const ObjId b = require_object(c, opt.to, "--to");
    const ZigzagConvention conv = opt.commuting ? ZigzagConvention::CommutingMaps : ZigzagConvention::WeakEquivalences;
    Outcome o;
    o.options = {{"from", opt.from}, {"to", opt.to}, {"nmax", opt.n_max}, {"convention", std::string(to_string(conv))}};
    const ZigzagCategory z = zigzag_category(rc, a, b, conv);
    Json zigzags = Json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
        zigzags.push_back(zigzag_name(c, z.zigzag(static_cast<ObjId>(i))));
    }
    o.result["zigzags"] = std::move(zigzags);
    o.result["zigzag_maps"] = z.cat().morphism_count();
    const TruncatedSimplicialSet s = nerve(z.cat(), opt.n_max);
    o.result["simplex_counts"] = s.counts;
    o.result["components"] = pi0(s).count;
    o.result["homology"] = to_json(homology(s, opt.n_max - 1));
    return o;
}

Outcome run_saturate(const Input& in, const Options& opt)
{
    Outcome o;
    o.options = {{"diagnostic", opt.diagnostic}};
    SaturationReport report;
    if (opt.diagnostic) {
        if (opt.bound < 2) {
            throw InputError("--bound", "the oracle needs a bound of at least 2");
        }
        o.options["bound"] = opt.bound;
        report = check_saturation_diagnostic(in.doc.rc, opt.bound);
    } else {
        const PartialModelStructure& pms = require_structure(in);
        const AxiomReport axioms = verify_partial_model(pms);
        o.result["axioms_pass"] = axioms.pass();
        if (!axioms.pass()) {
            o.result["saturation"] = nullptr;
            o.failures.push_back("the structure does not satisfy the partial model axioms; use --diagnostic");
            return o;
        }
        report = check_saturation(pms);
    }
    const FinCategory& c = *in.doc.rc.cat;
    o.result["saturation"] = to_json(c, report);
    if (!report.invertible_outside_weq.empty()) {
        o.failures.push_back("not saturated: " + tuple_name(c, report.invertible_outside_weq) +
                             " invertible but not in W");
    }
    if (!report.weq_not_invertible.empty()) {
        o.failures.push_back(tuple_name(c, report.weq_not_invertible) + " in W but not invertible");
    }
    if (report.verdict == Verdict::Inconclusive) {
        o.failures.push_back("inconclusive: " + report.detail);
    }
    return o;
}

Outcome run_yoneda(const Input& in, const Options& opt)
{
    if (opt.dims < 0) {
        throw InputError("--dims", "need dims >= 0");
    }
    Outcome o;
    o.options = {{"dims", opt.dims}, {"bound", opt.bound}};
    const PartialModelStructure* pms = in.doc.pms ? &*in.doc.pms : nullptr;
    const YonedaReport report = verify_yoneda_relative(in.doc.rc, opt.dims, pms, opt.bound);
    o.result["yoneda"] = to_json(*in.doc.rc.cat, report);
    for (const YonedaFailure& f : report.failures) {
        o.failures.push_back("y(" + in.doc.rc.cat->name(f.w) + ") at " + in.doc.rc.cat->object_name(f.object) + ": " +
                             f.detail);
    }
    for (const std::string& issue : report.presheaf_issues) {
        o.failures.push_back(issue);
    }
    if (!report.pi0_yoneda_pass()) {
        o.failures.push_back("pi0 of the presheaf differs from Ho");
    }
    return o;
}

Json assemble(const std::string& command, const Options& opt, const std::string& bytes, Outcome o)
{
    Json report = report_header(command, opt.input, bytes);
    report["options"] = std::move(o.options);
    report["result"] = std::move(o.result);
    report["failures"] = o.failures;
    const std::string status = o.failures.empty() ? "pass" : "fail";
    report["status"] = status;
    report["exit_code"] = exit_code_of(status);
    return report;
}

void emit(std::ostream& out, const Json& report, const std::string& format)
{
    if (format == "json") {
        out << report.dump(2) << '\n';
    } else {
        out << render_text(report);
    }
}

int run_export(const Input& in, const Options& opt, std::ostream& out)
{
    const PartialModelStructure* pms = in.doc.pms ? &*in.doc.pms : nullptr;
    const RelCatDocument doc = describe(in.doc.rc, pms);
    if (opt.export_format == "relcat") {
        out << serialize(doc);
        return kExitPass;
    }
    Json report = report_header("export", opt.input, in.bytes);
    report["options"] = {{"format", opt.export_format}};
    if (opt.export_format == "json") {
        report["document"] = to_json(doc);
    } else if (opt.export_format == "nerve") {
        if (opt.n_max < 1) {
            throw InputError("--nmax", "need nmax >= 1");
        }
        report["options"]["nmax"] = opt.n_max;
        report["nerve"] = to_json(nerve(*in.doc.rc.cat, opt.n_max));
    } else {
        if (opt.k_max < 0 || opt.n_max < 1) {
            throw InputError("--kmax", "need kmax >= 0 and nmax >= 1");
        }
        report["options"]["kmax"] = opt.k_max;
        report["options"]["nmax"] = opt.n_max;
        report["rezk_nerve"] = to_json(rezk_nerve(in.doc.rc, opt.k_max, opt.n_max));
    }
    out << report.dump(2) << '\n';
    return kExitPass;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Finite relative categories and partial model structures", "pmcat"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(toolkit_version()));

    auto input_and_format = [&opt](CLI::App* sub) {
        sub->add_option("input", opt.input, "relative category document (.relcat)")->required();
        sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}));
    };
    CLI::App* check = app.add_subcommand("check", "category laws, two-out-of-three/six and partial model axioms");
    input_and_format(check);
    CLI::App* nerve_cmd = app.add_subcommand("nerve", "classification nerve: counts and simplicial identities");
    input_and_format(nerve_cmd);
    nerve_cmd->add_option("--kmax", opt.k_max, "highest chain length k")->capture_default_str();
    nerve_cmd->add_option("--nmax", opt.n_max, "highest simplicial degree n")->capture_default_str();
    CLI::App* segal = app.add_subcommand("segal", "Segal identity, retraction certificate and nerve corroboration");
    input_and_format(segal);
    segal->add_option("--k", opt.ks, "chain lengths to certify")->capture_default_str();
    segal->add_option("--dims", opt.dims, "highest homology degree compared")->capture_default_str();
    segal->add_flag("--allow-large", opt.allow_large, "allow k above the default limit");
    CLI::App* ho = app.add_subcommand("ho", "homotopy category from 3-arrow zigzags");
    input_and_format(ho);
    CLI::App* mapspace = app.add_subcommand("mapspace", "nerve of the zigzag category between two objects");
    input_and_format(mapspace);
    mapspace->add_option("--from", opt.from, "source object")->required();
    mapspace->add_option("--to", opt.to, "target object")->required();
    mapspace->add_option("--nmax", opt.n_max, "highest simplicial degree")->capture_default_str();
    mapspace->add_flag("--commuting", opt.commuting, "allow any commuting maps between zigzags");
    CLI::App* saturate = app.add_subcommand("saturate", "W is exactly the maps inverted in the localization");
    input_and_format(saturate);
    saturate->add_flag("--diagnostic", opt.diagnostic, "decide with the bounded word oracle instead of Ho");
    saturate->add_option("--bound", opt.bound, "word-length bound of the oracle")->capture_default_str();
    CLI::App* yoneda = app.add_subcommand("yoneda", "levelwise checks of the relative Yoneda embedding");
    input_and_format(yoneda);
    yoneda->add_option("--dims", opt.dims, "highest homology degree checked")->capture_default_str();
    yoneda->add_option("--bound", opt.bound, "word-length bound of the oracle")->capture_default_str();
    CLI::App* exp = app.add_subcommand("export", "canonical document, JSON, nerve or classification nerve");
    exp->add_option("input", opt.input, "relative category document (.relcat)")->required();
    exp->add_option("--format", opt.export_format, "output format")
        ->check(CLI::IsMember({"relcat", "json", "nerve", "rezk"}))
        ->capture_default_str();
    exp->add_option("--kmax", opt.k_max, "highest chain length for rezk")->capture_default_str();
    exp->add_option("--nmax", opt.n_max, "highest simplicial degree for nerve and rezk")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForVersion&) {
        out << toolkit_version() << '\n';
        return kExitPass;
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitInvalidInput;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    std::string bytes;
    try {
        bytes = read_bytes(opt.input);
        Input in = load(bytes);
        if (command == "export") {
            return run_export(in, opt, out);
        }
        Outcome o;
        if (command == "check") {
            o = run_check(in);
        } else if (command == "nerve") {
            o = run_nerve(in, opt);
        } else if (command == "segal") {
            o = run_segal(in, opt);
        } else if (command == "ho") {
            o = run_ho(in);
        } else if (command == "mapspace") {
            o = run_mapspace(in, opt);
        } else if (command == "saturate") {
            o = run_saturate(in, opt);
        } else {
            o = run_yoneda(in, opt);
        }
        const Json report = assemble(command, opt, bytes, std::move(o));
        emit(out, report, opt.format);
        return report["exit_code"].get<int>();
    } catch (const InputError& e) {
        err << opt.input << ": " << (e.line > 0 ? "line " + std::to_string(e.line) + ", " : "") << "'" << e.field
            << "': " << e.what() << '\n';
        if (command != "export") {
            Json report = report_header(command, opt.input, bytes);
            report["error"] = {{"line", e.line}, {"field", e.field}, {"message", e.what()}};
            report["status"] = "invalid";
            report["exit_code"] = kExitInvalidInput;
            emit(out, report, opt.format);
        }
        return kExitInvalidInput;
    } catch (const CalculusViolation& e) {
        err << opt.input << ": " << e.what() << '\n';
        Json report = report_header(command, opt.input, bytes);
        report["failures"] = {std::string(e.what())};
        report["status"] = "fail";
        report["exit_code"] = kExitPropertyFailed;
        if (command != "export") {
            emit(out, report, opt.format);
        }
        return kExitPropertyFailed;
    }
}

}  // namespace pmcat
