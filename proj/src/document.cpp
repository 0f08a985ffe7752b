#include "pmcat/document.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace pmcat {

namespace {

using Kind = Statement::Kind;

std::vector<std::string> split_words(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.emplace_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

void expect(bool ok, int line, const std::string& field, const std::string& message)
{
    if (!ok) {
        throw DocumentError(line, field, message);
    }
}

Statement parse_line(std::string_view raw, int line)
{
    Statement s;
    s.line = line;
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        s.kind = Kind::Blank;
        return s;
    }
    if (raw[first] == '#') {
        expect(first == 0, line, "comment", "comments must start in the first column");
        s.kind = Kind::Comment;
        s.text = std::string(raw.substr(1));
        return s;
    }
    std::vector<std::string> w = split_words(raw);
    for (const std::string& word : w) {
        expect(word.find('#') == std::string::npos, line, word, "'#' is only allowed at the start of a line");
    }
    const std::string keyword = w.front();
    std::vector<std::string> args(w.begin() + 1, w.end());
    if (keyword == "relcat") {
        expect(args.size() == 1, line, "relcat", "expected 'relcat <version>'");
        expect(args[0] == "1", line, args[0], "unsupported format version '" + args[0] + "'");
        s.kind = Kind::Header;
    } else if (keyword == "object") {
        expect(!args.empty(), line, "object", "expected at least one object name");
        s.kind = Kind::Object;
    } else if (keyword == "morphism") {
        expect(args.size() == 5 && args[1] == ":" && args[3] == "->", line, "morphism",
               "expected 'morphism <name> : <source> -> <target>'");
        args = {args[0], args[2], args[4]};
        s.kind = Kind::Morphism;
    } else if (keyword == "compose") {
        expect(args.size() == 4 && args[2] == "=", line, "compose", "expected 'compose <first> <second> = <result>'");
        args = {args[0], args[1], args[3]};
        s.kind = Kind::Compose;
    } else if (keyword == "weq") {
        s.kind = Kind::Weq;
    } else if (keyword == "u") {
        s.kind = Kind::U;
    } else if (keyword == "v") {
        s.kind = Kind::V;
    } else if (keyword == "factorization") {
        expect(args.size() == 1 && args[0] == "trivial", line, "factorization", "expected 'factorization trivial'");
        args.clear();
        s.kind = Kind::FactorizationTrivial;
    } else if (keyword == "factor") {
        expect(args.size() == 4, line, "factor", "expected 'factor <w> <u> <middle> <v>'");
        s.kind = Kind::Factor;
    } else if (keyword == "middle") {
        expect(args.size() == 6 && args[4] == "=", line, "middle",
               "expected 'middle <from> <to> <top> <bottom> = <map>'");
        args = {args[0], args[1], args[2], args[3], args[5]};
        s.kind = Kind::Middle;
    } else {
        throw DocumentError(line, keyword, "unknown statement '" + keyword + "'");
    }
    s.args = std::move(args);
    return s;
}

std::string join(const std::vector<std::string>& words)
{
    std::string out;
    for (const auto& w : words) {
        out += ' ';
        out += w;
    }
    return out;
}

struct Locations
{
    std::map<std::string, int> objects;
    std::map<std::string, int> morphisms;
    std::map<std::pair<std::string, std::string>, int> composites;
    int header = 1;

    [[nodiscard]] std::pair<int, std::string> locate(const Issue& issue) const
    {
        const auto& w = issue.witness;
        if (w.size() >= 2) {
            auto c = composites.find({w[0], w[1]});
            if (c != composites.end()) {
                return {c->second, w[0]};
            }
        }
        for (const std::string& name : w) {
            if (auto m = morphisms.find(name); m != morphisms.end()) {
                return {m->second, name};
            }
            if (auto o = objects.find(name); o != objects.end()) {
                return {o->second, name};
            }
        }
        for (const std::string& name : w) {
            if (name.rfind("id:", 0) == 0) {
                if (auto o = objects.find(name.substr(3)); o != objects.end()) {
                    return {o->second, name};
                }
            }
        }
        return {header, w.empty() ? std::string("document") : w.front()};
    }
};

[[noreturn]] void fail_on(const ValidationReport& report, const Locations& where)
{
    const Issue& issue = report.issues.front();
    const auto [line, field] = where.locate(issue);
    std::string message = std::string(to_string(issue.kind)) + ": " + issue.message;
    if (report.issues.size() > 1) {
        message += " (" + std::to_string(report.issues.size() - 1) + " further issues)";
    }
    throw DocumentError(line, field, message);
}

}  // namespace

DocumentError::DocumentError(int line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", '" + field + "': " + message),
      line_(line),
      field_(std::move(field)),
      message_(message)
{
}

RelCatDocument parse_document_text(std::string_view text)
{
    RelCatDocument doc;
    int line = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        doc.statements.push_back(parse_line(raw, ++line));
        pos = end + 1;
    }
    bool header = false;
    for (const Statement& s : doc.statements) {
        if (s.kind == Kind::Comment || s.kind == Kind::Blank) {
            continue;
        }
        expect(s.kind == Kind::Header, s.line, "relcat", "the first statement must be 'relcat 1'");
        header = true;
        break;
    }
    expect(header, line == 0 ? 1 : line, "relcat", "missing 'relcat 1' header");
    for (std::size_t i = 0; i < doc.statements.size(); ++i) {
        const Statement& s = doc.statements[i];
        if (s.kind == Kind::Header) {
            for (std::size_t j = i + 1; j < doc.statements.size(); ++j) {
                expect(doc.statements[j].kind != Kind::Header, doc.statements[j].line, "relcat", "repeated header");
            }
            break;
        }
    }
    return doc;
}

RelCatDocument read_document(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DocumentError(0, path, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document_text(buffer.str());
}

std::string serialize(const RelCatDocument& doc)
{
    std::string out;
    for (const Statement& s : doc.statements) {
        const auto& a = s.args;
        switch (s.kind) {
        case Kind::Header: out += "relcat 1"; break;
        case Kind::Object: out += "object" + join(a); break;
        case Kind::Morphism: out += "morphism " + a[0] + " : " + a[1] + " -> " + a[2]; break;
        case Kind::Compose: out += "compose " + a[0] + " " + a[1] + " = " + a[2]; break;
        case Kind::Weq: out += "weq" + join(a); break;
        case Kind::U: out += "u" + join(a); break;
        case Kind::V: out += "v" + join(a); break;
        case Kind::FactorizationTrivial: out += "factorization trivial"; break;
        case Kind::Factor: out += "factor" + join(a); break;
        case Kind::Middle: out += "middle " + a[0] + " " + a[1] + " " + a[2] + " " + a[3] + " = " + a[4]; break;
        case Kind::Comment: out += "#" + s.text; break;
        case Kind::Blank: break;
        }
        out += '\n';
    }
    return out;
}

LoadedDocument interpret(const RelCatDocument& doc)
{
    CategoryDescription d;
    Locations where;
    bool structure = false;
    for (const Statement& s : doc.statements) {
        switch (s.kind) {
        case Kind::Header: where.header = s.line; break;
        case Kind::Object:
            for (const auto& name : s.args) {
                d.objects.push_back(name);
                where.objects.emplace(name, s.line);
            }
            break;
        case Kind::Morphism:
            d.morphisms.push_back({s.args[0], s.args[1], s.args[2]});
            where.morphisms.emplace(s.args[0], s.line);
            break;
        case Kind::Compose:
            d.composites.push_back({s.args[0], s.args[1], s.args[2]});
            where.composites.emplace(std::make_pair(s.args[0], s.args[1]), s.line);
            break;
        case Kind::U:
        case Kind::V:
        case Kind::FactorizationTrivial:
        case Kind::Factor:
        case Kind::Middle: structure = true; break;
        default: break;
        }
    }
    const ValidationReport laws = validate_category(d);
    if (!laws.ok()) {
        fail_on(laws, where);
    }
    const CategoryPtr cat = share(FinCategory::from_description(d));
    const FinCategory& c = *cat;

    auto morphism = [&c](const Statement& s, const std::string& name) {
        const auto f = c.find_morphism(name);
        expect(f.has_value(), s.line, name, "unknown morphism '" + name + "'");
        return *f;
    };
    auto marks = [&](Kind kind) {
        std::vector<char> out(c.morphism_count(), 0);
        for (std::size_t o = 0; o < c.object_count(); ++o) {
            out[static_cast<std::size_t>(c.identity(static_cast<ObjId>(o)))] = 1;
        }
        for (const Statement& s : doc.statements) {
            if (s.kind == kind) {
                for (const auto& name : s.args) {
                    out[static_cast<std::size_t>(morphism(s, name))] = 1;
                }
            }
        }
        return out;
    };

    LoadedDocument loaded{RelCategory{cat, marks(Kind::Weq)}, std::nullopt};
    if (!structure) {
        return loaded;
    }

    bool trivial = false;
    for (const Statement& s : doc.statements) {
        trivial = trivial || s.kind == Kind::FactorizationTrivial;
    }
    PartialModelStructure pms = PartialModelStructure::with_trivial_factorization(loaded.rc, marks(Kind::U), marks(Kind::V));
    if (!trivial) {
        pms.factorization.assign(c.morphism_count(), std::nullopt);
        pms.middle_maps.clear();
    }
    for (const Statement& s : doc.statements) {
        if (s.kind == Kind::Factor) {
            const MorId w = morphism(s, s.args[0]);
            const MorId u = morphism(s, s.args[1]);
            const auto mid = c.find_object(s.args[2]);
            expect(mid.has_value(), s.line, s.args[2], "unknown object '" + s.args[2] + "'");
            const MorId v = morphism(s, s.args[3]);
            expect(c.source(u) == c.source(w) && c.target(u) == *mid, s.line, s.args[1],
                   "'" + s.args[1] + "' does not run from the source of '" + s.args[0] + "' to '" + s.args[2] + "'");
            expect(c.source(v) == *mid && c.target(v) == c.target(w), s.line, s.args[3],
                   "'" + s.args[3] + "' does not run from '" + s.args[2] + "' to the target of '" + s.args[0] + "'");
            expect(c.compose(u, v) == w, s.line, s.args[0],
                   "'" + s.args[3] + " after " + s.args[1] + "' is not '" + s.args[0] + "'");
            pms.factorization[static_cast<std::size_t>(w)] = Factorization{u, *mid, v};
        } else if (s.kind == Kind::Middle) {
            const WeqSquare sq{morphism(s, s.args[0]), morphism(s, s.args[1]), morphism(s, s.args[2]),
                               morphism(s, s.args[3])};
            const MorId m = morphism(s, s.args[4]);
            pms.middle_maps[sq] = m;
        }
    }
    loaded.pms = std::move(pms);
    return loaded;
}

RelCatDocument describe(const RelCategory& rc, const PartialModelStructure* pms)
{
    const FinCategory& c = *rc.cat;
    RelCatDocument doc;
    auto add = [&doc](Kind kind, std::vector<std::string> args) {
        Statement s;
        s.kind = kind;
        s.args = std::move(args);
        s.line = static_cast<int>(doc.statements.size()) + 1;
        doc.statements.push_back(std::move(s));
    };
    auto marked = [&c](const std::vector<char>& marks) {
        std::vector<std::string> out;
        for (std::size_t f = 0; f < c.morphism_count(); ++f) {
            if (marks[f] && !c.is_identity(static_cast<MorId>(f))) {
                out.push_back(c.name(static_cast<MorId>(f)));
            }
        }
        return out;
    };

    add(Kind::Header, {});
    add(Kind::Object, c.objects());
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto m = static_cast<MorId>(f);
        if (!c.is_identity(m)) {
            add(Kind::Morphism, {c.name(m), c.object_name(c.source(m)), c.object_name(c.target(m))});
        }
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto m = static_cast<MorId>(f);
        if (c.is_identity(m)) {
            continue;
        }
        for (MorId g : c.out(c.target(m))) {
            if (!c.is_identity(g)) {
                add(Kind::Compose, {c.name(m), c.name(g), c.name(c.compose(m, g))});
            }
        }
    }
    if (const auto w = marked(rc.weq); !w.empty()) {
        add(Kind::Weq, w);
    }
    if (pms == nullptr) {
        return doc;
    }
    add(Kind::U, marked(pms->in_u));
    add(Kind::V, marked(pms->in_v));
    const PartialModelStructure trivial = PartialModelStructure::with_trivial_factorization(pms->rc, pms->in_u, pms->in_v);
    bool is_trivial = trivial.middle_maps == pms->middle_maps;
    for (std::size_t f = 0; f < c.morphism_count() && is_trivial; ++f) {
        const auto& a = trivial.factorization[f];
        const auto& b = pms->factorization[f];
        is_trivial = a.has_value() == b.has_value() &&
                     (!a || (a->u == b->u && a->middle == b->middle && a->v == b->v));
    }
    if (is_trivial) {
        add(Kind::FactorizationTrivial, {});
        return doc;
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (const auto& fac = pms->factorization[f]) {
            add(Kind::Factor, {c.name(static_cast<MorId>(f)), c.name(fac->u), c.object_name(fac->middle), c.name(fac->v)});
        }
    }
    for (const auto& [sq, m] : pms->middle_maps) {
        add(Kind::Middle, {c.name(sq.from), c.name(sq.to), c.name(sq.top), c.name(sq.bottom), c.name(m)});
    }
    return doc;
}

}  // namespace pmcat
