#include "pmcat/localization.hpp"

#include <algorithm>
#include <map>

namespace pmcat {

namespace {

ObjId letter_target(const FinCategory& c, const Letter& l)
{
    return l.backward ? c.source(l.morphism) : c.target(l.morphism);
}

/// Two-letter segments that may replace each other inside a word (the second may be empty).
struct Move
{
    ObjId from = kNoObject;
    ObjId to = kNoObject;
    std::vector<Letter> before;
    std::vector<Letter> after;
};

std::vector<Move> moves(const RelCategory& rc)
{
    const FinCategory& c = *rc.cat;
    std::vector<Move> out;
    for (MorId w : rc.weq_morphisms()) {
        if (c.is_identity(w)) {
            continue;
        }
        out.push_back({c.source(w), c.source(w), {{w, false}, {w, true}}, {}});
        out.push_back({c.target(w), c.target(w), {{w, true}, {w, false}}, {}});
    }
    // q ∘ m = m' ∘ p with p: X → X', q: Y → Y' in W: p⁻¹ then m equals m' then q⁻¹.
    for (MorId p : rc.weq_morphisms()) {
        for (MorId m : c.out(c.source(p))) {
            for (MorId q : c.out(c.target(m))) {
                if (!rc.is_weq(q)) {
                    continue;
                }
                for (MorId m2 : c.hom(c.target(p), c.target(q))) {
                    if (c.compose(m, q) == c.compose(p, m2)) {
                        out.push_back({c.target(p), c.target(m), {{p, true}, {m, false}}, {{m2, false}, {q, true}}});
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

ObjId word_target(const FinCategory& cat, const Word& word)
{
    return word.letters.empty() ? word.source : letter_target(cat, word.letters.back());
}

Word normalize(const FinCategory& c, const Word& word)
{
    Word out{word.source, {}};
    for (const Letter& l : word.letters) {
        if (c.is_identity(l.morphism)) {
            continue;
        }
        if (!out.letters.empty() && out.letters.back().backward == l.backward) {
            Letter& top = out.letters.back();
            top.morphism = l.backward ? c.compose(l.morphism, top.morphism) : c.compose(top.morphism, l.morphism);
            if (c.is_identity(top.morphism)) {
                out.letters.pop_back();
            }
            continue;
        }
        out.letters.push_back(l);
    }
    return out;
}

Word concatenate(const Word& first, const Word& second)
{
    Word out = first;
    out.letters.insert(out.letters.end(), second.letters.begin(), second.letters.end());
    return out;
}

std::string word_name(const FinCategory& c, const Word& word)
{
    if (word.letters.empty()) {
        return identity_name(c.object_name(word.source));
    }
    std::string s;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        s += (i > 0 ? " " : "") + c.name(word.letters[i].morphism) + (word.letters[i].backward ? "^-1" : "");
    }
    return s;
}

std::size_t LocalizationOracle::Hash::operator()(const std::vector<std::int32_t>& key) const noexcept
{
    return TupleHash{}(key);
}

std::vector<std::int32_t> LocalizationOracle::key_of(const Word& word)
{
    std::vector<std::int32_t> key{word.source};
    for (const Letter& l : word.letters) {
        key.push_back(l.morphism * 2 + (l.backward ? 1 : 0));
    }
    return key;
}

std::int32_t LocalizationOracle::find(std::int32_t x) const
{
    while (parent_[static_cast<std::size_t>(x)] != x) {
        parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
}

LocalizationOracle::LocalizationOracle(const RelCategory& rc, int bound) : rc_(&rc), bound_(bound)
{
    if (bound < 0) {
        throw PreconditionError("word length bound must be non-negative");
    }
    const FinCategory& c = *rc.cat;
    const auto n = static_cast<ObjId>(c.object_count());

    // Alternating words without identities are exactly the normal forms.
    std::vector<std::vector<std::int32_t>> ending_at(c.object_count());
    std::vector<std::vector<std::int32_t>> starting_at(c.object_count());
    Word current;
    auto add = [&]() {
        const auto id = static_cast<std::int32_t>(words_.size());
        index_.emplace(key_of(current), id);
        words_.push_back(current);
        starting_at[static_cast<std::size_t>(current.source)].push_back(id);
        ending_at[static_cast<std::size_t>(word_target(c, current))].push_back(id);
    };
    auto extend = [&](auto&& self, ObjId at) -> void {
        add();
        if (static_cast<int>(current.letters.size()) == bound) {
            return;
        }
        const bool last_backward = !current.letters.empty() && current.letters.back().backward;
        const bool last_forward = !current.letters.empty() && !current.letters.back().backward;
        if (!last_forward) {
            for (MorId f : c.out(at)) {
                if (!c.is_identity(f)) {
                    current.letters.push_back({f, false});
                    self(self, c.target(f));
                    current.letters.pop_back();
                }
            }
        }
        if (!last_backward) {
            for (MorId p : c.in(at)) {
                if (!c.is_identity(p) && rc.is_weq(p)) {
                    current.letters.push_back({p, true});
                    self(self, c.source(p));
                    current.letters.pop_back();
                }
            }
        }
    };
    for (ObjId a = 0; a < n; ++a) {
        current = Word{a, {}};
        extend(extend, a);
    }
    parent_.resize(words_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) {
        parent_[i] = static_cast<std::int32_t>(i);
    }

    Word scratch;
    auto lookup = [&](const Word& w) {
        auto it = index_.find(key_of(normalize(c, w)));
        return it == index_.end() ? -1 : it->second;
    };
    for (const Move& mv : moves(rc)) {
        const auto width = static_cast<int>(std::max(mv.before.size(), mv.after.size()));
        for (std::int32_t ui : ending_at[static_cast<std::size_t>(mv.from)]) {
            const Word& u = words_[static_cast<std::size_t>(ui)];
            const int room = bound - width - static_cast<int>(u.letters.size());
            if (room < 0) {
                continue;
            }
            for (std::int32_t vi : starting_at[static_cast<std::size_t>(mv.to)]) {
                const Word& v = words_[static_cast<std::size_t>(vi)];
                if (static_cast<int>(v.letters.size()) > room) {
                    continue;
                }
                scratch.source = u.source;
                scratch.letters = u.letters;
                scratch.letters.insert(scratch.letters.end(), mv.before.begin(), mv.before.end());
                scratch.letters.insert(scratch.letters.end(), v.letters.begin(), v.letters.end());
                const std::int32_t x = lookup(scratch);
                scratch.letters = u.letters;
                scratch.letters.insert(scratch.letters.end(), mv.after.begin(), mv.after.end());
                scratch.letters.insert(scratch.letters.end(), v.letters.begin(), v.letters.end());
                const std::int32_t y = lookup(scratch);
                if (x < 0 || y < 0) {
                    throw std::logic_error("normal form of a bounded word missing from the word table");
                }
                const std::int32_t rx = find(x);
                const std::int32_t ry = find(y);
                if (rx != ry) {
                    parent_[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
                }
            }
        }
    }
}

std::optional<std::int32_t> LocalizationOracle::class_of(const Word& word) const
{
    auto it = index_.find(key_of(normalize(*rc_->cat, word)));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return find(it->second);
}

std::vector<std::vector<Word>> LocalizationOracle::classes(ObjId a, ObjId b) const
{
    const FinCategory& c = *rc_->cat;
    std::map<std::int32_t, std::size_t> slot;
    std::vector<std::vector<Word>> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const Word& w = words_[i];
        if (w.source != a || word_target(c, w) != b) {
            continue;
        }
        const std::int32_t root = find(static_cast<std::int32_t>(i));
        auto [it, fresh] = slot.emplace(root, out.size());
        if (fresh) {
            out.emplace_back();
        }
        out[it->second].push_back(w);
    }
    return out;
}

std::size_t LocalizationOracle::class_count(ObjId a, ObjId b) const
{
    return classes(a, b).size();
}

std::vector<Word> LocalizationOracle::representatives(ObjId a, ObjId b) const
{
    std::vector<Word> out;
    for (auto& cls : classes(a, b)) {
        // Words are generated shortest-prefix first, so pick the shortest explicitly.
        out.push_back(*std::min_element(cls.begin(), cls.end(), [](const Word& x, const Word& y) {
            return x.letters.size() < y.letters.size();
        }));
    }
    return out;
}

std::optional<bool> LocalizationOracle::invertible(const Word& word) const
{
    const FinCategory& c = *rc_->cat;
    const ObjId a = word.source;
    const ObjId b = word_target(c, word);
    const auto id_a = class_of(Word{a, {}});
    const auto id_b = class_of(Word{b, {}});
    bool undecided = false;
    for (const Word& back : representatives(b, a)) {
        const auto left = class_of(concatenate(word, back));
        const auto right = class_of(concatenate(back, word));
        if (!left || !right) {
            undecided = true;
            continue;
        }
        if (*left == *id_a && *right == *id_b) {
            return true;
        }
    }
    if (undecided) {
        return std::nullopt;
    }
    return false;
}

OracleClasses bounded_localization_oracle(const RelCategory& rc, ObjId a, ObjId b, int bound)
{
    if (bound < 2) {
        throw PreconditionError("the oracle needs a bound of at least 2");
    }
    const LocalizationOracle current(rc, bound);
    const LocalizationOracle previous(rc, bound - 2);
    OracleClasses out;
    out.source = a;
    out.target = b;
    out.bound = bound;
    out.classes = current.classes(a, b);
    out.previous_count = previous.class_count(a, b);
    out.stable = out.previous_count == out.classes.size();
    return out;
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

namespace {

void conclude(SaturationReport& report)
{
    if (report.verdict == Verdict::Inconclusive) {
        return;
    }
    report.verdict = report.invertible_outside_weq.empty() && report.weq_not_invertible.empty() ? Verdict::Pass
                                                                                                 : Verdict::Fail;
}

}  // namespace

SaturationReport check_saturation(const PartialModelStructure& pms, ZigzagConvention convention)
{
    const FinCategory& c = pms.cat();
    SaturationReport report;
    report.mode = "homotopy-category";
    report.convention = convention;
    const HoCategory ho = homotopy_category(pms, convention);
    if (!ho.lawful()) {
        report.verdict = Verdict::Inconclusive;
        report.detail = "homotopy category failed its own checks: " + ho.issues.front();
        return report;
    }
    report.verdict = Verdict::Pass;
    for (std::size_t fi = 0; fi < c.morphism_count(); ++fi) {
        const auto f = static_cast<MorId>(fi);
        const std::int32_t k = ho.class_of_morphism(c, f);
        const bool iso = k >= 0 && ho.is_isomorphism(c.source(f), c.target(f), k);
        if (iso && !pms.rc.is_weq(f)) {
            report.invertible_outside_weq.push_back(f);
        } else if (!iso && pms.rc.is_weq(f)) {
            report.weq_not_invertible.push_back(f);
        }
    }
    conclude(report);
    return report;
}

SaturationReport check_saturation_diagnostic(const RelCategory& rc, int bound)
{
    if (bound < 2) {
        throw PreconditionError("the oracle needs a bound of at least 2");
    }
    const FinCategory& c = *rc.cat;
    SaturationReport report;
    report.mode = "bounded-oracle";
    report.bound = bound;
    const LocalizationOracle current(rc, bound);
    const LocalizationOracle previous(rc, bound - 2);
    const auto n = static_cast<ObjId>(c.object_count());
    for (ObjId a = 0; a < n && report.stable; ++a) {
        for (ObjId b = 0; b < n; ++b) {
            if (current.class_count(a, b) != previous.class_count(a, b)) {
                report.stable = false;
                report.detail = "class count of hom(" + c.object_name(a) + ", " + c.object_name(b) +
                                ") changes between bounds " + std::to_string(bound - 2) + " and " +
                                std::to_string(bound);
                break;
            }
        }
    }
    report.verdict = report.stable ? Verdict::Pass : Verdict::Inconclusive;
    for (std::size_t fi = 0; fi < c.morphism_count() && report.stable; ++fi) {
        const auto f = static_cast<MorId>(fi);
        const Word w{c.source(f), {{f, false}}};
        const auto now = current.invertible(w);
        const auto before = previous.invertible(w);
        if (!now || now != before) {
            report.verdict = Verdict::Inconclusive;
            report.detail = "invertibility of " + c.name(f) + " is not settled within the bound";
            break;
        }
        if (*now && !rc.is_weq(f)) {
            report.invertible_outside_weq.push_back(f);
        } else if (!*now && rc.is_weq(f)) {
            report.weq_not_invertible.push_back(f);
        }
    }
    conclude(report);
    return report;
}

}  // namespace pmcat
