#include "pmcat/sset.hpp"

#include "pmcat/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace pmcat {

namespace {

using Table = std::vector<std::vector<SimplexId>>;

void check_truncation(int n_max)
{
    if (n_max < 0) {
        throw PreconditionError("truncation must be non-negative");
    }
}

/// Index of the simplex with the given nonempty chain, walking the extension tables.
SimplexId chain_index(const FinCategory& c, const std::vector<std::vector<SimplexId>>& extensions,
                      std::span<const MorId> chain)
{
    SimplexId idx = c.source(chain[0]);
    for (std::size_t k = 0; k < chain.size(); ++k) {
        idx = extensions[k][static_cast<std::size_t>(idx)] + c.out_position(chain[k]);
    }
    return idx;
}

struct Operators
{
    int n_max;
    std::function<std::size_t(int)> count;
    std::function<SimplexId(int, int, SimplexId)> face;
    std::function<SimplexId(int, int, SimplexId)> degeneracy;
};

void check_identities(const Operators& op, const std::string& direction, ValidationReport& report)
{
    auto fail = [&](const std::string& what, int n, SimplexId x) {
        report.add(IssueKind::Structural,
                   direction + " simplicial identity " + what + " fails at dimension " + std::to_string(n) +
                       ", simplex " + std::to_string(x),
                   {what, std::to_string(n), std::to_string(x)});
    };
    for (int n = 0; n <= op.n_max; ++n) {
        const auto count = static_cast<SimplexId>(op.count(n));
        for (SimplexId x = 0; x < count; ++x) {
            if (n >= 2) {
                for (int j = 1; j <= n; ++j) {
                    for (int i = 0; i < j; ++i) {
                        if (op.face(n - 1, i, op.face(n, j, x)) != op.face(n - 1, j - 1, op.face(n, i, x))) {
                            fail("d_i d_j = d_{j-1} d_i", n, x);
                        }
                    }
                }
            }
            if (n + 1 > op.n_max) {
                continue;
            }
            for (int j = 0; j <= n; ++j) {
                const SimplexId sx = op.degeneracy(n, j, x);
                if (op.face(n + 1, j, sx) != x || op.face(n + 1, j + 1, sx) != x) {
                    fail("d_j s_j = d_{j+1} s_j = id", n, x);
                }
                for (int i = 0; i < j; ++i) {
                    if (n >= 1 && op.face(n + 1, i, sx) != op.degeneracy(n - 1, j - 1, op.face(n, i, x))) {
                        fail("d_i s_j = s_{j-1} d_i", n, x);
                    }
                }
                for (int i = j + 2; i <= n + 1; ++i) {
                    if (op.face(n + 1, i, sx) != op.degeneracy(n - 1, j, op.face(n, i - 1, x))) {
                        fail("d_i s_j = s_j d_{i-1}", n, x);
                    }
                }
                if (n + 2 > op.n_max) {
                    continue;
                }
                for (int i = 0; i <= j; ++i) {
                    if (op.degeneracy(n + 1, i, sx) != op.degeneracy(n + 1, j + 1, op.degeneracy(n, i, x))) {
                        fail("s_i s_j = s_{j+1} s_i", n, x);
                    }
                }
            }
        }
    }
}

Operators operators_of(const TruncatedSimplicialSet& s)
{
    return {s.n_max, [&s](int n) { return s.count(n); },
            [&s](int n, int i, SimplexId x) { return s.face(n, i, x); },
            [&s](int n, int i, SimplexId x) { return s.degeneracy(n, i, x); }};
}

std::vector<std::vector<char>> degenerate_marks(const TruncatedSimplicialSet& s, int top)
{
    std::vector<std::vector<char>> marks(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        marks[static_cast<std::size_t>(n)].assign(s.count(n), 0);
    }
    for (int n = 0; n + 1 <= top; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (SimplexId x : s.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]) {
                marks[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(x)] = 1;
            }
        }
    }
    return marks;
}

}  // namespace

TruncatedSimplicialSet nerve(const FinCategory& c, int n_max)
{
    check_truncation(n_max);
    TruncatedSimplicialSet s;
    s.n_max = n_max;
    const auto top = static_cast<std::size_t>(n_max);
    s.counts.assign(top + 1, 0);
    s.labels.assign(top + 1, {});
    s.label_widths.assign(top + 1, 1);
    s.faces.assign(top + 1, {});
    s.degeneracies.assign(top + 1, {});
    s.extensions.assign(top, {});

    // Last vertex of every simplex of the previous dimension.
    std::vector<ObjId> endpoint;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
        s.labels[0].push_back(static_cast<std::int32_t>(o));
        endpoint.push_back(static_cast<ObjId>(o));
    }
    s.counts[0] = c.object_count();
    for (std::size_t n = 1; n <= top; ++n) {
        s.label_widths[n] = n;
        std::size_t total = 0;
        for (ObjId e : endpoint) {
            total += c.out(e).size();
        }
        auto& ext = s.extensions[n - 1];
        ext.resize(s.counts[n - 1]);
        auto& labels = s.labels[n];
        labels.reserve(total * n);
        std::vector<ObjId> next_endpoint;
        next_endpoint.reserve(total);
        SimplexId next = 0;
        for (std::size_t x = 0; x < s.counts[n - 1]; ++x) {
            ext[x] = next;
            for (MorId g : c.out(endpoint[x])) {
                if (n > 1) {
                    const auto prefix = s.label(static_cast<int>(n) - 1, static_cast<SimplexId>(x));
                    labels.insert(labels.end(), prefix.begin(), prefix.end());
                }
                labels.push_back(g);
                next_endpoint.push_back(c.target(g));
                ++next;
            }
        }
        s.counts[n] = static_cast<std::size_t>(next);
        endpoint = std::move(next_endpoint);
    }

    std::vector<MorId> chain;
    for (std::size_t n = 1; n <= top; ++n) {
        s.faces[n].assign(n + 1, std::vector<SimplexId>(s.counts[n]));
        for (std::size_t x = 0; x < s.counts[n]; ++x) {
            const auto f = s.label(static_cast<int>(n), static_cast<SimplexId>(x));
            if (n == 1) {
                s.faces[1][0][x] = c.target(f[0]);
                s.faces[1][1][x] = c.source(f[0]);
                continue;
            }
            for (std::size_t i = 0; i <= n; ++i) {
                chain.clear();
                if (i == 0) {
                    chain.assign(f.begin() + 1, f.end());
                } else if (i == n) {
                    chain.assign(f.begin(), f.end() - 1);
                } else {
                    chain.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i) - 1);
                    chain.push_back(c.compose(f[i - 1], f[i]));
                    chain.insert(chain.end(), f.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.end());
                }
                s.faces[n][i][x] = chain_index(c, s.extensions, chain);
            }
        }
    }
    for (std::size_t n = 0; n < top; ++n) {
        s.degeneracies[n].assign(n + 1, std::vector<SimplexId>(s.counts[n]));
        for (std::size_t x = 0; x < s.counts[n]; ++x) {
            if (n == 0) {
                chain = {c.identity(static_cast<ObjId>(x))};
                s.degeneracies[0][0][x] = chain_index(c, s.extensions, chain);
                continue;
            }
            const auto f = s.label(static_cast<int>(n), static_cast<SimplexId>(x));
            for (std::size_t i = 0; i <= n; ++i) {
                chain.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i));
                const ObjId vertex = i == 0 ? c.source(f[0]) : c.target(f[i - 1]);
                chain.push_back(c.identity(vertex));
                chain.insert(chain.end(), f.begin() + static_cast<std::ptrdiff_t>(i), f.end());
                s.degeneracies[n][i][x] = chain_index(c, s.extensions, chain);
            }
        }
    }
    return s;
}

SimplicialMap nerve_map(const Functor& F, const TruncatedSimplicialSet& source, const TruncatedSimplicialSet& target)
{
    const int top = std::min(source.n_max, target.n_max);
    if (static_cast<int>(target.extensions.size()) < top) {
        throw PreconditionError("nerve_map needs the target to be a nerve");
    }
    const FinCategory& c = *F.target;
    SimplicialMap map;
    map.on_simplices.resize(static_cast<std::size_t>(top) + 1);
    std::vector<MorId> image;
    for (int n = 0; n <= top; ++n) {
        auto& out = map.on_simplices[static_cast<std::size_t>(n)];
        out.reserve(source.count(n));
        for (std::size_t x = 0; x < source.count(n); ++x) {
            const auto label = source.label(n, static_cast<SimplexId>(x));
            if (n == 0) {
                out.push_back(F.object(label[0]));
                continue;
            }
            image.clear();
            for (std::int32_t v : label) {
                image.push_back(F.morphism(v));
            }
            const SimplexId y = chain_index(c, target.extensions, image);
            const auto found = target.label(n, y);
            if (!std::equal(found.begin(), found.end(), image.begin(), image.end())) {
                throw PreconditionError("functor image is not a simplex of the target nerve");
            }
            out.push_back(y);
        }
    }
    return map;
}

ValidationReport check_simplicial_identities(const TruncatedSimplicialSet& s)
{
    ValidationReport report;
    check_identities(operators_of(s), "", report);
    return report;
}

ValidationReport check_simplicial_map(const TruncatedSimplicialSet& source, const TruncatedSimplicialSet& target,
                                      const SimplicialMap& map)
{
    ValidationReport report;
    const int top = static_cast<int>(map.on_simplices.size()) - 1;
    for (int n = 0; n <= top; ++n) {
        const auto& f = map.on_simplices[static_cast<std::size_t>(n)];
        for (std::size_t x = 0; x < source.count(n); ++x) {
            const auto sx = static_cast<SimplexId>(x);
            for (int i = 0; n >= 1 && i <= n; ++i) {
                if (map.on_simplices[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(source.face(n, i, sx))] !=
                    target.face(n, i, f[x])) {
                    report.add(IssueKind::Structural, "map does not commute with d_" + std::to_string(i) +
                                                          " in dimension " + std::to_string(n));
                }
            }
            for (int i = 0; n < top && i <= n; ++i) {
                if (map.on_simplices[static_cast<std::size_t>(n) + 1]
                                    [static_cast<std::size_t>(source.degeneracy(n, i, sx))] !=
                    target.degeneracy(n, i, f[x])) {
                    report.add(IssueKind::Structural, "map does not commute with s_" + std::to_string(i) +
                                                          " in dimension " + std::to_string(n));
                }
            }
        }
    }
    return report;
}

namespace {

/// d_i : A_k → A_{k-1} on chains of length k.
Functor chain_face_functor(const DiagramCategory& from, const DiagramCategory& to, int i)
{
    const FinCategory& c = *from.base;
    const int k = from.shape.nodes - 1;
    Functor F{from.cat, to.cat, {}, {}};
    for (std::size_t o = 0; o < from.nodes.size(); ++o) {
        const auto& nodes = from.nodes[o];
        const auto& edges = from.edges[o];
        std::vector<ObjId> n2;
        std::vector<MorId> e2;
        for (int v = 0; v <= k; ++v) {
            if (v != i) {
                n2.push_back(nodes[static_cast<std::size_t>(v)]);
            }
        }
        for (int e = 0; e < k; ++e) {
            if (i == 0 && e == 0) {
                continue;
            }
            if (i == k && e == k - 1) {
                continue;
            }
            if (i > 0 && i < k && e == i - 1) {
                e2.push_back(c.compose(edges[static_cast<std::size_t>(e)], edges[static_cast<std::size_t>(e) + 1]));
                continue;
            }
            if (i > 0 && i < k && e == i) {
                continue;
            }
            e2.push_back(edges[static_cast<std::size_t>(e)]);
        }
        F.on_objects.push_back(*to.find_object(n2, e2));
    }
    for (std::size_t m = 0; m < from.components.size(); ++m) {
        std::vector<MorId> comps = from.components[m];
        comps.erase(comps.begin() + i);
        const ObjId s = F.on_objects[static_cast<std::size_t>(from.cat->source(static_cast<MorId>(m)))];
        const ObjId t = F.on_objects[static_cast<std::size_t>(from.cat->target(static_cast<MorId>(m)))];
        F.on_morphisms.push_back(*to.find_morphism(s, t, comps));
    }
    return F;
}

/// s_i : A_k → A_{k+1}, inserting an identity at node i.
Functor chain_degeneracy_functor(const DiagramCategory& from, const DiagramCategory& to, int i)
{
    const FinCategory& c = *from.base;
    Functor F{from.cat, to.cat, {}, {}};
    for (std::size_t o = 0; o < from.nodes.size(); ++o) {
        std::vector<ObjId> nodes = from.nodes[o];
        std::vector<MorId> edges = from.edges[o];
        const ObjId v = nodes[static_cast<std::size_t>(i)];
        nodes.insert(nodes.begin() + i, v);
        edges.insert(edges.begin() + i, c.identity(v));
        F.on_objects.push_back(*to.find_object(nodes, edges));
    }
    for (std::size_t m = 0; m < from.components.size(); ++m) {
        std::vector<MorId> comps = from.components[m];
        comps.insert(comps.begin() + i, comps[static_cast<std::size_t>(i)]);
        const ObjId s = F.on_objects[static_cast<std::size_t>(from.cat->source(static_cast<MorId>(m)))];
        const ObjId t = F.on_objects[static_cast<std::size_t>(from.cat->target(static_cast<MorId>(m)))];
        F.on_morphisms.push_back(*to.find_morphism(s, t, comps));
    }
    return F;
}

}  // namespace

TruncatedBisimplicialSet rezk_nerve(const RelCategory& rc, int k_max, int n_max)
{
    check_truncation(k_max);
    check_truncation(n_max);
    TruncatedBisimplicialSet b;
    b.k_max = k_max;
    b.n_max = n_max;
    std::vector<DiagramCategory> levels;
    for (int k = 0; k <= k_max; ++k) {
        levels.push_back(diagram_category(rc, chain_shape(k)));
    }
    std::vector<TruncatedSimplicialSet> columns;
    for (int k = 0; k <= k_max; ++k) {
        columns.push_back(nerve(*levels[static_cast<std::size_t>(k)].cat, n_max));
    }
    b.hfaces.resize(static_cast<std::size_t>(k_max) + 1);
    b.hdegeneracies.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        auto& hf = b.hfaces[static_cast<std::size_t>(k)];
        auto& hd = b.hdegeneracies[static_cast<std::size_t>(k)];
        hf.assign(static_cast<std::size_t>(n_max) + 1, {});
        hd.assign(static_cast<std::size_t>(n_max) + 1, {});
        for (int i = 0; k >= 1 && i <= k; ++i) {
            const Functor F = chain_face_functor(levels[static_cast<std::size_t>(k)],
                                                 levels[static_cast<std::size_t>(k) - 1], i);
            SimplicialMap m = nerve_map(F, columns[static_cast<std::size_t>(k)],
                                        columns[static_cast<std::size_t>(k) - 1]);
            for (int n = 0; n <= n_max; ++n) {
                hf[static_cast<std::size_t>(n)].push_back(std::move(m.on_simplices[static_cast<std::size_t>(n)]));
            }
        }
        for (int i = 0; k < k_max && i <= k; ++i) {
            const Functor F = chain_degeneracy_functor(levels[static_cast<std::size_t>(k)],
                                                       levels[static_cast<std::size_t>(k) + 1], i);
            SimplicialMap m = nerve_map(F, columns[static_cast<std::size_t>(k)],
                                        columns[static_cast<std::size_t>(k) + 1]);
            for (int n = 0; n <= n_max; ++n) {
                hd[static_cast<std::size_t>(n)].push_back(std::move(m.on_simplices[static_cast<std::size_t>(n)]));
            }
        }
    }
    b.columns = std::move(columns);
    b.levels = std::move(levels);
    return b;
}

std::vector<std::int32_t> grid(const TruncatedBisimplicialSet& b, int k, int n, SimplexId x)
{
    const DiagramCategory& level = b.levels[static_cast<std::size_t>(k)];
    const FinCategory& a = *level.cat;
    const auto chain = b.columns[static_cast<std::size_t>(k)].label(n, x);
    std::vector<ObjId> rows;
    if (n == 0) {
        rows.push_back(chain[0]);
    } else {
        rows.push_back(a.source(chain[0]));
        for (std::int32_t m : chain) {
            rows.push_back(a.target(m));
        }
    }
    std::vector<std::int32_t> out;
    for (ObjId r : rows) {
        const auto& nodes = level.nodes[static_cast<std::size_t>(r)];
        out.insert(out.end(), nodes.begin(), nodes.end());
    }
    for (ObjId r : rows) {
        const auto& edges = level.edges[static_cast<std::size_t>(r)];
        out.insert(out.end(), edges.begin(), edges.end());
    }
    for (int v = 0; v <= k && n > 0; ++v) {
        for (std::int32_t m : chain) {
            out.push_back(level.components[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)]);
        }
    }
    return out;
}

ValidationReport check_bisimplicial_identities(const TruncatedBisimplicialSet& b)
{
    ValidationReport report;
    for (int k = 0; k <= b.k_max; ++k) {
        check_identities(operators_of(b.columns[static_cast<std::size_t>(k)]),
                         "vertical (k=" + std::to_string(k) + ")", report);
    }
    auto hface = [&b](int k, int n, int i, SimplexId x) {
        return b.hfaces[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]
                       [static_cast<std::size_t>(x)];
    };
    auto hdegen = [&b](int k, int n, int i, SimplexId x) {
        return b.hdegeneracies[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(x)];
    };
    for (int n = 0; n <= b.n_max; ++n) {
        Operators op{b.k_max, [&b, n](int k) { return b.count(k, n); },
                     [&hface, n](int k, int i, SimplexId x) { return hface(k, n, i, x); },
                     [&hdegen, n](int k, int i, SimplexId x) { return hdegen(k, n, i, x); }};
        check_identities(op, "horizontal (n=" + std::to_string(n) + ")", report);
    }
    auto fail = [&report](const std::string& what, int k, int n) {
        report.add(IssueKind::Structural, "horizontal and vertical operators do not commute: " + what + " at (" +
                                              std::to_string(k) + ", " + std::to_string(n) + ")");
    };
    for (int k = 0; k <= b.k_max; ++k) {
        const auto& col = b.columns[static_cast<std::size_t>(k)];
        for (int n = 0; n <= b.n_max; ++n) {
            for (std::size_t xi = 0; xi < b.count(k, n); ++xi) {
                const auto x = static_cast<SimplexId>(xi);
                for (int i = 0; i <= k; ++i) {
                    for (int j = 0; j <= n; ++j) {
                        if (k >= 1 && n >= 1 &&
                            hface(k, n - 1, i, col.face(n, j, x)) !=
                                b.columns[static_cast<std::size_t>(k) - 1].face(n, j, hface(k, n, i, x))) {
                            fail("d^h d^v", k, n);
                        }
                        if (k >= 1 && n < b.n_max &&
                            hface(k, n + 1, i, col.degeneracy(n, j, x)) !=
                                b.columns[static_cast<std::size_t>(k) - 1].degeneracy(n, j, hface(k, n, i, x))) {
                            fail("d^h s^v", k, n);
                        }
                        if (k < b.k_max && n >= 1 &&
                            hdegen(k, n - 1, i, col.face(n, j, x)) !=
                                b.columns[static_cast<std::size_t>(k) + 1].face(n, j, hdegen(k, n, i, x))) {
                            fail("s^h d^v", k, n);
                        }
                        if (k < b.k_max && n < b.n_max &&
                            hdegen(k, n + 1, i, col.degeneracy(n, j, x)) !=
                                b.columns[static_cast<std::size_t>(k) + 1].degeneracy(n, j, hdegen(k, n, i, x))) {
                            fail("s^h s^v", k, n);
                        }
                    }
                }
            }
        }
    }
    return report;
}

TruncatedSimplicialSet diagonal(const TruncatedBisimplicialSet& b)
{
    if (b.k_max != b.n_max) {
        throw PreconditionError("diagonal needs equal horizontal and vertical truncation");
    }
    const int top = b.n_max;
    TruncatedSimplicialSet d;
    d.n_max = top;
    d.counts.resize(static_cast<std::size_t>(top) + 1);
    d.labels.resize(static_cast<std::size_t>(top) + 1);
    d.label_widths.resize(static_cast<std::size_t>(top) + 1);
    d.faces.resize(static_cast<std::size_t>(top) + 1);
    d.degeneracies.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        const auto& col = b.columns[static_cast<std::size_t>(n)];
        d.counts[static_cast<std::size_t>(n)] = col.count(n);
        d.labels[static_cast<std::size_t>(n)] = col.labels[static_cast<std::size_t>(n)];
        d.label_widths[static_cast<std::size_t>(n)] = col.label_widths[static_cast<std::size_t>(n)];
        if (n >= 1) {
            auto& faces = d.faces[static_cast<std::size_t>(n)];
            faces.assign(static_cast<std::size_t>(n) + 1, std::vector<SimplexId>(col.count(n)));
            for (int i = 0; i <= n; ++i) {
                const auto& hf = b.hfaces[static_cast<std::size_t>(n)][static_cast<std::size_t>(n) - 1]
                                         [static_cast<std::size_t>(i)];
                for (std::size_t x = 0; x < col.count(n); ++x) {
                    faces[static_cast<std::size_t>(i)][x] =
                        hf[static_cast<std::size_t>(col.face(n, i, static_cast<SimplexId>(x)))];
                }
            }
        }
        if (n < top) {
            auto& degens = d.degeneracies[static_cast<std::size_t>(n)];
            degens.assign(static_cast<std::size_t>(n) + 1, std::vector<SimplexId>(col.count(n)));
            for (int i = 0; i <= n; ++i) {
                const auto& hd = b.hdegeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(n) + 1]
                                                [static_cast<std::size_t>(i)];
                for (std::size_t x = 0; x < col.count(n); ++x) {
                    degens[static_cast<std::size_t>(i)][x] =
                        hd[static_cast<std::size_t>(col.degeneracy(n, i, static_cast<SimplexId>(x)))];
                }
            }
        }
    }
    return d;
}

Components pi0(const TruncatedSimplicialSet& s)
{
    const std::size_t n0 = s.count(0);
    std::vector<std::int32_t> parent(n0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::int32_t(std::int32_t)> find = [&](std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    if (s.n_max >= 1) {
        for (std::size_t e = 0; e < s.count(1); ++e) {
            const auto a = find(s.face(1, 0, static_cast<SimplexId>(e)));
            const auto b = find(s.face(1, 1, static_cast<SimplexId>(e)));
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    }
    Components out;
    out.component.assign(n0, -1);
    std::vector<std::int32_t> label(n0, -1);
    for (std::size_t x = 0; x < n0; ++x) {
        const auto r = static_cast<std::size_t>(find(static_cast<std::int32_t>(x)));
        if (label[r] < 0) {
            label[r] = static_cast<std::int32_t>(out.count++);
        }
        out.component[x] = label[r];
    }
    return out;
}

ChainComplex normalized_chains(const TruncatedSimplicialSet& s, int top)
{
    if (top > s.n_max) {
        throw PreconditionError("chain complex degree above the truncation");
    }
    const auto marks = degenerate_marks(s, top);
    std::vector<std::vector<std::int64_t>> position(static_cast<std::size_t>(top) + 1);
    ChainComplex cc;
    for (int n = 0; n <= top; ++n) {
        auto& pos = position[static_cast<std::size_t>(n)];
        pos.assign(s.count(n), -1);
        std::int64_t next = 0;
        for (std::size_t x = 0; x < s.count(n); ++x) {
            if (!marks[static_cast<std::size_t>(n)][x]) {
                pos[x] = next++;
            }
        }
        cc.ranks.push_back(static_cast<std::size_t>(next));
    }
    cc.boundaries.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 1; n <= top; ++n) {
        SparseMatrix& d = cc.boundaries[static_cast<std::size_t>(n)];
        d.rows = cc.ranks[static_cast<std::size_t>(n) - 1];
        d.cols = cc.ranks[static_cast<std::size_t>(n)];
        d.columns.reserve(d.cols);
        const auto& pos = position[static_cast<std::size_t>(n)];
        const auto& below = position[static_cast<std::size_t>(n) - 1];
        std::vector<std::pair<std::int64_t, int>> entries;
        for (std::size_t x = 0; x < s.count(n); ++x) {
            if (pos[x] < 0) {
                continue;
            }
            entries.clear();
            for (int i = 0; i <= n; ++i) {
                const std::int64_t row = below[static_cast<std::size_t>(s.face(n, i, static_cast<SimplexId>(x)))];
                if (row >= 0) {
                    entries.emplace_back(row, i % 2 == 0 ? 1 : -1);
                }
            }
            std::sort(entries.begin(), entries.end());
            std::vector<std::pair<std::int64_t, BigInt>> column;
            for (const auto& [row, sign] : entries) {
                if (!column.empty() && column.back().first == row) {
                    column.back().second += sign;
                    if (column.back().second == 0) {
                        column.pop_back();
                    }
                } else {
                    column.emplace_back(row, BigInt(sign));
                }
            }
            d.columns.push_back(std::move(column));
        }
    }
    return cc;
}

std::vector<AbelianGroup> homology(const TruncatedSimplicialSet& s, int max_degree)
{
    if (max_degree < 0 || max_degree > s.n_max - 1) {
        throw PreconditionError("homology requested in degree " + std::to_string(max_degree) +
                                " but the truncation only supports degrees up to " + std::to_string(s.n_max - 1));
    }
    return homology(normalized_chains(s, max_degree + 1), max_degree);
}

InducedMapReport induced_map_check(const TruncatedSimplicialSet& source, const TruncatedSimplicialSet& target,
                                   const SimplicialMap& map, int max_degree)
{
    InducedMapReport report;
    const Components cs = pi0(source);
    const Components ct = pi0(target);
    std::vector<std::int32_t> image(cs.count, -1);
    std::vector<char> hit(ct.count, 0);
    bool ok = true;
    for (std::size_t x = 0; x < source.count(0); ++x) {
        const std::int32_t c = cs.component[x];
        const std::int32_t d = ct.component[static_cast<std::size_t>(map.on_simplices[0][x])];
        if (image[static_cast<std::size_t>(c)] >= 0 && image[static_cast<std::size_t>(c)] != d) {
            ok = false;
        }
        image[static_cast<std::size_t>(c)] = d;
        hit[static_cast<std::size_t>(d)] = 1;
    }
    for (std::size_t c = 0; c < cs.count && ok; ++c) {
        for (std::size_t c2 = c + 1; c2 < cs.count; ++c2) {
            if (image[c] == image[c2]) {
                ok = false;
            }
        }
    }
    ok = ok && std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
    report.pi0_bijective = ok;

    // Mapping cone: Cone_n = C_{n-1}(X) ⊕ C_n(Y), ∂(x, y) = (-∂x, f x + ∂y).
    // f_* is an isomorphism in degrees <= d iff H_i(Cone) = 0 for i <= d and H_d(X) ≅ H_d(Y).
    const int d = max_degree;
    const ChainComplex cx = normalized_chains(source, d + 1);
    const ChainComplex cy = normalized_chains(target, d + 1);
    const auto mx = degenerate_marks(source, d + 1);
    std::vector<std::vector<std::int64_t>> ypos(static_cast<std::size_t>(d) + 2);
    {
        const auto my = degenerate_marks(target, d + 1);
        for (int n = 0; n <= d + 1; ++n) {
            std::int64_t next = 0;
            ypos[static_cast<std::size_t>(n)].assign(target.count(n), -1);
            for (std::size_t y = 0; y < target.count(n); ++y) {
                if (!my[static_cast<std::size_t>(n)][y]) {
                    ypos[static_cast<std::size_t>(n)][y] = next++;
                }
            }
        }
    }
    ChainComplex cone;
    for (int n = 0; n <= d + 1; ++n) {
        cone.ranks.push_back((n == 0 ? 0 : cx.ranks[static_cast<std::size_t>(n) - 1]) + cy.ranks[static_cast<std::size_t>(n)]);
    }
    cone.boundaries.resize(static_cast<std::size_t>(d) + 2);
    for (int n = 1; n <= d + 1; ++n) {
        SparseMatrix& m = cone.boundaries[static_cast<std::size_t>(n)];
        m.rows = cone.ranks[static_cast<std::size_t>(n) - 1];
        m.cols = cone.ranks[static_cast<std::size_t>(n)];
        const std::size_t x_below = n >= 2 ? cx.ranks[static_cast<std::size_t>(n) - 2] : 0;
        // Columns from X_{n-1}.
        std::size_t xi = 0;
        for (std::size_t x = 0; x < source.count(n - 1); ++x) {
            if (mx[static_cast<std::size_t>(n) - 1][x]) {
                continue;
            }
            std::vector<std::pair<std::int64_t, BigInt>> col;
            if (n >= 2) {
                for (const auto& [r, v] : cx.boundaries[static_cast<std::size_t>(n) - 1].columns[xi]) {
                    col.emplace_back(r, -v);
                }
            }
            const SimplexId fx = map.on_simplices[static_cast<std::size_t>(n) - 1][x];
            const std::int64_t row = ypos[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(fx)];
            if (row >= 0) {
                col.emplace_back(static_cast<std::int64_t>(x_below) + row, BigInt(1));
            }
            m.columns.push_back(std::move(col));
            ++xi;
        }
        for (const auto& ycol : cy.boundaries[static_cast<std::size_t>(n)].columns) {
            std::vector<std::pair<std::int64_t, BigInt>> col;
            for (const auto& [r, v] : ycol) {
                col.emplace_back(static_cast<std::int64_t>(x_below) + r, v);
            }
            m.columns.push_back(std::move(col));
        }
    }
    const auto hc = homology(cone, d);
    const auto hx = homology(cx, d);
    const auto hy = homology(cy, d);
    report.homology_isomorphism = true;
    for (int i = 0; i <= d; ++i) {
        if (!hc[static_cast<std::size_t>(i)].trivial()) {
            // H_i(cone) ≠ 0: f_i is not onto, or f_{i-1} (already onto) is not injective.
            // An onto map between isomorphic finitely generated groups is injective.
            report.homology_isomorphism = false;
            const bool lower_iso = i == 0 || hx[static_cast<std::size_t>(i) - 1] == hy[static_cast<std::size_t>(i) - 1];
            report.first_failing_degree = lower_iso ? i : i - 1;
            break;
        }
    }
    if (report.homology_isomorphism && !(hx[static_cast<std::size_t>(d)] == hy[static_cast<std::size_t>(d)])) {
        report.homology_isomorphism = false;
        report.first_failing_degree = d;
    }
    return report;
}

}  // namespace pmcat
