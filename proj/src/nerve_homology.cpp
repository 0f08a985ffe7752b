#include "pmcat/nerve_homology.hpp"

#include "pmcat/sset.hpp"

#include <numeric>

namespace pmcat {

namespace {

bool is_thin(const FinCategory& c)
{
    for (std::size_t a = 0; a < c.object_count(); ++a) {
        const auto out = c.out(static_cast<ObjId>(a));
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (c.target(out[i]) == c.target(out[i - 1])) {
                return false;
            }
        }
    }
    return true;
}

class Bits
{
public:
    explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    [[nodiscard]] bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    [[nodiscard]] bool intersects(const Bits& a, const Bits& b) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] & a.words_[w] & b.words_[w]) {
                return true;
            }
        }
        return false;
    }

private:
    std::vector<std::uint64_t> words_;
};

/// Objects of the core of a finite poset given by a thin skeletal category.
std::vector<ObjId> poset_core(const FinCategory& c)
{
    const std::size_t n = c.object_count();
    std::vector<Bits> above(n, Bits(n));  // strictly greater
    std::vector<Bits> below(n, Bits(n));
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto s = static_cast<std::size_t>(c.source(static_cast<MorId>(f)));
        const auto t = static_cast<std::size_t>(c.target(static_cast<MorId>(f)));
        if (s != t) {
            above[s].set(t);
            below[t].set(s);
        }
    }
    Bits alive(n);
    for (std::size_t x = 0; x < n; ++x) {
        alive.set(x);
    }
    // y covers x when y > x and nothing alive lies strictly between them.
    auto unique_cover = [&](std::size_t x, const std::vector<Bits>& up, const std::vector<Bits>& down) {
        int covers = 0;
        for (std::size_t y = 0; y < n && covers < 2; ++y) {
            if (alive.test(y) && up[x].test(y) && !alive.intersects(up[x], down[y])) {
                ++covers;
            }
        }
        return covers == 1;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (alive.test(x) && (unique_cover(x, above, below) || unique_cover(x, below, above))) {
                alive.reset(x);
                changed = true;
            }
        }
    }
    std::vector<ObjId> core;
    for (std::size_t x = 0; x < n; ++x) {
        if (alive.test(x)) {
            core.push_back(static_cast<ObjId>(x));
        }
    }
    return core;
}

}  // namespace

std::size_t component_count(const FinCategory& c)
{
    std::vector<std::size_t> parent(c.object_count());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::size_t count = c.object_count();
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const std::size_t a = find(static_cast<std::size_t>(c.source(static_cast<MorId>(f))));
        const std::size_t b = find(static_cast<std::size_t>(c.target(static_cast<MorId>(f))));
        if (a != b) {
            parent[a] = b;
            --count;
        }
    }
    return count;
}

std::vector<AbelianGroup> direct_nerve_homology(const FinCategory& cat, int max_degree)
{
    return homology(nerve(cat, max_degree + 1), max_degree);
}

NerveInvariants nerve_invariants(const CategoryPtr& cat, int max_degree)
{
    NerveInvariants out;
    out.objects = cat->object_count();
    out.components = component_count(*cat);
    const Subcategory skel = skeleton(cat);
    out.thin = is_thin(*skel.cat);
    CategoryPtr reduced = skel.cat;
    if (out.thin) {
        const auto core = poset_core(*skel.cat);
        reduced = full_subcategory(skel.cat, core).cat;
    }
    out.reduced_objects = reduced->object_count();
    out.homology = direct_nerve_homology(*reduced, max_degree);
    return out;
}

}  // namespace pmcat
