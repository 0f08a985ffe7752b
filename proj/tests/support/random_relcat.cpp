#include "support/random_relcat.hpp"

#include "support/fixtures.hpp"

#include <algorithm>
#include <numeric>

namespace pmcat::testing {

void close_preorder(std::vector<std::vector<char>>& rel)
{
    const std::size_t n = rel.size();
    for (std::size_t i = 0; i < n; ++i) {
        rel[i][i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                rel[i][j] = rel[i][j] || (rel[i][k] && rel[k][j]);
            }
        }
    }
}

std::vector<std::vector<char>> random_preorder(std::mt19937_64& rng, int n, double density)
{
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<char>> rel(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto& row : rel) {
        for (auto& x : row) {
            x = coin(rng) ? 1 : 0;
        }
    }
    close_preorder(rel);
    return rel;
}

namespace {

/// Random sub-relation of `leq`, closed under composition.
std::vector<std::vector<char>> random_closed(std::mt19937_64& rng, const std::vector<std::vector<char>>& leq,
                                             double density)
{
    std::bernoulli_distribution coin(density);
    auto w = leq;
    for (auto& row : w) {
        for (auto& x : row) {
            x = x && coin(rng) ? 1 : 0;
        }
    }
    close_preorder(w);
    return w;
}

/// W = pairs with equal value under a monotone map to a chain.
std::vector<std::vector<char>> monotone_kernel(std::mt19937_64& rng, const std::vector<std::vector<char>>& leq)
{
    const int n = static_cast<int>(leq.size());
    // Topological order of the strongly connected blocks: sort by number of predecessors.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto below = [&](int i) {
        int c = 0;
        for (int j = 0; j < n; ++j) {
            c += leq[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        return c;
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below(a) < below(b); });
    std::vector<int> value(static_cast<std::size_t>(n), 0);
    std::bernoulli_distribution step(0.5);
    int current = 0;
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p > 0 && step(rng)) {
            ++current;
        }
        value[static_cast<std::size_t>(order[p])] = current;
    }
    // Monotone: lift every value to the maximum over its predecessors.
    for (int round = 0; round < n; ++round) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (leq[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                    value[static_cast<std::size_t>(i)] =
                        std::max(value[static_cast<std::size_t>(i)], value[static_cast<std::size_t>(j)]);
                }
            }
        }
    }
    auto w = leq;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                value[static_cast<std::size_t>(i)] == value[static_cast<std::size_t>(j)];
        }
    }
    return w;
}

}  // namespace

RandomRelCat random_relcat(std::mt19937_64& rng, int max_objects)
{
    RandomRelCat out;
    out.objects = std::uniform_int_distribution<int>(1, max_objects)(rng);
    const double density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
    out.leq = random_preorder(rng, out.objects, density);
    const int mode = std::uniform_int_distribution<int>(0, 2)(rng);
    if (mode == 0) {
        out.mode = "closed";
        out.weq = random_closed(rng, out.leq, std::uniform_real_distribution<double>(0.2, 0.9)(rng));
    } else if (mode == 1) {
        out.mode = "kernel";
        out.weq = monotone_kernel(rng, out.leq);
    } else {
        out.mode = "isos";
        out.weq = random_closed(rng, out.leq, 0.3);
        for (int i = 0; i < out.objects; ++i) {
            for (int j = 0; j < out.objects; ++j) {
                const auto a = static_cast<std::size_t>(i);
                const auto b = static_cast<std::size_t>(j);
                if (out.leq[a][b] && out.leq[b][a]) {
                    out.weq[a][b] = 1;
                }
            }
        }
        close_preorder(out.weq);
    }
    const auto& leq = out.leq;
    const CategoryPtr cat = preorder_category(out.objects, [&leq](int i, int j) {
        return leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
    });
    std::vector<MorId> marked;
    for (std::size_t f = 0; f < cat->morphism_count(); ++f) {
        const auto s = static_cast<std::size_t>(cat->source(static_cast<MorId>(f)));
        const auto t = static_cast<std::size_t>(cat->target(static_cast<MorId>(f)));
        if (out.weq[s][t]) {
            marked.push_back(static_cast<MorId>(f));
        }
    }
    out.rc = RelCategory::with_weq(cat, marked);
    return out;
}

}  // namespace pmcat::testing
