#pragma once

#include "pmcat/document.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pmcat::testing {

/// pt, I1, Iw, J, B2, P4.
[[nodiscard]] const std::vector<std::string>& fixture_names();
/// The fixtures satisfying the partial model axioms (all but P4).
[[nodiscard]] const std::vector<std::string>& model_fixture_names();

[[nodiscard]] std::string fixture_path(std::string_view name);
[[nodiscard]] std::string read_file(const std::string& path);
[[nodiscard]] LoadedDocument load_fixture(std::string_view name);

/// Thin category on objects "0".."n-1" with a morphism "ij" whenever leq(i, j) (leq must be
/// a preorder); identities keep their default names.
[[nodiscard]] CategoryPtr preorder_category(int n, const std::function<bool(int, int)>& leq);

/// The relation of a thin category: rel[a][b] when hom(a, b) is inhabited by a morphism
/// accepted by `keep`.
[[nodiscard]] std::vector<std::vector<char>> relation_of(const FinCategory& c,
                                                         const std::function<bool(MorId)>& keep);

}  // namespace pmcat::testing
