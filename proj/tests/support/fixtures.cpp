#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>

namespace pmcat::testing {

const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{"pt", "I1", "Iw", "J", "B2", "P4"};
    return names;
}

const std::vector<std::string>& model_fixture_names()
{
    static const std::vector<std::string> names{"pt", "I1", "Iw", "J", "B2"};
    return names;
}

std::string fixture_path(std::string_view name)
{
    return std::string(PMCAT_FIXTURE_DIR) + "/" + std::string(name) + ".relcat";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

LoadedDocument load_fixture(std::string_view name)
{
    return interpret(parse_document_text(read_file(fixture_path(name))));
}

CategoryPtr preorder_category(int n, const std::function<bool(int, int)>& leq)
{
    CategoryDescription d;
    for (int i = 0; i < n; ++i) {
        d.objects.push_back(std::to_string(i));
    }
    auto name = [](int i, int j) { return i == j ? identity_name(std::to_string(i)) : std::to_string(i) + std::to_string(j); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && leq(i, j)) {
                d.morphisms.push_back({name(i, j), std::to_string(i), std::to_string(j)});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (i != j && j != k && leq(i, j) && leq(j, k)) {
                    d.composites.push_back({name(i, j), name(j, k), name(i, k)});
                }
            }
        }
    }
    return share(FinCategory::from_description(d));
}

std::vector<std::vector<char>> relation_of(const FinCategory& c, const std::function<bool(MorId)>& keep)
{
    std::vector<std::vector<char>> rel(c.object_count(), std::vector<char>(c.object_count(), 0));
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (keep(static_cast<MorId>(f))) {
            rel[static_cast<std::size_t>(c.source(static_cast<MorId>(f)))]
               [static_cast<std::size_t>(c.target(static_cast<MorId>(f)))] = 1;
        }
    }
    return rel;
}

}  // namespace pmcat::testing
