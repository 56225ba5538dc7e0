#include "permres/catalog.hpp"

#include <map>

namespace permres {

static Perm cycle(int degree, const std::vector<int>& pts) {
    Perm p = perm_identity(degree);
    for (size_t i = 0; i < pts.size(); ++i) p[pts[i]] = pts[(i + 1) % pts.size()];
    return p;
}

static std::map<std::string, CatalogEntry> build_catalog() {
    std::map<std::string, CatalogEntry> m;
    auto add = [&](const std::string& name, int deg, std::vector<Perm> gens) {
        m[name] = CatalogEntry{name, deg, std::move(gens)};
    };
    add("1", 1, {});
    add("C2", 2, {cycle(2, {0, 1})});
    add("C3", 3, {cycle(3, {0, 1, 2})});
    add("C4", 4, {cycle(4, {0, 1, 2, 3})});
    add("C5", 5, {cycle(5, {0, 1, 2, 3, 4})});
    add("C6", 6, {cycle(6, {0, 1, 2, 3, 4, 5})});
    add("C7", 7, {cycle(7, {0, 1, 2, 3, 4, 5, 6})});
    add("C8", 8, {cycle(8, {0, 1, 2, 3, 4, 5, 6, 7})});
    add("C9", 9, {cycle(9, {0, 1, 2, 3, 4, 5, 6, 7, 8})});
    add("V4", 4, {cycle(4, {0, 1}), cycle(4, {2, 3})});
    add("C2xC4", 6, {cycle(6, {0, 1}), cycle(6, {2, 3, 4, 5})});
    add("C2^3", 6, {cycle(6, {0, 1}), cycle(6, {2, 3}), cycle(6, {4, 5})});
    add("C3xC3", 6, {cycle(6, {0, 1, 2}), cycle(6, {3, 4, 5})});
    add("S3", 3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})});
    // dihedral of order 8: rotation + reflection
    add("D8", 4, {cycle(4, {0, 1, 2, 3}), cycle(4, {1, 3})});
    // quaternion group in its regular representation on 8 points
    {
        Perm i8 = perm_compose(cycle(8, {0, 1, 2, 3}), cycle(8, {4, 7, 6, 5}));
        Perm j8 = perm_compose(cycle(8, {0, 4, 2, 6}), cycle(8, {1, 5, 3, 7}));
        add("Q8", 8, {i8, j8});
    }
    add("A4", 4, {cycle(4, {0, 1, 2}), perm_compose(cycle(4, {0, 1}), cycle(4, {2, 3}))});
    return m;
}

static const std::map<std::string, CatalogEntry>& catalog() {
    static const std::map<std::string, CatalogEntry> m = build_catalog();
    return m;
}

static std::string resolve_alias(const std::string& name) {
    if (name == "D4") return "D8";
    if (name == "K4") return "V4";
    return name;
}

CatalogEntry catalog_entry(const std::string& name) {
    auto it = catalog().find(resolve_alias(name));
    if (it == catalog().end()) throw Error("catalog: unknown group name '" + name + "'");
    return it->second;
}

GroupPtr catalog_group(const std::string& name) {
    CatalogEntry e = catalog_entry(name);
    return enumerate_group(e.degree, e.generators);
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : catalog()) out.push_back(k);
    return out;
}

}  // namespace permres
