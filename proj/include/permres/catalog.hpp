#pragma once

#include "permres/group.hpp"

namespace permres {

// Built-in groups by name. Aliases: "D4" for the dihedral group of order 8
// (also named "D8"), "K4" for "V4".
GroupPtr catalog_group(const std::string& name);

std::vector<std::string> catalog_names();

struct CatalogEntry {
    std::string name;
    int degree;
    std::vector<Perm> generators;
};
CatalogEntry catalog_entry(const std::string& name);

}  // namespace permres
