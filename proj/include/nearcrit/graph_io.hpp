#pragma once

#include <iosfwd>
#include <string>

#include "nearcrit/multigraph.hpp"

namespace nearcrit {

// Edge-list text format: first line "n m", then m lines "u v" (0-based,
// loops written as "u u"). The writer emits edges sorted lexicographically
// with u <= v per line; the reader tolerates arbitrary order.

void write_edge_list(std::ostream& out, const MultiGraph& g);
void write_edge_list_file(const std::string& path, const MultiGraph& g);

MultiGraph read_edge_list(std::istream& in);
MultiGraph read_edge_list_file(const std::string& path);

}  // namespace nearcrit
