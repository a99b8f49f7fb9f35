#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"

namespace nodesep {

// Thrown on malformed graph or separator files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// METIS graph format. Header "n m [fmt [ncon]]"; fmt's ones digit flags edge
// weights, the tens digit node weights, the hundreds digit is ignored; ncon
// must be 1 when present. Lines starting with '%' are comments; CRLF and
// arbitrary whitespace are tolerated. The edge list must be symmetric and the
// declared m must match.
Graph parse_metis(std::istream& in);
Graph read_metis_file(const std::string& path);

void write_metis(const Graph& g, std::ostream& out);
void write_metis_file(const Graph& g, const std::string& path);

// Separator files: one line per node, 0 = Block1, 1 = Block2, 2 = separator.
void write_separator(const Partition3& p, std::ostream& out);
void write_separator_file(const Partition3& p, const std::string& path);
std::vector<Label> read_separator(std::istream& in);

}  // namespace nodesep
