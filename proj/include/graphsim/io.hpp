#pragma once

#include <iosfwd>
#include <string>

#include "graphsim/graph.hpp"
#include "graphsim/sampling.hpp"
#include "graphsim/symmat.hpp"

namespace graphsim {

// Matrix file: header "symmat m", then m rows of m reals. The reader
// validates symmetry within 1e-12 and errors otherwise.
void write_symmat(std::ostream& os, const SymMatrix& M);
SymMatrix read_symmat(std::istream& is);
void save_symmat(const std::string& path, const SymMatrix& M);
SymMatrix load_symmat(const std::string& path);

// Graph file: header "graph m", then one "u v" edge per line, 0-indexed.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

// Dataset file: header "pairs n m", then lines "u v y".
void write_dataset(std::ostream& os, const Dataset& ds);
Dataset read_dataset(std::istream& is);
void save_dataset(const std::string& path, const Dataset& ds);
Dataset load_dataset(const std::string& path);

}  // namespace graphsim
