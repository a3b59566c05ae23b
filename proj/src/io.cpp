#include "graphsim/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace graphsim {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

void expect_header(std::istream& is, const std::string& tag) {
    std::string word;
    if (!(is >> word) || word != tag)
        throw std::runtime_error("bad file header, expected '" + tag + "'");
}

}  // namespace

void write_symmat(std::ostream& os, const SymMatrix& M) {
    const int m = M.dim();
    os << "symmat " << m << "\n";
    os << std::setprecision(17);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) os << (j ? " " : "") << M(i, j);
        os << "\n";
    }
}

SymMatrix read_symmat(std::istream& is) {
    expect_header(is, "symmat");
    int m = 0;
    if (!(is >> m) || m < 1) throw std::runtime_error("symmat: bad dimension");
    std::vector<double> full(static_cast<std::size_t>(m) * m);
    for (auto& x : full)
        if (!(is >> x)) throw std::runtime_error("symmat: truncated matrix body");
    SymMatrix M(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const double a = full[static_cast<std::size_t>(i) * m + j];
            const double b = full[static_cast<std::size_t>(j) * m + i];
            if (std::fabs(a - b) > 1e-12)
                throw std::runtime_error("symmat: matrix is not symmetric within 1e-12");
            M.set(i, j, a);
        }
    return M;
}

void write_graph(std::ostream& os, const Graph& g) {
    os << "graph " << g.m << "\n";
    for (auto [u, v] : g.edges) os << u << " " << v << "\n";
}

Graph read_graph(std::istream& is) {
    expect_header(is, "graph");
    Graph g;
    if (!(is >> g.m) || g.m < 2) throw std::runtime_error("graph: bad vertex count");
    int u, v;
    while (is >> u >> v) {
        if (u < 0 || v < 0 || u >= g.m || v >= g.m || u == v)
            throw std::runtime_error("graph: bad edge");
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    return g;
}

void write_dataset(std::ostream& os, const Dataset& ds) {
    os << "pairs " << ds.n << " " << ds.m << "\n";
    for (const auto& o : ds.triples) os << o.u << " " << o.v << " " << o.y << "\n";
}

Dataset read_dataset(std::istream& is) {
    expect_header(is, "pairs");
    Dataset ds;
    if (!(is >> ds.n >> ds.m) || ds.n < 1 || ds.m < 1)
        throw std::runtime_error("pairs: bad header counts");
    ds.seed = 0;  // externally loaded
    ds.triples.reserve(ds.n);
    int u, v, y;
    while (is >> u >> v >> y) {
        if (u < 0 || v < 0 || u >= ds.m || v >= ds.m || (y != 1 && y != -1))
            throw std::runtime_error("pairs: bad observation");
        ds.triples.push_back({u, v, y});
    }
    if (static_cast<int>(ds.triples.size()) != ds.n)
        throw std::runtime_error("pairs: observation count does not match header");
    return ds;
}

void save_symmat(const std::string& path, const SymMatrix& M) {
    auto f = open_out(path);
    write_symmat(f, M);
}
SymMatrix load_symmat(const std::string& path) {
    auto f = open_in(path);
    return read_symmat(f);
}
void save_graph(const std::string& path, const Graph& g) {
    auto f = open_out(path);
    write_graph(f, g);
}
Graph load_graph(const std::string& path) {
    auto f = open_in(path);
    return read_graph(f);
}
void save_dataset(const std::string& path, const Dataset& ds) {
    auto f = open_out(path);
    write_dataset(f, ds);
}
Dataset load_dataset(const std::string& path) {
    auto f = open_in(path);
    return read_dataset(f);
}

}  // namespace graphsim
