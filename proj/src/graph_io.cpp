#include "qim/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qim {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& raw, double& out) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    if (begin == end) return false;
    try {
        std::size_t used = 0;
        out = std::stod(raw.substr(begin, end - begin), &used);
        return used == end - begin;
    } catch (const std::exception&) {
        return false;
    }
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

AdjacencyMatrix finalize(Eigen::MatrixXd w, bool symmetrize) {
    if (symmetrize) {
        w = 0.5 * (w + Eigen::MatrixXd(w.transpose()));
    }
    return AdjacencyMatrix(std::move(w));
}

AdjacencyMatrix read_adjacency_csv(std::istream& in, const GraphReadOptions& options) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        const auto fields = split_csv_line(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_double(fields[i], row[i])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;  // header row
                continue;
            }
            throw std::runtime_error("adjacency csv: non-numeric entry in row " +
                                     std::to_string(rows.size() + 1));
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("adjacency csv: no data rows");
    const std::size_t v = rows.size();
    for (const auto& row : rows) {
        if (row.size() != v) {
            throw std::runtime_error("adjacency csv: matrix is not square (" + std::to_string(v) +
                                     " rows, row with " + std::to_string(row.size()) + " columns)");
        }
    }
    Eigen::MatrixXd w(v, v);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return finalize(std::move(w), options.symmetrize);
}

AdjacencyMatrix read_edgelist(std::istream& in, const GraphReadOptions& options) {
    if (options.nodes < 1) {
        throw std::invalid_argument("edgelist input requires an explicit node count");
    }
    const int v = options.nodes;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(v, v);
    Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(v, v);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        std::istringstream ss(body);
        long long i = -1, j = -1;
        double weight = 1.0;
        if (!(ss >> i >> j)) {
            throw std::runtime_error("edgelist line " + std::to_string(lineno) + ": expected 'i j [w]'");
        }
        ss >> weight;
        if (i < 0 || j < 0 || i >= v || j >= v) {
            throw std::runtime_error("edgelist line " + std::to_string(lineno) +
                                     ": node index out of range for v=" + std::to_string(v));
        }
        if (i == j) {
            throw std::runtime_error("edgelist line " + std::to_string(lineno) + ": self-loop");
        }
        if (!std::isfinite(weight)) {
            throw std::runtime_error("edgelist line " + std::to_string(lineno) + ": non-finite weight");
        }
        if (seen(i, j) != 0.0) {
            throw std::runtime_error("edgelist line " + std::to_string(lineno) + ": duplicate edge (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        }
        seen(i, j) = seen(j, i) = 1.0;
        w(i, j) = w(j, i) = weight;
    }
    return finalize(std::move(w), options.symmetrize);
}

}  // namespace

GraphFormat graph_format_from_string(const std::string& s) {
    if (s == "adjacency-csv" || s == "csv") return GraphFormat::adjacency_csv;
    if (s == "edgelist") return GraphFormat::edgelist;
    throw std::invalid_argument("unknown graph format: " + s);
}

AdjacencyMatrix read_graph(std::istream& in, const GraphReadOptions& options) {
    return options.format == GraphFormat::adjacency_csv ? read_adjacency_csv(in, options)
                                                        : read_edgelist(in, options);
}

AdjacencyMatrix read_graph(const std::filesystem::path& path, const GraphReadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path.string());
    try {
        return read_graph(in, options);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_adjacency_csv(const AdjacencyMatrix& g, std::ostream& out) {
    const auto& w = g.weights();
    out.precision(17);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            if (j) out << ',';
            out << w(i, j);
        }
        out << '\n';
    }
}

void write_adjacency_csv(const AdjacencyMatrix& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path.string());
    write_adjacency_csv(g, out);
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path.string());
    const auto base = manifest_path.parent_path();
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip(line);
        if (body.empty()) continue;
        const auto fields = split_csv_line(body);
        if (fields.size() != 2) {
            throw std::runtime_error("manifest line " + std::to_string(lineno) +
                                     ": expected 'path,group'");
        }
        const std::string p = strip(fields[0]);
        const std::string grp = strip(fields[1]);
        if (lineno == 1 && p == "path" && (grp == "group" || grp == "Group")) continue;
        if (grp != "A" && grp != "B") {
            throw std::runtime_error("manifest line " + std::to_string(lineno) +
                                     ": group must be A or B, got '" + grp + "'");
        }
        std::filesystem::path fp(p);
        if (fp.is_relative()) fp = base / fp;
        entries.push_back({fp, grp[0]});
    }
    return entries;
}

}  // namespace qim
