#include "mpedm/data.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mpedm {

NormalizeMode parse_normalize_mode(const std::string& s) {
    if (s == "minmax") return NormalizeMode::MinMax;
    if (s == "zscore") return NormalizeMode::ZScore;
    if (s == "none") return NormalizeMode::None;
    throw std::invalid_argument("unknown normalize mode: " + s);
}

std::string to_string(NormalizeMode mode) {
    switch (mode) {
        case NormalizeMode::MinMax: return "minmax";
        case NormalizeMode::ZScore: return "zscore";
        case NormalizeMode::None: return "none";
    }
    return "none";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and CR
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? std::string()
                                                   : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

DataMatrix load_csv(const std::string& path,
                    const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error("load_csv: empty file " + path);

    // header detection: any non-numeric cell in the first line
    std::vector<std::string> header;
    bool has_header = false;
    for (const auto& cell : rows.front()) {
        double ignored;
        if (!parse_double(cell, ignored)) { has_header = true; break; }
    }
    // a non-numeric first row could also be string labels in an unlabeled
    // file; with a single data row there is no way to tell, so treat a
    // lone non-numeric first row followed by numeric rows as a header
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
        if (rows.empty()) throw std::runtime_error("load_csv: header but no data in " + path);
    }

    const std::size_t width = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != width)
            throw std::runtime_error("load_csv: row " + std::to_string(r + 1) +
                                     " has " + std::to_string(rows[r].size()) +
                                     " cells, expected " + std::to_string(width));

    int label_idx = -1;
    if (label_column) {
        int parsed = -1;
        const auto* s = label_column->c_str();
        const auto res = std::from_chars(s, s + label_column->size(), parsed);
        if (res.ec == std::errc{} && res.ptr == s + label_column->size()) {
            label_idx = parsed;
        } else {
            for (std::size_t c = 0; c < header.size(); ++c)
                if (header[c] == *label_column) label_idx = static_cast<int>(c);
            if (label_idx < 0)
                throw std::runtime_error("load_csv: label column '" + *label_column +
                                         "' not found");
        }
        if (label_idx < 0 || label_idx >= static_cast<int>(width))
            throw std::runtime_error("load_csv: label column index out of range");
    }

    const int n = static_cast<int>(rows.size());
    const int d = static_cast<int>(width) - (label_idx >= 0 ? 1 : 0);
    if (d < 1) throw std::runtime_error("load_csv: no feature columns");

    DataMatrix data;
    data.values.resize(d, n);
    std::map<std::string, int> label_ids;
    if (label_idx >= 0) data.true_labels.resize(n);

    for (int r = 0; r < n; ++r) {
        int f = 0;
        for (int c = 0; c < static_cast<int>(width); ++c) {
            if (c == label_idx) {
                const auto it =
                    label_ids.try_emplace(rows[r][c], static_cast<int>(label_ids.size()) + 1)
                        .first;
                data.true_labels[r] = it->second;
                continue;
            }
            double v;
            if (!parse_double(rows[r][c], v))
                throw std::runtime_error("load_csv: unparsable cell at row " +
                                         std::to_string(r + 1) + ", column " +
                                         std::to_string(c + 1) + ": '" + rows[r][c] + "'");
            data.values(f++, r) = v;
        }
    }
    return data;
}

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw std::runtime_error("load_idx: truncated file " + path);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

}  // namespace

DataMatrix load_idx(const std::string& images_path, const std::string& labels_path,
                    std::optional<int> count) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("load_idx: cannot open " + images_path);
    if (read_be32(img, images_path) != 0x00000803u)
        throw std::runtime_error("load_idx: bad image magic in " + images_path);
    const std::uint32_t n_img = read_be32(img, images_path);
    const std::uint32_t rows = read_be32(img, images_path);
    const std::uint32_t cols = read_be32(img, images_path);

    std::ifstream lbl(labels_path, std::ios::binary);
    if (!lbl) throw std::runtime_error("load_idx: cannot open " + labels_path);
    if (read_be32(lbl, labels_path) != 0x00000801u)
        throw std::runtime_error("load_idx: bad label magic in " + labels_path);
    const std::uint32_t n_lbl = read_be32(lbl, labels_path);
    if (n_img != n_lbl)
        throw std::runtime_error("load_idx: image/label counts differ");

    std::uint32_t n = n_img;
    if (count) {
        if (*count < 1 || static_cast<std::uint32_t>(*count) > n_img)
            throw std::runtime_error("load_idx: count out of range");
        n = static_cast<std::uint32_t>(*count);
    }
    const std::uint32_t d = rows * cols;

    DataMatrix data;
    data.values.resize(d, n);
    data.true_labels.resize(n);
    std::vector<unsigned char> pixel(d);
    for (std::uint32_t i = 0; i < n; ++i) {
        img.read(reinterpret_cast<char*>(pixel.data()), d);
        if (!img) throw std::runtime_error("load_idx: truncated image data in " + images_path);
        for (std::uint32_t p = 0; p < d; ++p)
            data.values(p, i) = pixel[p] / 255.0;
        char c;
        lbl.read(&c, 1);
        if (!lbl) throw std::runtime_error("load_idx: truncated label data in " + labels_path);
        data.true_labels[i] = static_cast<unsigned char>(c) + 1;
    }
    return data;
}

DataMatrix normalize(const DataMatrix& data, NormalizeMode mode) {
    if (mode == NormalizeMode::None) return data;
    DataMatrix out = data;
    const int n = data.n();
    for (int f = 0; f < data.d(); ++f) {
        auto row = out.values.row(f);
        if (mode == NormalizeMode::MinMax) {
            const double lo = row.minCoeff();
            const double hi = row.maxCoeff();
            if (hi > lo)
                row = (row.array() - lo) / (hi - lo);
            else
                row.setZero();
        } else {
            const double mean = row.mean();
            const double var = (row.array() - mean).square().sum() / n;
            const double sd = std::sqrt(var);
            if (sd > 0.0)
                row = (row.array() - mean) / sd;
            else
                row.setZero();
        }
    }
    return out;
}

DataMatrix generate_blobs(const BlobSpec& spec) {
    if (spec.centers.empty())
        throw std::invalid_argument("generate_blobs: need at least one center");
    if (spec.points_per_cluster < 1 || spec.variance <= 0.0)
        throw std::invalid_argument("generate_blobs: invalid spec");

    std::mt19937_64 rng(spec.seed);
    const double sigma = std::sqrt(spec.variance);
    // Box-Muller on explicit uniforms keeps the stream platform-independent
    const auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    const auto gauss_pair = [&](double& g1, double& g2) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        g1 = radius * std::cos(2.0 * std::numbers::pi * u2);
        g2 = radius * std::sin(2.0 * std::numbers::pi * u2);
    };

    const int per = spec.points_per_cluster;
    const int n = static_cast<int>(spec.centers.size()) * per;
    DataMatrix data;
    data.values.resize(2, n);
    data.true_labels.resize(n);
    int col = 0;
    for (std::size_t c = 0; c < spec.centers.size(); ++c) {
        for (int p = 0; p < per; ++p, ++col) {
            double gx, gy;
            gauss_pair(gx, gy);
            data.values(0, col) = spec.centers[c].first + sigma * gx;
            data.values(1, col) = spec.centers[c].second + sigma * gy;
            data.true_labels[col] = static_cast<int>(c) + 1;
        }
    }
    return data;
}

}  // namespace mpedm
