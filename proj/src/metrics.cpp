#include "mpedm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mpedm {

namespace {

std::vector<int> dense_ids(const std::vector<int>& labels, int& num_classes) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = remap.try_emplace(labels[i], static_cast<int>(remap.size())).first;
        out[i] = it->second;
    }
    num_classes = static_cast<int>(remap.size());
    return out;
}

long long pairs(long long m) { return m * (m - 1) / 2; }

}  // namespace

ContingencyTable contingency_table(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("contingency_table: label vectors differ in length");
    int ka = 0, kb = 0;
    const std::vector<int> ia = dense_ids(a, ka);
    const std::vector<int> ib = dense_ids(b, kb);

    ContingencyTable t;
    t.counts.assign(ka, std::vector<long long>(kb, 0));
    t.row_sums.assign(ka, 0);
    t.col_sums.assign(kb, 0);
    t.total = static_cast<long long>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[ia[i]][ib[i]];
        ++t.row_sums[ia[i]];
        ++t.col_sums[ib[i]];
    }
    return t;
}

double rand_index(const std::vector<int>& true_labels,
                  const std::vector<int>& pred_labels) {
    if (true_labels.size() != pred_labels.size() || true_labels.size() < 2)
        throw std::invalid_argument("rand_index: need two labelings of equal length >= 2");
    const ContingencyTable t = contingency_table(true_labels, pred_labels);

    long long same_both = 0, same_true = 0, same_pred = 0;
    for (const auto& row : t.counts)
        for (long long c : row) same_both += pairs(c);
    for (long long c : t.row_sums) same_true += pairs(c);
    for (long long c : t.col_sums) same_pred += pairs(c);

    const long long all = pairs(t.total);
    const long long tn = all - same_true - same_pred + same_both;
    return static_cast<double>(same_both + tn) / static_cast<double>(all);
}

NmiResult nmi(const std::vector<int>& true_labels, const std::vector<int>& pred_labels) {
    if (true_labels.size() != pred_labels.size() || true_labels.empty())
        throw std::invalid_argument("nmi: need two labelings of equal nonzero length");
    const ContingencyTable t = contingency_table(true_labels, pred_labels);
    const auto K = t.row_sums.size();
    const auto L = t.col_sums.size();
    const double n = static_cast<double>(t.total);

    if (K == 1 || L == 1) {
        // single-class side: entropy product vanishes, the ratio is undefined
        NmiResult r;
        r.degenerate = true;
        r.value = (K == 1 && L == 1) ? 1.0 : 0.0;
        return r;
    }

    if (K == L) {
        // identical partitions up to relabeling: MI equals both entropies,
        // so return 1 exactly instead of rounding through logs
        bool bijective = true;
        for (std::size_t k = 0; k < K && bijective; ++k) {
            long long nonzero = 0, largest = 0;
            for (long long c : t.counts[k])
                if (c > 0) { ++nonzero; largest = c; }
            bijective = nonzero == 1 && largest == t.row_sums[k];
        }
        if (bijective) {
            NmiResult r;
            r.value = 1.0;
            return r;
        }
    }

    double numer = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < L; ++l) {
            const double c = static_cast<double>(t.counts[k][l]);
            if (c > 0.0)
                numer += c * std::log(n * c / (static_cast<double>(t.row_sums[k]) *
                                               static_cast<double>(t.col_sums[l])));
        }
    double h_true = 0.0, h_pred = 0.0;
    for (long long c : t.row_sums)
        if (c > 0) h_true += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
    for (long long c : t.col_sums)
        if (c > 0) h_pred += static_cast<double>(c) * std::log(static_cast<double>(c) / n);

    NmiResult r;
    r.value = numer / std::sqrt(h_true * h_pred);
    // rounding can push the ratio a hair outside [0, 1]
    r.value = std::min(1.0, std::max(0.0, r.value));
    return r;
}

}  // namespace mpedm
