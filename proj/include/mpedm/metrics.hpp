#ifndef MPEDM_METRICS_HPP
#define MPEDM_METRICS_HPP

#include <vector>

namespace mpedm {

/// Cross-tabulation of two labelings over the same n samples.
struct ContingencyTable {
    std::vector<std::vector<long long>> counts;  // K x L
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;
};

ContingencyTable contingency_table(const std::vector<int>& a, const std::vector<int>& b);

/// Fraction of unordered sample pairs on which the two labelings agree.
double rand_index(const std::vector<int>& true_labels,
                  const std::vector<int>& pred_labels);

struct NmiResult {
    double value = 0.0;
    bool degenerate = false;  // one side is a single class
};

/// Mutual information normalized by the geometric mean of the partition
/// entropies (natural log; the ratio is base-invariant). When either
/// labeling has a single class the entropy product vanishes; the value is
/// then 1 for identical partitions and 0 otherwise, flagged degenerate.
NmiResult nmi(const std::vector<int>& true_labels, const std::vector<int>& pred_labels);

}  // namespace mpedm

#endif
