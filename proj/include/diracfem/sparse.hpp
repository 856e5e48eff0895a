#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "diracfem/common.hpp"

namespace diracfem {

/// Compressed-sparse-row symmetric positive (semi)definite matrix.
struct SparseSpd {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> values;

    int nnz() const { return static_cast<int>(values.size()); }
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> diagonal() const;
    double entry(int i, int j) const;  // zero when the position is not stored
};

/// Accumulates (i, j, v) triplets and compresses them into CSR with
/// duplicate entries summed in insertion order.
class TripletBuilder {
  public:
    explicit TripletBuilder(int n) : n_(n) {}
    void add(int i, int j, double v) { triplets_.push_back({i, j, v}); }
    void reserve(size_t count) { triplets_.reserve(count); }
    SparseSpd compress() const;

  private:
    struct Triplet {
        int i;
        int j;
        double v;
    };
    int n_;
    std::vector<Triplet> triplets_;
};

/// MatrixMarket coordinate text (general, 1-based), for debugging dumps.
void write_matrix_market(const SparseSpd& a, std::ostream& out);

}  // namespace diracfem
