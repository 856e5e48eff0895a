#include "diracfem/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace diracfem {

void SparseSpd::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw Error("SparseSpd::multiply: size mismatch");
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += values[k] * x[col_idx[k]];
        y[i] = acc;
    }
}

std::vector<double> SparseSpd::diagonal() const {
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (col_idx[k] == i) d[i] = values[k];
    return d;
}

double SparseSpd::entry(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col_idx[k] == j) return values[k];
    return 0.0;
}

SparseSpd TripletBuilder::compress() const {
    // stable sort keeps insertion order within equal (i, j), so duplicate
    // summation order is deterministic
    std::vector<int> order(triplets_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
        if (triplets_[a].i != triplets_[b].i) return triplets_[a].i < triplets_[b].i;
        return triplets_[a].j < triplets_[b].j;
    });

    SparseSpd a;
    a.n = n_;
    a.row_ptr.assign(n_ + 1, 0);
    int last_i = -1, last_j = -1;
    for (int idx : order) {
        const Triplet& t = triplets_[idx];
        if (t.i < 0 || t.i >= n_ || t.j < 0 || t.j >= n_)
            throw Error("TripletBuilder: index out of range");
        if (t.i == last_i && t.j == last_j) {
            a.values.back() += t.v;
        } else {
            a.col_idx.push_back(t.j);
            a.values.push_back(t.v);
            ++a.row_ptr[t.i + 1];
            last_i = t.i;
            last_j = t.j;
        }
    }
    for (int i = 0; i < n_; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
    return a;
}

void write_matrix_market(const SparseSpd& a, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n << ' ' << a.n << ' ' << a.nnz() << '\n';
    char buf[64];
    for (int i = 0; i < a.n; ++i) {
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, a.col_idx[k] + 1, a.values[k]);
            out << buf;
        }
    }
}

}  // namespace diracfem
