#ifndef ROBINSSN_SPARSE_HPP
#define ROBINSSN_SPARSE_HPP

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace robinssn {

/// Square sparse matrix in compressed row storage. Assembled once from
/// triplets (duplicates summed, exact zeros dropped) and immutable afterwards.
class SparseOperator {
public:
    struct Triplet {
        int row;
        int col;
        double value;
    };

    SparseOperator() = default;

    static SparseOperator from_triplets(Eigen::Index dim, std::vector<Triplet> triplets,
                                        bool symmetric);

    Eigen::Index dim() const { return dim_; }
    bool symmetric() const { return symmetric_; }
    Eigen::Index nnz() const { return static_cast<Eigen::Index>(values_.size()); }

    const std::vector<Eigen::Index>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

    /// Entrywise sum; patterns are merged. Both operands must share dim.
    SparseOperator plus(const SparseOperator& other) const;

    Eigen::SparseMatrix<double> to_eigen() const;
    Eigen::MatrixXd to_dense() const;

private:
    Eigen::Index dim_ = 0;
    bool symmetric_ = false;
    std::vector<Eigen::Index> row_ptr_;
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

} // namespace robinssn

#endif
