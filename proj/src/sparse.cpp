#include "robinssn/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace robinssn {

SparseOperator SparseOperator::from_triplets(Eigen::Index dim, std::vector<Triplet> triplets,
                                             bool symmetric) {
    SparseOperator op;
    op.dim_ = dim;
    op.symmetric_ = symmetric;

    // Stable sort keeps the accumulation order of duplicate (i,j) and (j,i)
    // entries identical, so symmetric assemblies stay bitwise symmetric.
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    op.row_ptr_.assign(static_cast<std::size_t>(dim) + 1, 0);
    for (std::size_t k = 0; k < triplets.size();) {
        const int row = triplets[k].row;
        const int col = triplets[k].col;
        if (row < 0 || row >= dim || col < 0 || col >= dim)
            throw std::invalid_argument("SparseOperator: triplet index out of range");
        double sum = 0.0;
        for (; k < triplets.size() && triplets[k].row == row && triplets[k].col == col; ++k)
            sum += triplets[k].value;
        if (sum != 0.0) {
            op.col_idx_.push_back(col);
            op.values_.push_back(sum);
            ++op.row_ptr_[static_cast<std::size_t>(row) + 1];
        }
    }
    for (std::size_t r = 0; r < static_cast<std::size_t>(dim); ++r)
        op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (Eigen::Index r = 0; r < dim_; ++r)
        for (auto k = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r)]);
             k < static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r) + 1]); ++k)
            y[r] += values_[k] * x[col_idx_[k]];
    return y;
}

Eigen::VectorXd SparseOperator::apply_transpose(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (Eigen::Index r = 0; r < dim_; ++r)
        for (auto k = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r)]);
             k < static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r) + 1]); ++k)
            y[col_idx_[k]] += values_[k] * x[r];
    return y;
}

SparseOperator SparseOperator::plus(const SparseOperator& other) const {
    if (dim_ != other.dim_)
        throw std::invalid_argument("SparseOperator::plus: dimension mismatch");
    std::vector<Triplet> triplets;
    triplets.reserve(values_.size() + other.values_.size());
    auto collect = [&triplets](const SparseOperator& op) {
        for (Eigen::Index r = 0; r < op.dim_; ++r)
            for (auto k = static_cast<std::size_t>(op.row_ptr_[static_cast<std::size_t>(r)]);
                 k < static_cast<std::size_t>(op.row_ptr_[static_cast<std::size_t>(r) + 1]); ++k)
                triplets.push_back({static_cast<int>(r), op.col_idx_[k], op.values_[k]});
    };
    collect(*this);
    collect(other);
    return from_triplets(dim_, std::move(triplets), symmetric_ && other.symmetric_);
}

Eigen::SparseMatrix<double> SparseOperator::to_eigen() const {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(values_.size());
    for (Eigen::Index r = 0; r < dim_; ++r)
        for (auto k = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r)]);
             k < static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r) + 1]); ++k)
            triplets.emplace_back(static_cast<int>(r), col_idx_[k], values_[k]);
    Eigen::SparseMatrix<double> m(dim_, dim_);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (Eigen::Index r = 0; r < dim_; ++r)
        for (auto k = static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r)]);
             k < static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r) + 1]); ++k)
            m(r, col_idx_[k]) += values_[k];
    return m;
}

} // namespace robinssn
