#ifndef INVFORGE_FQLIN_HPP
#define INVFORGE_FQLIN_HPP

#include "invforge/field.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace invforge {

/// Dense matrix over F_q, row-major.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(FieldPtr F, std::size_t rows, std::size_t cols)
        : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return *F_; }
    FieldPtr field_ptr() const { return F_; }

    Felt& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Felt at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Felt* row(std::size_t i) { return a_.data() + i * cols_; }
    const Felt* row(std::size_t i) const { return a_.data() + i * cols_; }

    bool operator==(const FqMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    FieldPtr F_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Felt> a_;
};

struct Rref {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols; // one per pivot row, ascending
};

/// Straightforward serial reduction to reduced row echelon form: first
/// available pivot row, full reduction.  Kept as the reference the tuned
/// kernel is tested against; the RREF of a matrix is unique, so both
/// implementations must produce identical output.
Rref rref_reference(FqMatrix& m);

/// Tuned reduction: pivot rows chosen by sparsity, elimination loop runs
/// under OpenMP when worthwhile.
Rref rref(FqMatrix& m);

std::size_t rank(FqMatrix m);

/// Basis of the right null space, one kernel vector per row.  Canonical:
/// derived from the RREF with free columns taken in ascending order and the
/// free coordinate set to 1.
FqMatrix kernel_basis(const FqMatrix& m);

/// Membership of v in the row space of a matrix already in RREF.
bool in_row_span(const FqMatrix& reduced, const Rref& info, std::span<const Felt> v);

/// Residue of v after reduction against the pivot rows (zero iff in span).
std::vector<Felt> reduce_against(const FqMatrix& reduced, const Rref& info,
                                 std::span<const Felt> v);

} // namespace invforge

#endif
