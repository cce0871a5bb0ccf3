#ifndef EINROL_DENSE_TENSOR_HPP
#define EINROL_DENSE_TENSOR_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "einrol/error.hpp"
#include "einrol/mode_shape.hpp"

namespace einrol
{

using Complex = std::complex<double>;

//
// Dense complex tensor with a row/column mode split. Entries are stored
// row-major over the concatenated index tuple (i_1..i_N, j_1..j_M), last index
// fastest, so entry (r, c) of the matricized view sits at r * col_count + c.
//
// Immutable after construction.
//
class DenseTensor
{
public:
    DenseTensor() : data_(1) {}

    explicit DenseTensor(ModeShape shape)
        : shape_(std::move(shape)), data_(shape_.size())
    {
    }

    DenseTensor(ModeShape shape, std::vector<Complex> entries)
        : shape_(std::move(shape)), data_(std::move(entries))
    {
        if (data_.size() != shape_.size())
        {
            throw Error(Errc::length_mismatch,
                        "tensor of shape " + shape_.to_string() + " needs " +
                            std::to_string(shape_.size()) + " entries, got " +
                            std::to_string(data_.size()));
        }
        for (std::size_t k = 0; k < data_.size(); ++k)
        {
            if (!std::isfinite(data_[k].real()) ||
                !std::isfinite(data_[k].imag()))
            {
                throw Error(Errc::non_finite_value,
                            "entry " + std::to_string(k) + " is not finite",
                            k);
            }
        }
    }

    static DenseTensor zeros(ModeShape shape)
    {
        return DenseTensor(std::move(shape));
    }

    const ModeShape& shape() const noexcept { return shape_; }
    std::span<const Complex> entries() const noexcept { return data_; }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t rows() const noexcept { return shape_.row_count(); }
    std::size_t cols() const noexcept { return shape_.col_count(); }

    // Entry at flattened (row, col) position.
    const Complex& operator()(std::size_t row, std::size_t col) const
    {
        return data_[row * shape_.col_count() + col];
    }

    // Entry at a full index tuple: row modes first, then column modes.
    const Complex& at(std::span<const std::size_t> index) const
    {
        const std::size_t n = shape_.row_dims().size();
        if (index.size() != shape_.order())
        {
            throw Error(Errc::shape_mismatch, "index arity does not match "
                                              "tensor order");
        }
        return (*this)(shape_.row_offset(index.first(n)),
                       shape_.col_offset(index.subspan(n)));
    }

    friend bool operator==(const DenseTensor& a, const DenseTensor& b)
    {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }

private:
    ModeShape shape_;
    std::vector<Complex> data_;
};

} // namespace einrol

#endif // EINROL_DENSE_TENSOR_HPP
