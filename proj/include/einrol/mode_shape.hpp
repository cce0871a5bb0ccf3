#ifndef EINROL_MODE_SHAPE_HPP
#define EINROL_MODE_SHAPE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "einrol/error.hpp"

namespace einrol
{

using Dims = std::vector<std::size_t>;

namespace detail
{
inline std::size_t checked_product(const Dims& dims)
{
    std::size_t n = 1;
    for (std::size_t d : dims)
    {
        if (d < 1)
        {
            throw Error(Errc::invalid_argument, "mode dimension must be >= 1");
        }
        if (n > std::numeric_limits<std::size_t>::max() / d)
        {
            throw Error(Errc::invalid_argument, "mode dimensions overflow");
        }
        n *= d;
    }
    return n;
}

inline std::string dims_to_string(const Dims& dims)
{
    std::string s = "[";
    for (std::size_t k = 0; k < dims.size(); ++k)
    {
        if (k != 0)
            s += ",";
        s += std::to_string(dims[k]);
    }
    return s + "]";
}
} // namespace detail

//
// Row modes (I_1..I_N) and column modes (J_1..J_M) of a tensor viewed as a
// linear map. Either list may be empty, in which case that side has count 1.
//
class ModeShape
{
public:
    ModeShape() = default;

    ModeShape(Dims row_dims, Dims col_dims)
        : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims))
    {
        row_count_ = detail::checked_product(row_dims_);
        col_count_ = detail::checked_product(col_dims_);
        if (row_count_ > std::numeric_limits<std::size_t>::max() / col_count_)
        {
            throw Error(Errc::invalid_argument, "tensor size overflows");
        }
    }

    const Dims& row_dims() const noexcept { return row_dims_; }
    const Dims& col_dims() const noexcept { return col_dims_; }
    std::size_t row_count() const noexcept { return row_count_; }
    std::size_t col_count() const noexcept { return col_count_; }
    std::size_t size() const noexcept { return row_count_ * col_count_; }
    std::size_t order() const noexcept
    {
        return row_dims_.size() + col_dims_.size();
    }

    bool is_square() const noexcept { return row_dims_ == col_dims_; }

    ModeShape transposed() const { return ModeShape(col_dims_, row_dims_); }

    // Flattened row index of a row tuple, last index fastest.
    std::size_t row_offset(std::span<const std::size_t> index) const
    {
        return offset(row_dims_, index);
    }

    std::size_t col_offset(std::span<const std::size_t> index) const
    {
        return offset(col_dims_, index);
    }

    std::string to_string() const
    {
        return detail::dims_to_string(row_dims_) + "x" +
               detail::dims_to_string(col_dims_);
    }

    friend bool operator==(const ModeShape& a, const ModeShape& b)
    {
        return a.row_dims_ == b.row_dims_ && a.col_dims_ == b.col_dims_;
    }

private:
    static std::size_t offset(const Dims& dims,
                              std::span<const std::size_t> index)
    {
        if (index.size() != dims.size())
        {
            throw Error(Errc::shape_mismatch, "index arity does not match "
                                              "mode count");
        }
        std::size_t r = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
        {
            if (index[k] >= dims[k])
            {
                throw Error(Errc::invalid_argument, "index out of range", k);
            }
            r = r * dims[k] + index[k];
        }
        return r;
    }

    Dims row_dims_;
    Dims col_dims_;
    std::size_t row_count_ = 1;
    std::size_t col_count_ = 1;
};

} // namespace einrol

#endif // EINROL_MODE_SHAPE_HPP
