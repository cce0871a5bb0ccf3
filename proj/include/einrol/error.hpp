#ifndef EINROL_ERROR_HPP
#define EINROL_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace einrol
{

enum class Errc
{
    shape_mismatch,
    invalid_argument,
    non_convergence,
    not_unitary,
    not_idempotent,
    not_orthogonal,
    malformed_document,
    length_mismatch,
    non_finite_value,
    io_failure,
};

constexpr std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::shape_mismatch:
        return "shape_mismatch";
    case Errc::invalid_argument:
        return "invalid_argument";
    case Errc::non_convergence:
        return "non_convergence";
    case Errc::not_unitary:
        return "not_unitary";
    case Errc::not_idempotent:
        return "not_idempotent";
    case Errc::not_orthogonal:
        return "not_orthogonal";
    case Errc::malformed_document:
        return "malformed_document";
    case Errc::length_mismatch:
        return "length_mismatch";
    case Errc::non_finite_value:
        return "non_finite_value";
    case Errc::io_failure:
        return "io_failure";
    }
    return "unknown";
}

//
// Single exception type for the library. The code is the stable part of the
// contract; the message is for humans. `index` carries the offending entry or
// pair position when one exists.
//
class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& message,
          std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code), index_(index)
    {
    }

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    Errc code_;
    std::optional<std::size_t> index_;
};

} // namespace einrol

#endif // EINROL_ERROR_HPP
