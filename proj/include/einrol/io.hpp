#ifndef EINROL_IO_HPP
#define EINROL_IO_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "einrol/dense_tensor.hpp"
#include "einrol/error.hpp"

namespace einrol
{

//
// Tensor document format:
//
//   {"row_dims": [2, 2], "col_dims": [2, 2],
//    "entries": [[re, im], ...]}
//
// Entries follow the storage order (row tuple then column tuple, last index
// fastest). Numbers are written with 17 significant digits so a write/read
// round trip reproduces every double exactly.
//

namespace detail
{
inline Dims read_dims(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key) || !doc[key].is_array())
    {
        throw Error(Errc::malformed_document,
                    std::string("missing integer array '") + key + "'");
    }
    Dims dims;
    for (std::size_t k = 0; k < doc[key].size(); ++k)
    {
        const auto& d = doc[key][k];
        if (!d.is_number_integer() || d.get<long long>() < 1)
        {
            throw Error(Errc::malformed_document,
                        std::string("'") + key + "' must hold integers >= 1",
                        k);
        }
        dims.push_back(d.get<std::size_t>());
    }
    return dims;
}

inline std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// DOM builder that remembers which "entries" element is being read, so a
// number too large for a double can be reported by entry index.
class EntryTrackingSax
    : public nlohmann::detail::json_sax_dom_parser<nlohmann::json>
{
    using Base = nlohmann::detail::json_sax_dom_parser<nlohmann::json>;

public:
    explicit EntryTrackingSax(nlohmann::json& doc) : Base(doc, false) {}

    bool key(std::string& k)
    {
        if (depth_ == 1)
            last_key_ = k;
        return Base::key(k);
    }
    bool start_object(std::size_t n)
    {
        ++depth_;
        return Base::start_object(n);
    }
    bool end_object()
    {
        --depth_;
        return Base::end_object();
    }
    bool start_array(std::size_t n)
    {
        ++depth_;
        if (depth_ == 2 && last_key_ == "entries")
            in_entries_ = true;
        else if (depth_ == 3 && in_entries_)
            ++entry_;
        return Base::start_array(n);
    }
    bool end_array()
    {
        if (depth_ == 2)
            in_entries_ = false;
        --depth_;
        return Base::end_array();
    }
    bool parse_error(std::size_t byte, const std::string&,
                     const nlohmann::detail::exception& e)
    {
        // 406: number does not fit a double
        if (e.id == 406)
        {
            if (in_entries_ && entry_ >= 0)
            {
                throw Error(Errc::non_finite_value,
                            "entry " + std::to_string(entry_) +
                                " is not finite",
                            static_cast<std::size_t>(entry_));
            }
            throw Error(Errc::non_finite_value, e.what());
        }
        throw Error(Errc::malformed_document, e.what(), byte);
    }

private:
    int depth_ = 0;
    bool in_entries_ = false;
    std::ptrdiff_t entry_ = -1;
    std::string last_key_;
};
} // namespace detail

inline DenseTensor parse_tensor_text(std::string_view text)
{
    nlohmann::json doc;
    detail::EntryTrackingSax sax(doc);
    nlohmann::json::sax_parse(text, &sax);
    if (!doc.is_object())
        throw Error(Errc::malformed_document, "document must be an object");

    ModeShape shape(detail::read_dims(doc, "row_dims"),
                    detail::read_dims(doc, "col_dims"));

    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw Error(Errc::malformed_document, "missing array 'entries'");
    const auto& entries = doc["entries"];
    if (entries.size() != shape.size())
    {
        throw Error(Errc::length_mismatch,
                    "shape " + shape.to_string() + " needs " +
                        std::to_string(shape.size()) + " entries, got " +
                        std::to_string(entries.size()),
                    std::min(entries.size(), shape.size()));
    }

    std::vector<Complex> values(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k)
    {
        const auto& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
            !e[1].is_number())
        {
            throw Error(Errc::malformed_document,
                        "entry " + std::to_string(k) +
                            " must be a [re, im] pair of numbers",
                        k);
        }
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
        {
            throw Error(Errc::non_finite_value,
                        "entry " + std::to_string(k) + " is not finite", k);
        }
        values[k] = Complex(re, im);
    }
    return DenseTensor(std::move(shape), std::move(values));
}

inline DenseTensor parse_tensor_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io_failure, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tensor_text(ss.str());
}

inline std::string format_tensor(const DenseTensor& t)
{
    auto dims = [](const Dims& d) {
        std::string s = "[";
        for (std::size_t k = 0; k < d.size(); ++k)
            s += (k ? "," : "") + std::to_string(d[k]);
        return s + "]";
    };
    std::string s = "{\"row_dims\":" + dims(t.shape().row_dims()) +
                    ",\"col_dims\":" + dims(t.shape().col_dims()) +
                    ",\"entries\":[";
    const auto e = t.entries();
    for (std::size_t k = 0; k < e.size(); ++k)
    {
        s += (k ? ",[" : "[") + detail::format_double(e[k].real()) + "," +
             detail::format_double(e[k].imag()) + "]";
    }
    return s + "]}\n";
}

inline void write_tensor_file(const std::filesystem::path& path,
                              const DenseTensor& t)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io_failure, "cannot write " + path.string());
    out << format_tensor(t);
    if (!out)
        throw Error(Errc::io_failure, "write failed for " + path.string());
}

} // namespace einrol

#endif // EINROL_IO_HPP
