#ifndef GAUSSYM_CORE_PRECISION_HPP
#define GAUSSYM_CORE_PRECISION_HPP

#include <cmath>
#include <ios>
#include <mutex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace gaussym {

/// Software floating point with a runtime-selectable mantissa.
using xreal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

inline constexpr unsigned default_mantissa_bits = 256;
inline constexpr unsigned max_mantissa_bits = 2048;

namespace detail {
inline std::recursive_mutex& precision_mutex() {
    static std::recursive_mutex m;
    return m;
}
} // namespace detail

inline unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

/// Mantissa bits actually carried by `x`.
inline unsigned mantissa_bits(const xreal& x) {
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

/// Sets the default xreal precision for the lifetime of the scope.
///
/// MPFR's default precision is process-wide, so scopes are serialized; nested
/// scopes on the same thread are allowed.
class precision_scope {
public:
    explicit precision_scope(unsigned bits)
        : lock_(detail::precision_mutex()), saved_(xreal::default_precision()) {
        xreal::default_precision(digits10_for_bits(bits));
    }
    ~precision_scope() { xreal::default_precision(saved_); }

    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

/// Full-precision decimal rendering (round-trips through `parse_xreal` at the same precision).
inline std::string to_decimal(const xreal& x) {
    return x.str(0, std::ios_base::scientific);
}

inline xreal parse_xreal(const std::string& s) { return xreal(s); }

} // namespace gaussym

#endif
