#ifndef GAUSSYM_CORE_HASH_HPP
#define GAUSSYM_CORE_HASH_HPP

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace gaussym {

/// 64-bit FNV-1a over raw bytes. Used for content keys and run fingerprints, not security.
class Fnv1a {
public:
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= c[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void add(std::string_view s) { bytes(s.data(), s.size()); }
    void add(double x) { bytes(&x, sizeof x); }
    void add(std::int64_t x) { bytes(&x, sizeof x); }
    void add(const std::vector<double>& v) { bytes(v.data(), v.size() * sizeof(double)); }

    std::uint64_t value() const { return h_; }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::string fnv1a_hex(std::string_view s) {
    Fnv1a h;
    h.add(s);
    return h.hex();
}

} // namespace gaussym

#endif
