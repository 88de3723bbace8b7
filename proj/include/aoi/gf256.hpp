#ifndef AOI_GF256_HPP
#define AOI_GF256_HPP

#include <array>
#include <cstdint>

namespace aoi::gf {

// GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x + 1 (0x11B).
// Addition is XOR; multiplication goes through log/antilog tables built on
// the generator 0x03.
inline constexpr unsigned kReductionPoly = 0x11B;

namespace detail {

constexpr std::uint8_t mul_carryless(std::uint8_t a, std::uint8_t b) {
    unsigned acc = 0;
    unsigned aa = a;
    for (int bit = 0; bit < 8; ++bit) {
        if (b & (1u << bit)) {
            acc ^= aa << bit;
        }
    }
    for (int bit = 15; bit >= 8; --bit) {
        if (acc & (1u << bit)) {
            acc ^= kReductionPoly << (bit - 8);
        }
    }
    return static_cast<std::uint8_t>(acc);
}

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};
};

constexpr Tables build_tables() {
    Tables t{};
    std::uint8_t x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[static_cast<std::size_t>(i)] = x;
        t.log[x] = static_cast<std::uint8_t>(i);
        x = mul_carryless(x, 0x03);
    }
    // Duplicate so exp[log a + log b] never needs a modulo.
    for (int i = 255; i < 512; ++i) {
        t.exp[static_cast<std::size_t>(i)] = t.exp[static_cast<std::size_t>(i - 255)];
    }
    return t;
}

inline constexpr Tables tables = build_tables();

}  // namespace detail

inline std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    return detail::tables.exp[static_cast<std::size_t>(detail::tables.log[a]) +
                              static_cast<std::size_t>(detail::tables.log[b])];
}

/// Multiplicative inverse; a must be nonzero.
std::uint8_t gf_inv(std::uint8_t a);

}  // namespace aoi::gf

#endif
