#include "aoi/gf256.hpp"

#include <stdexcept>

namespace aoi::gf {

std::uint8_t gf_inv(std::uint8_t a) {
    if (a == 0) {
        throw std::domain_error("gf_inv(0)");
    }
    return detail::tables.exp[255 - static_cast<std::size_t>(detail::tables.log[a])];
}

}  // namespace aoi::gf
