#include "qsum/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace qsum {

std::string Real::to_string(int digits) const {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

std::string Real::to_string() const {
    // ~ bits * log10(2) significant digits
    int digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) - 1;
    return to_string(std::max(digits, 6));
}

}  // namespace qsum
