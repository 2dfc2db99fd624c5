#include "qsum/rational.hpp"

#include <cctype>

namespace qsum {

Rat rat_from_string(const std::string& s) {
    // sign? digits [ / digits ], nothing else
    std::size_t i = 0;
    auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("malformed rational '" + s + "', expected p or p/q");
    };
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) throw bad();
    Int num(s.substr(num_begin, i - num_begin));
    if (negative) num = -num;
    Int den(1);
    if (i < s.size()) {
        if (s[i] != '/') throw bad();
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin || i != s.size()) throw bad();
        den = Int(s.substr(den_begin));
        if (den == 0) throw bad();
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

DecimalExpansion decimal_expansion(const Rat& r, int digits) {
    Int num = r.get_num();
    Int den = r.get_den();
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    Int ip = num / den;
    Int rem = num % den;
    out += ip.get_str();
    out += '.';
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        Int digit = rem / den;
        rem %= den;
        out += static_cast<char>('0' + digit.get_si());
    }
    return {out, rem == 0};
}

}  // namespace qsum
