#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace csdepth {

// Exact arithmetic backbone. Integers grow as needed; rationals are kept
// canonical (positive denominator, reduced) by the backing library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign_of(const Int& v) { return v.sign(); }
inline int sign_of(const Rat& v) { return v.sign(); }

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Quotient as an exact rational; the backing library requires a positive
// denominator, so normalize the sign here.
inline Rat make_rat(Int num, Int den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(std::move(num), std::move(den));
}

// "p", "-p", "p/q" and exact decimals such as "-3.25" (which becomes -13/4).
// Returns nullopt on any malformed input; never rounds.
inline std::optional<Rat> parse_rat(std::string_view text) {
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;

    Rat value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) return std::nullopt;
        Int d{std::string(den)};
        if (d == 0) return std::nullopt;
        value = Rat(Int{std::string(num)}, d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !is_digits(whole)) return std::nullopt;
        if (!frac.empty() && !is_digits(frac)) return std::nullopt;
        Int scale = 1;
        Int digits = whole.empty() ? Int{0} : Int{std::string(whole)};
        for (char c : frac) {
            digits = digits * 10 + (c - '0');
            scale *= 10;
        }
        value = Rat(digits, scale);
    } else {
        if (!is_digits(text)) return std::nullopt;
        value = Rat(Int{std::string(text)});
    }
    if (negative) value = -value;
    return value;
}

inline std::string format_rat(const Rat& r) {
    Int den = rat_den(r);
    if (den == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + den.str();
}

}  // namespace csdepth
