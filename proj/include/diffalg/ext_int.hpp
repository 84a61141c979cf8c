#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace diffalg {

/// An integer or −∞. Addition saturates at −∞; −∞ compares below everything.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : value_(v) {}

    static constexpr ExtInt negInf() { return ExtInt(); }

    constexpr bool isNegInf() const { return !value_.has_value(); }
    constexpr bool isFinite() const { return value_.has_value(); }
    std::int64_t value() const;

    friend constexpr ExtInt operator+(ExtInt a, ExtInt b)
    {
        if (a.isNegInf() || b.isNegInf())
            return negInf();
        return ExtInt(*a.value_ + *b.value_);
    }
    ExtInt& operator+=(ExtInt o) { return *this = *this + o; }

    friend constexpr bool operator==(ExtInt a, ExtInt b) = default;
    friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b)
    {
        if (a.isNegInf())
            return b.isNegInf() ? std::strong_ordering::equal : std::strong_ordering::less;
        if (b.isNegInf())
            return std::strong_ordering::greater;
        return *a.value_ <=> *b.value_;
    }

    std::string str() const;

private:
    std::optional<std::int64_t> value_;
};

inline ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtInt v);

} // namespace diffalg
