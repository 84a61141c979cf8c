#include "diffalg/ext_int.hpp"

#include "diffalg/errors.hpp"

namespace diffalg {

std::int64_t ExtInt::value() const
{
    if (!value_)
        throw InternalInvariantViolation("ExtInt::value() on -inf");
    return *value_;
}

std::string ExtInt::str() const
{
    return value_ ? std::to_string(*value_) : std::string("-inf");
}

std::ostream& operator<<(std::ostream& os, ExtInt v) { return os << v.str(); }

} // namespace diffalg
