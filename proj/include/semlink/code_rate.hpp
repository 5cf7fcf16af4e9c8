#ifndef SEMLINK_CODE_RATE_HPP
#define SEMLINK_CODE_RATE_HPP

#include "semlink/error.hpp"

namespace semlink {

// Supported channel code rates: 1/3, 1/2, 2/3, 3/4.
struct CodeRate {
    int numerator = 1;
    int denominator = 3;

    double value() const noexcept {
        return static_cast<double>(numerator) / denominator;
    }

    bool operator==(const CodeRate& other) const noexcept {
        return numerator == other.numerator && denominator == other.denominator;
    }

    static bool supported(const CodeRate& r) noexcept {
        return (r == CodeRate{1, 3}) || (r == CodeRate{1, 2}) ||
               (r == CodeRate{2, 3}) || (r == CodeRate{3, 4});
    }

    static CodeRate checked(int num, int den) {
        CodeRate r{num, den};
        if (!supported(r))
            raise(ErrorKind::Config, "unsupported code rate " + std::to_string(num) +
                                         "/" + std::to_string(den));
        return r;
    }
};

}  // namespace semlink

#endif
