#include "semlink/budget.hpp"

namespace semlink {

double description_symbols(double n_bits, int modulation_bits, const CodeRate& rate) {
    if (modulation_bits != 2 && modulation_bits != 4)
        raise(ErrorKind::Config, "modulation order must be 2 or 4 bits per symbol");
    if (!CodeRate::supported(rate))
        raise(ErrorKind::Config, "unsupported code rate in symbol budget");
    if (n_bits < 0.0) raise(ErrorKind::Domain, "bit count must be non-negative");
    return n_bits / (static_cast<double>(modulation_bits) * rate.value());
}

double cbr(double symbols, const VideoDims& dims) {
    if (dims.channels < 1 || dims.height < 1 || dims.width < 1 || dims.frames < 1)
        raise(ErrorKind::Domain, "all video dimensions must be at least 1");
    if (symbols < 0.0) raise(ErrorKind::Domain, "symbol count must be non-negative");
    return symbols / dims.pixel_count();
}

LinkBudget make_budget(double text_symbols, double visual_symbols, const VideoDims& dims) {
    if (text_symbols < 0.0 || visual_symbols < 0.0)
        raise(ErrorKind::Domain, "symbol counts must be non-negative");
    LinkBudget b;
    b.text_symbols = text_symbols;
    b.visual_symbols = visual_symbols;
    b.total_symbols = text_symbols + visual_symbols;
    b.denominator = dims.pixel_count();
    b.cbr = cbr(b.total_symbols, dims);
    return b;
}

}  // namespace semlink
