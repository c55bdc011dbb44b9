#include "sspi/dyadic.hpp"

#include <cctype>

namespace sspi {

Dyadic parse_dyadic(const std::string& text) {
    auto sep = text.find("/2^");
    if (sep == std::string::npos) throw std::invalid_argument("not a dyadic literal: '" + text + "'");
    std::string num = text.substr(0, sep);
    std::string exp = text.substr(sep + 3);
    if (num.empty() || exp.empty()) throw std::invalid_argument("not a dyadic literal: '" + text + "'");
    for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("not a dyadic literal: '" + text + "'");
    for (char c : exp)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("not a dyadic literal: '" + text + "'");
    return Dyadic(BigInt(num), std::stoi(exp));
}

} // namespace sspi
