#include "homdip/settings.hpp"

#include <cstdlib>
#include <string>

namespace homdip {

namespace {
Tolerances load_tolerances() {
    Tolerances tol;
    if(const char *env = std::getenv("HOMDIP_TOLERANCE"); env != nullptr && *env != '\0') {
        try {
            const double value = std::stod(env);
            if(value > 0.0) tol.validity = value;
        } catch(const std::exception &) {
            // unparsable override: keep defaults
        }
    }
    return tol;
}
} // namespace

const Tolerances &tolerances() {
    static const Tolerances tol = load_tolerances();
    return tol;
}

} // namespace homdip
