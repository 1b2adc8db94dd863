#include "wce/rng.hpp"

#include <mutex>

namespace wce {

std::uint32_t NormalStream::kn_[128];
double NormalStream::wn_[128];
double NormalStream::fn_[128];

void NormalStream::tables() {
    static std::once_flag once;
    std::call_once(once, [] {
        const double m1 = 2147483648.0;
        double dn = kR, tn = kR;
        const double vn = 9.91256303526217e-3;
        const double q = vn / std::exp(-0.5 * dn * dn);
        kn_[0] = static_cast<std::uint32_t>((dn / q) * m1);
        kn_[1] = 0;
        wn_[0] = q / m1;
        wn_[127] = dn / m1;
        fn_[0] = 1.0;
        fn_[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn_[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            fn_[i] = std::exp(-0.5 * dn * dn);
            wn_[i] = dn / m1;
        }
    });
}

}
