#include "biswarm/kernels.hpp"

#include <cstdlib>
#include <string>

namespace biswarm::kernels {

const Ops& select(const char* forced_name) {
    const std::string name = forced_name ? forced_name : "";
    if (name == "scalar") {
        return scalar();
    }
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    if (const Ops* ops = avx2(); ops && (name.empty() || name == "avx2")) {
        return *ops;
    }
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    if (const Ops* ops = neon(); ops && (name.empty() || name == "neon")) {
        return *ops;
    }
#endif
    return scalar();
}

const Ops& active() {
    static const Ops& ops = select(std::getenv("BISWARM_KERNEL"));
    return ops;
}

} // namespace biswarm::kernels
