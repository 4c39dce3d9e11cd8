#include "scnplan/kernels.hpp"

#include <cstdlib>
#include <string>

namespace scnplan::kernels {

#if SCNPLAN_HAVE_AVX2_TU
const Ops* avx2_ops_impl(); // kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops* resolve(std::string_view name) {
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2") {
        const Ops* v = avx2_ops();
        return v; // may be null
    }
    if (name == "auto" || name.empty()) {
        if (const Ops* v = avx2_ops()) return v;
        return &scalar_ops();
    }
    return nullptr;
}

const Ops*& active_slot() {
    static const Ops* slot = [] {
        const char* env = std::getenv("SCNPLAN_KERNELS");
        const Ops* v = resolve(env ? std::string_view(env) : std::string_view("auto"));
        return v ? v : &scalar_ops();
    }();
    return slot;
}

} // namespace

const Ops* avx2_ops() {
#if SCNPLAN_HAVE_AVX2_TU
    if (cpu_has_avx2()) return avx2_ops_impl();
#endif
    return nullptr;
}

const Ops& active() { return *active_slot(); }

bool select(std::string_view name) {
    const Ops* v = resolve(name);
    if (!v) return false;
    active_slot() = v;
    return true;
}

} // namespace scnplan::kernels
