#include "pci/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace pci::kernels {

const Backend* avx2_backend_impl();
const Backend* neon_backend_impl();

namespace {

const Backend* avx2_if_supported() {
    const Backend* b = avx2_backend_impl();
    if (!b) return nullptr;
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return b;
#endif
    return nullptr;
}

const Backend* pick_default() {
    if (const Backend* b = avx2_if_supported()) return b;
    if (const Backend* b = neon_backend_impl()) return b;
    return &scalar_backend();
}

const Backend* find(const std::string& name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2") return avx2_if_supported();
    if (name == "neon") return neon_backend_impl();
    if (name == "auto") return pick_default();
    return nullptr;
}

std::atomic<const Backend*>& slot() {
    static std::atomic<const Backend*> current = [] {
        const char* env = std::getenv("PCI_SIMD");
        if (env) {
            if (const Backend* b = find(env)) return b;
        }
        return pick_default();
    }();
    return current;
}

}  // namespace

std::vector<std::string> available() {
    std::vector<std::string> out{"scalar"};
    if (avx2_if_supported()) out.emplace_back("avx2");
    if (neon_backend_impl()) out.emplace_back("neon");
    return out;
}

const Backend& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(const std::string& name) {
    const Backend* b = find(name);
    if (!b) throw std::invalid_argument("unknown or unsupported kernel backend: " + name);
    slot().store(b, std::memory_order_relaxed);
}

}  // namespace pci::kernels
