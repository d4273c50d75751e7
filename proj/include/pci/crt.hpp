#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pci {

// Mod-30 values per cell.
struct Mod30Assignment {
    std::vector<int> r30;
};

// Unique x in Z_30 with x = a (mod 3) and x = b (mod 10). The coefficients
// come from the modular inverses 10*1 = 1 (mod 3) and 21 = 3*7 = 1 (mod 10);
// generalizing to other coprime modulus pairs only needs these two inverses
// recomputed.
inline int crt_merge_value(int r3, int r10) {
    if (r3 < 0 || r3 > 2)
        throw std::out_of_range("crt: mod-3 value " + std::to_string(r3) + " outside [0,2]");
    if (r10 < 0 || r10 > 9)
        throw std::out_of_range("crt: mod-10 value " + std::to_string(r10) + " outside [0,9]");
    return (10 * r3 + 21 * r10) % 30;
}

inline Mod30Assignment crt_merge(const std::vector<int>& r3, const std::vector<int>& r10) {
    if (r3.size() != r10.size()) throw std::invalid_argument("crt: size mismatch");
    Mod30Assignment out;
    out.r30.resize(r3.size());
    for (std::size_t i = 0; i < r3.size(); ++i) out.r30[i] = crt_merge_value(r3[i], r10[i]);
    return out;
}

}  // namespace pci
