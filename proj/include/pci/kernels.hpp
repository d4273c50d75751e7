#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Dense arithmetic kernels used by the partition solver's inner loop.
// A scalar reference implementation always exists; AVX2 (x86-64) and NEON
// (aarch64) variants are compiled when the toolchain supports them and
// selected at runtime. The PCI_SIMD environment variable (scalar|avx2|neon|
// auto) overrides the choice; tests use set_active() to force a backend and
// check equivalence against the scalar reference.
namespace pci::kernels {

struct Backend {
    const char* name;
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out = a*x + b*y
    void (*linear_combine)(double a, const double* x, double b, const double* y, double* out,
                           std::size_t n);
    // y = M x, M row-major rows x cols
    void (*matvec)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
    double (*sum)(const double* a, std::size_t n);
};

const Backend& scalar_backend();

// Backends compiled in and usable on this CPU. Always contains "scalar".
std::vector<std::string> available();

const Backend& active();
// Throws std::invalid_argument for names not in available().
void set_active(const std::string& name);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active().axpy(alpha, x, y, n);
}
inline void linear_combine(double a, const double* x, double b, const double* y, double* out,
                           std::size_t n) {
    active().linear_combine(a, x, b, y, out, n);
}
inline void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
    active().matvec(m, rows, cols, x, y);
}
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }

}  // namespace pci::kernels
