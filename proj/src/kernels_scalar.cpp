#include "pci/kernels.hpp"

namespace pci::kernels {
namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void linear_combine(double a, const double* x, double b, const double* y, double* out,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void matvec(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

double sum(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

}  // namespace scalar

const Backend& scalar_backend() {
    static const Backend backend{"scalar", scalar::dot,    scalar::axpy,
                                 scalar::linear_combine,   scalar::matvec,
                                 scalar::sum};
    return backend;
}

}  // namespace pci::kernels
