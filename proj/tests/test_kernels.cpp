#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pci/kernels.hpp"
#include "pci/util.hpp"

using namespace pci;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& e : v) e = rng.uniform(lo, hi);
    return v;
}

// |a - b| <= tol * mass guards against reassociation differences only
void check_close(double a, double b, double mass) {
    CHECK(std::abs(a - b) <= 1e-12 * mass + 1e-300);
}

}  // namespace

TEST_CASE("scalar kernels match hand values") {
    const auto& s = kernels::scalar_backend();
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, 5.0, 6.0};
    CHECK(s.dot(a, b, 3) == doctest::Approx(32.0));
    CHECK(s.sum(a, 3) == doctest::Approx(6.0));
    double y[] = {1.0, 1.0, 1.0};
    s.axpy(2.0, a, y, 3);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[2] == doctest::Approx(7.0));
    double out[3];
    s.linear_combine(2.0, a, -1.0, b, out, 3);
    CHECK(out[0] == doctest::Approx(-2.0));
    CHECK(out[2] == doctest::Approx(0.0));
    const double m[] = {1.0, 0.0, 0.0, 1.0, 2.0, 0.0};  // 3x2
    const double x[] = {3.0, 4.0};
    double mv[3];
    s.matvec(m, 3, 2, x, mv);
    CHECK(mv[0] == doctest::Approx(3.0));
    CHECK(mv[1] == doctest::Approx(4.0));
    CHECK(mv[2] == doctest::Approx(6.0));
}

TEST_CASE("every available backend agrees with the scalar reference") {
    const auto& ref = kernels::scalar_backend();
    for (const std::string& name : kernels::available()) {
        CAPTURE(name);
        kernels::set_active(name);
        const auto& bk = kernels::active();
        CHECK(std::string(bk.name) == name);

        Rng rng(7);
        // odd lengths exercise the vector tails
        for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5},
                              std::size_t{8}, std::size_t{13}, std::size_t{17}, std::size_t{64},
                              std::size_t{1001}}) {
            const auto a = random_vec(rng, n);
            const auto b = random_vec(rng, n);
            double mass = 0.0;
            for (std::size_t i = 0; i < n; ++i) mass += std::abs(a[i] * b[i]);
            check_close(bk.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), mass);
            check_close(bk.sum(a.data(), n), ref.sum(a.data(), n), mass + n);

            auto y1 = b, y2 = b;
            bk.axpy(0.77, a.data(), y1.data(), n);
            ref.axpy(0.77, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) check_close(y1[i], y2[i], std::abs(y2[i]) + 1.0);

            std::vector<double> o1(n), o2(n);
            bk.linear_combine(1.5, a.data(), -2.5, b.data(), o1.data(), n);
            ref.linear_combine(1.5, a.data(), -2.5, b.data(), o2.data(), n);
            for (std::size_t i = 0; i < n; ++i) check_close(o1[i], o2[i], std::abs(o2[i]) + 1.0);
        }

        // rectangular matvec
        const std::size_t rows = 9, cols = 33;
        const auto m = random_vec(rng, rows * cols);
        const auto x = random_vec(rng, cols);
        std::vector<double> y1(rows), y2(rows);
        bk.matvec(m.data(), rows, cols, x.data(), y1.data());
        ref.matvec(m.data(), rows, cols, x.data(), y2.data());
        for (std::size_t r = 0; r < rows; ++r) {
            double mass = 0.0;
            for (std::size_t c = 0; c < cols; ++c) mass += std::abs(m[r * cols + c] * x[c]);
            check_close(y1[r], y2[r], mass);
        }
    }
    kernels::set_active("auto");
}

TEST_CASE("unknown backend is rejected") {
    CHECK_THROWS_AS(kernels::set_active("sse9"), std::invalid_argument);
}

TEST_CASE("available always includes scalar and the active backend") {
    const auto names = kernels::available();
    CHECK(std::find(names.begin(), names.end(), "scalar") != names.end());
    CHECK(std::find(names.begin(), names.end(), std::string(kernels::active().name)) !=
          names.end());
}
