#pragma once

// Linear-algebra kernels for the potential fit. The default namespace holds
// the OpenMP versions; `serial` holds the plain loops they are tested against.

#include <cstddef>
#include <span>
#include <vector>

namespace voltfx::kernels {

/// Below this length the OpenMP kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = 2048;

/// Compressed sparse rows, square.
struct CsrMatrix {
    std::size_t rows = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col;
    std::vector<double> val;

    std::vector<double> diagonal() const;
};

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = x + beta * y
void xpby(std::span<const double> x, double beta, std::span<double> y);
/// z = x .* y
void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> z);

namespace serial {
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> z);
} // namespace serial

enum class Execution { Parallel, Serial };

struct CgResult {
    std::vector<double> x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradient for symmetric positive definite `a`.
/// Converged when ||b - A x|| <= tolerance * ||b||; b = 0 returns x = 0 immediately.
CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, double tolerance,
                            std::size_t max_iterations, Execution exec = Execution::Parallel);

} // namespace voltfx::kernels
