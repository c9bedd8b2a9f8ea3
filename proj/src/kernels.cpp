#include "voltfx/kernels.hpp"

#include <cassert>
#include <cmath>

namespace voltfx::kernels {

std::vector<double> CsrMatrix::diagonal() const
{
    std::vector<double> d(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col[k] == i) {
                d[i] += val[k];
            }
        }
    }
    return d;
}

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == a.rows && y.size() == a.rows);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.rows > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            sum += a.val[k] * x[a.col[k]];
        }
        y[i] = sum;
    }
}

double dot(std::span<const double> x, std::span<const double> y)
{
    assert(x.size() == y.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (x.size() > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == y.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

void xpby(std::span<const double> x, double beta, std::span<double> y)
{
    assert(x.size() == y.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        y[i] = x[i] + beta * y[i];
    }
}

void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> z)
{
    assert(x.size() == y.size() && y.size() == z.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        z[i] = x[i] * y[i];
    }
}

namespace serial {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y)
{
    for (std::size_t i = 0; i < a.rows; ++i) {
        double sum = 0.0;
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            sum += a.val[k] * x[a.col[k]];
        }
        y[i] = sum;
    }
}

double dot(std::span<const double> x, std::span<const double> y)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

void xpby(std::span<const double> x, double beta, std::span<double> y)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] + beta * y[i];
    }
}

void hadamard(std::span<const double> x, std::span<const double> y, std::span<double> z)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        z[i] = x[i] * y[i];
    }
}

} // namespace serial

namespace {

struct Ops {
    void (*spmv)(const CsrMatrix&, std::span<const double>, std::span<double>);
    double (*dot)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*xpby)(std::span<const double>, double, std::span<double>);
    void (*hadamard)(std::span<const double>, std::span<const double>, std::span<double>);
};

constexpr Ops kParallelOps{&kernels::spmv, &kernels::dot, &kernels::axpy, &kernels::xpby, &kernels::hadamard};
constexpr Ops kSerialOps{&serial::spmv, &serial::dot, &serial::axpy, &serial::xpby, &serial::hadamard};

} // namespace

CgResult conjugate_gradient(const CsrMatrix& a, std::span<const double> b, double tolerance,
                            std::size_t max_iterations, Execution exec)
{
    const Ops& ops = exec == Execution::Parallel ? kParallelOps : kSerialOps;
    const std::size_t n = a.rows;
    CgResult out;
    out.x.assign(n, 0.0);

    const double b_norm = std::sqrt(ops.dot(b, b));
    if (b_norm == 0.0) {
        out.converged = true;
        return out;
    }

    std::vector<double> inv_diag = a.diagonal();
    for (double& d : inv_diag) {
        d = d > 0.0 ? 1.0 / d : 1.0;
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n), ap(n);
    ops.hadamard(inv_diag, r, z);
    p = z;
    double rz = ops.dot(r, z);
    out.relative_residual = 1.0;

    auto true_residual = [&] {
        ops.spmv(a, out.x, ap);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = b[i] - ap[i];
        }
        return std::sqrt(ops.dot(r, r)) / b_norm;
    };

    while (out.iterations < max_iterations) {
        ops.spmv(a, p, ap);
        const double p_ap = ops.dot(p, ap);
        if (!(p_ap > 0.0)) {
            break; // lost positive definiteness to rounding
        }
        const double alpha = rz / p_ap;
        ops.axpy(alpha, p, out.x);
        ops.axpy(-alpha, ap, r);
        ++out.iterations;

        out.relative_residual = std::sqrt(ops.dot(r, r)) / b_norm;
        if (out.relative_residual <= tolerance) {
            // the recurrence drifts from b - Ax; only stop on the true residual
            out.relative_residual = true_residual();
            if (out.relative_residual <= tolerance) {
                out.converged = true;
                break;
            }
        }
        ops.hadamard(inv_diag, r, z);
        const double rz_next = ops.dot(r, z);
        ops.xpby(z, rz_next / rz, p);
        rz = rz_next;
    }
    if (!out.converged) {
        out.relative_residual = true_residual();
        out.converged = out.relative_residual <= tolerance;
    }
    return out;
}

} // namespace voltfx::kernels
