#pragma once

// Dense matrix exponential for small matrices: Padé(13) with scaling and
// squaring. Used for per-path sojourn-time distributions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quantum {

class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double norm1() const {
        double best = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0;
            for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
        DenseMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                double v = x(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }

    friend DenseMatrix operator-(DenseMatrix x, const DenseMatrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }

    friend DenseMatrix operator*(double s, DenseMatrix x) {
        for (double& v : x.a_) v *= s;
        return x;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Solves A X = B by LU with partial pivoting; A must be non-singular.
inline DenseMatrix solve(DenseMatrix a, DenseMatrix b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw std::domain_error("singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(b(pivot, j), b(col, j));
            }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < n; ++j) b(r, j) -= f * b(col, j);
        }
    }
    for (std::size_t ri = n; ri-- > 0;)
        for (std::size_t j = 0; j < n; ++j) {
            double s = b(ri, j);
            for (std::size_t k = ri + 1; k < n; ++k) s -= a(ri, k) * b(k, j);
            b(ri, j) = s / a(ri, ri);
        }
    return b;
}

inline DenseMatrix expm(const DenseMatrix& input) {
    constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                            129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                            1323241920.0,        40840800.0,          960960.0,           16380.0,
                            182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    const std::size_t n = input.size();
    if (n == 0) return input;

    int squarings = 0;
    double norm = input.norm1();
    if (norm > theta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    DenseMatrix a = std::ldexp(1.0, -squarings) * input;

    DenseMatrix id = DenseMatrix::identity(n);
    DenseMatrix a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
    DenseMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
    DenseMatrix u = a * u_inner;
    DenseMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    DenseMatrix r = solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

/// P[X_0 + ... + X_{k-1} <= t] for independent X_i ~ Exp(rates[i]).
inline double hypoexponential_cdf(const std::vector<double>& rates, double t) {
    if (rates.empty()) return 1.0;
    if (t <= 0) return 0.0;
    const std::size_t k = rates.size();
    DenseMatrix q(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        q(i, i) = -rates[i] * t;
        q(i, i + 1) = rates[i] * t;
    }
    double p = expm(q)(0, k);
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace quantum
