// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace reach {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Vec::Vec(std::size_t n, double fill) : e_(n, fill) { check_finite(); }

Vec::Vec(std::initializer_list<double> entries) : e_(entries) { check_finite(); }

void Vec::check_finite() const {
    for (double v : e_)
        if (!std::isfinite(v)) throw std::domain_error("Vec: non-finite entry");
}

double Vec::inf_norm() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::abs(v));
    return m;
}

Vec& Vec::operator+=(const Vec& o) {
    require(size() == o.size(), "Vec: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    require(size() == o.size(), "Vec: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

Vec& Vec::operator*=(double s) {
    for (double& v : e_) v *= s;
    return *this;
}

Mat::Mat(std::size_t n, double fill) : n_(n), e_(n * n, fill) { check_finite(); }

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    e_.reserve(n_ * n_);
    for (const auto& row : rows) {
        require(row.size() == n_, "Mat: ragged initializer");
        e_.insert(e_.end(), row.begin(), row.end());
    }
    check_finite();
}

Mat Mat::identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Mat::check_finite() const {
    for (double v : e_)
        if (!std::isfinite(v)) throw std::domain_error("Mat: non-finite entry");
}

double Mat::inf_norm() const {
    double m = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n_; ++c) s += std::abs((*this)(r, c));
        m = std::max(m, s);
    }
    return m;
}

double Mat::one_norm() const {
    double m = 0.0;
    for (std::size_t c = 0; c < n_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < n_; ++r) s += std::abs((*this)(r, c));
        m = std::max(m, s);
    }
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    require(n_ == o.n_, "Mat: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    require(n_ == o.n_, "Mat: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : e_) v *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    require(a.n_ == b.n_, "Mat: size mismatch");
    const std::size_t n = a.n_;
    Mat r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Vec operator*(const Mat& a, const Vec& x) {
    require(a.n_ == x.size(), "Mat*Vec: size mismatch");
    Vec r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.n_; ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

void NumericsBudget::check() const {
    for (double v : {sigma_e, sigma_i, mu_c, mu_h})
        if (!(std::isfinite(v) && v >= 0.0))
            throw std::invalid_argument("NumericsBudget: bounds must be finite and >= 0");
}

namespace {

// Solve Q X = P by Gaussian elimination with partial pivoting. Q and P are
// consumed. Dimensions here are small (n <= a few dozen).
Mat lu_solve(Mat q, Mat p) {
    const std::size_t n = q.dim();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(q(r, col)) > std::abs(q(piv, col))) piv = r;
        if (q(piv, col) == 0.0) throw BudgetError("expm: singular Pade denominator");
        if (piv != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(q(piv, c), q(col, c));
                std::swap(p(piv, c), p(col, c));
            }
        const double d = q(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = q(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) q(r, c) -= f * q(col, c);
            for (std::size_t c = 0; c < n; ++c) p(r, c) -= f * p(col, c);
        }
    }
    Mat x(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = n; r-- > 0;) {
            double s = p(r, c);
            for (std::size_t j = r + 1; j < n; ++j) s -= q(r, j) * x(j, c);
            x(r, c) = s / q(r, r);
        }
    return x;
}

// Degree-13 Pade coefficients and its backward-error threshold.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

Mat expm_scaled(Mat m) {
    const std::size_t n = m.dim();
    const double norm = m.one_norm();
    if (!std::isfinite(norm)) throw BudgetError("expm: non-finite input");

    int s = 0;
    if (norm > kTheta13) {
        s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
        if (s > 1023) throw BudgetError("expm: norm too large, scaling would overflow");
        m *= std::ldexp(1.0, -s);
    }

    const Mat id = Mat::identity(n);
    const Mat m2 = m * m;
    const Mat m4 = m2 * m2;
    const Mat m6 = m2 * m4;

    Mat u = kPade13[13] * m6 + kPade13[11] * m4 + kPade13[9] * m2;
    u = m6 * u;
    u += kPade13[7] * m6 + kPade13[5] * m4 + kPade13[3] * m2 + kPade13[1] * id;
    u = m * u;

    Mat v = kPade13[12] * m6 + kPade13[10] * m4 + kPade13[8] * m2;
    v = m6 * v;
    v += kPade13[6] * m6 + kPade13[4] * m4 + kPade13[2] * m2 + kPade13[0] * id;

    Mat r = lu_solve(v - u, v + u);
    for (int i = 0; i < s; ++i) r = r * r;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(r(i, j))) throw BudgetError("expm: overflow in result");
    return r;
}

}  // namespace

Mat expm(const Mat& a, double t) {
    a.check_finite();
    if (!std::isfinite(t)) throw std::invalid_argument("expm: t must be finite");
    Mat m = a;
    m *= t;
    return expm_scaled(std::move(m));
}

Mat expm_integral(const Mat& a, double t) {
    a.check_finite();
    if (!(t >= 0.0)) throw std::invalid_argument("expm_integral: t must be >= 0");
    const std::size_t n = a.dim();
    // W = [[A, I], [0, 0]]; e^{Wt} = [[e^{At}, int_0^t e^{As} ds], [0, I]].
    Mat w(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) w(r, c) = a(r, c);
        w(r, n + r) = 1.0;
    }
    Mat ew = expm(w, t);
    Mat out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = ew(r, n + c);
    return out;
}

Vec FlowMap::apply(const Vec& x) const {
    Vec r = e * x;
    r += k;
    return r;
}

FlowMap make_flow_map(const Mat& a, const Vec& u, double t) {
    if (a.dim() != u.size()) throw std::invalid_argument("flow map: dimension mismatch");
    return FlowMap{expm(a, t), expm_integral(a, t) * u};
}

Vec propagate_point(const Mat& a, const Vec& u, double t, const Vec& x) {
    return make_flow_map(a, u, t).apply(x);
}

double compute_mu_x(const NumericsBudget& budget, double x_bar, double u_bar) {
    budget.check();
    if (!(x_bar >= 0.0 && u_bar >= 0.0))
        throw std::invalid_argument("compute_mu_x: norm bounds must be >= 0");
    return budget.sigma_e * x_bar + budget.sigma_i * u_bar;
}

}  // namespace reach
