// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace reach {

/// Dense n-vector. Entries must stay finite; constructors verify this.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double fill = 0.0);
    Vec(std::initializer_list<double> entries);

    std::size_t size() const { return e_.size(); }
    double operator[](std::size_t i) const { return e_[i]; }
    double& operator[](std::size_t i) { return e_[i]; }
    const std::vector<double>& data() const { return e_; }

    double inf_norm() const;

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double s);

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }

    /// Throws std::domain_error if any entry is NaN or infinite.
    void check_finite() const;

private:
    std::vector<double> e_;
};

/// Dense square n x n matrix, row-major.
class Mat {
public:
    Mat() = default;
    explicit Mat(std::size_t n, double fill = 0.0);
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(std::size_t n);

    std::size_t dim() const { return n_; }
    double operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }

    /// Induced infinity norm: maximum absolute row sum.
    double inf_norm() const;
    /// Maximum absolute column sum (used for exponential scaling).
    double one_norm() const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(double s, Mat a) { return a *= s; }
    friend bool operator==(const Mat& a, const Mat& b) = default;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Vec operator*(const Mat& a, const Vec& x);

    void check_finite() const;

private:
    std::size_t n_ = 0;
    std::vector<double> e_;
};

/// Elementwise error bounds of the numerical routines, as configured by the
/// caller. The propagation bound mu_x is derived from the others over a
/// given state box and input set; see compute_mu_x().
struct NumericsBudget {
    double sigma_e = 1e-13;  ///< elementwise bound on the matrix exponential
    double sigma_i = 1e-13;  ///< elementwise bound on its time integral
    double mu_c = 1e-13;     ///< hyperplane/polytope intersection bound
    double mu_h = 1e-13;     ///< convex hull bound

    void check() const;  ///< all bounds must be finite and >= 0
};

/// Raised when a numeric routine cannot honor its error budget (overflow,
/// non-finite intermediate). Never returns a silently wrong value.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// e^{At} by scaling-and-squaring with the degree-13 Pade approximant.
Mat expm(const Mat& a, double t);

/// Integral of e^{As} ds over [0, t], via the exponential of the augmented
/// matrix [[A, I], [0, 0]]; handles singular A uniformly. Requires t >= 0.
Mat expm_integral(const Mat& a, double t);

/// Affine flow x(t) = e^{At} x0 + (integral of e^{As} ds) u of the LTI system
/// xdot = A x + u, precomputed once so many points can share the two
/// exponential evaluations.
struct FlowMap {
    Mat e;   ///< e^{At}
    Vec k;   ///< (integral of e^{As} ds) u

    Vec apply(const Vec& x) const;
};

FlowMap make_flow_map(const Mat& a, const Vec& u, double t);

/// Single-point flow; equivalent to make_flow_map(a, u, t).apply(x).
Vec propagate_point(const Mat& a, const Vec& u, double t, const Vec& x);

/// Worst-case pointwise propagation error sigma_e*|x| + sigma_i*|u| maximized
/// over the state box and input set, reduced here to the two norm bounds
/// x_bar = max |x|_inf and u_bar = max |u|_inf.
double compute_mu_x(const NumericsBudget& budget, double x_bar, double u_bar);

}  // namespace reach
