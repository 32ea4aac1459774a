/*
 * Copyright 2026 The latcount Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <utility>

namespace latcount {

namespace {

void check_square(std::size_t n, std::size_t count) {
    if (n < 1 || count != n * n) fail(ErrorKind::InvalidInput, "matrix must be square");
}

std::optional<std::vector<Rational>> exact_gauss_jordan_inverse(std::size_t n, std::vector<Rational> a) {
    std::vector<Rational> inv(n * n);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r) {
            if (a[r * n + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
                std::swap(inv[pivot * n + j], inv[col * n + j]);
            }
        }
        Rational p = a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] /= p;
            inv[col * n + j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r * n + col] == 0) continue;
            Rational f = a[r * n + col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    return inv;
}

// Largest eigenvalue of a symmetric 3x3 matrix from its characteristic
// polynomial, using the trigonometric form of the three real roots.
Real largest_eigenvalue_sym3(const Matrix& s) {
    const Real& a00 = s(0, 0);
    const Real& a11 = s(1, 1);
    const Real& a22 = s(2, 2);
    const Real& a01 = s(0, 1);
    const Real& a02 = s(0, 2);
    const Real& a12 = s(1, 2);
    Real off = a01 * a01 + a02 * a02 + a12 * a12;
    if (off == 0) return std::max({a00, a11, a22});
    Real q = (a00 + a11 + a22) / 3;
    Real p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2 * off;
    Real p = sqrt(p2 / 6);
    if (p == 0) return q;
    Real b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
    Real b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
    Real det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
    Real half = det_b / 2;
    if (half <= -1) half = -1;
    if (half >= 1) half = 1;
    Real phi = acos(half) / 3;
    return q + 2 * p * cos(phi);
}

// Power iteration on a symmetric positive semidefinite matrix, accelerated
// by repeated squaring; stops when the Rayleigh quotient settles below
// 1e-25 relative change.
Real largest_eigenvalue_power(const Matrix& s) {
    const std::size_t n = s.dim();
    const Real threshold = pow10_neg(25);
    Matrix power = s;
    Real previous = -1;
    for (int iter = 0; iter < 200; ++iter) {
        // The largest column of the current power approximates the dominant
        // eigenvector.
        std::size_t best = 0;
        Real best_norm = -1;
        for (std::size_t j = 0; j < n; ++j) {
            Real c = norm2(power.column(j));
            if (c > best_norm) {
                best_norm = c;
                best = j;
            }
        }
        if (best_norm == 0) return 0;
        Vector x = power.column(best);
        Vector sx = s * x;
        Real rayleigh = dot(x, sx) / dot(x, x);
        if (previous >= 0 && abs(rayleigh - previous) <= threshold * abs(rayleigh)) return rayleigh;
        previous = rayleigh;
        Matrix sq = power * power;
        Real scale = 0;
        for (const auto& e : sq.entries()) scale = std::max(scale, Real(abs(e)));
        power = scale == 0 ? sq : sq.scaled(1 / scale);
    }
    return previous;
}

}  // namespace

Matrix::Matrix(std::size_t n, std::vector<Real> entries) : n_(n), a_(std::move(entries)) { check_square(n_, a_.size()); }

Matrix::Matrix(std::size_t n, std::vector<Rational> exact) : n_(n) {
    check_square(n_, exact.size());
    a_.reserve(exact.size());
    for (const auto& q : exact) a_.push_back(to_real(q));
    exact_ = std::move(exact);
}

Matrix Matrix::zero(std::size_t n) { return Matrix(n, std::vector<Rational>(n * n)); }

Matrix Matrix::identity(std::size_t n) {
    std::vector<Rational> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return Matrix(n, std::move(e));
}

Matrix Matrix::diagonal(std::span<const Real> d) {
    const std::size_t n = d.size();
    std::vector<Real> e(n * n, Real(0));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return Matrix(n, std::move(e));
}

Matrix Matrix::from_int(std::size_t n, std::span<const std::int64_t> entries) {
    std::vector<Rational> e;
    e.reserve(entries.size());
    for (auto v : entries) e.emplace_back(v);
    return Matrix(n, std::move(e));
}

Vector Matrix::column(std::size_t j) const {
    Vector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

Vector Matrix::row(std::size_t i) const { return Vector(a_.begin() + i * n_, a_.begin() + (i + 1) * n_); }

Matrix Matrix::transpose() const {
    if (exact_) {
        std::vector<Rational> t(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t[j * n_ + i] = (*exact_)[i * n_ + j];
        return Matrix(n_, std::move(t));
    }
    std::vector<Real> t(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t[j * n_ + i] = a_[i * n_ + j];
    return Matrix(n_, std::move(t));
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch in matrix product");
    if (exact_ && rhs.exact_) {
        std::vector<Rational> p(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const Rational& aik = (*exact_)[i * n_ + k];
                if (aik == 0) continue;
                for (std::size_t j = 0; j < n_; ++j) p[i * n_ + j] += aik * (*rhs.exact_)[k * n_ + j];
            }
        return Matrix(n_, std::move(p));
    }
    std::vector<Real> p(n_ * n_, Real(0));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Real& aik = a_[i * n_ + k];
            for (std::size_t j = 0; j < n_; ++j) p[i * n_ + j] += aik * rhs.a_[k * n_ + j];
        }
    return Matrix(n_, std::move(p));
}

Vector Matrix::operator*(std::span<const Real> x) const {
    if (x.size() != n_) fail(ErrorKind::InvalidInput, "dimension mismatch in matrix-vector product");
    Vector y(n_, Real(0));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) y[i] += a_[i * n_ + j] * x[j];
    return y;
}

Vector Matrix::apply(std::span<const std::int64_t> z) const {
    if (z.size() != n_) fail(ErrorKind::InvalidInput, "dimension mismatch in matrix-vector product");
    Vector y(n_, Real(0));
    for (std::size_t j = 0; j < n_; ++j) {
        if (z[j] == 0) continue;
        Real zj(z[j]);
        for (std::size_t i = 0; i < n_; ++i) y[i] += a_[i * n_ + j] * zj;
    }
    return y;
}

Matrix Matrix::scaled(const Real& s) const {
    std::vector<Real> e(a_);
    for (auto& v : e) v *= s;
    return Matrix(n_, std::move(e));
}

Matrix Matrix::swap_rows(std::size_t i, std::size_t j) const {
    if (exact_) {
        std::vector<Rational> e(*exact_);
        for (std::size_t k = 0; k < n_; ++k) std::swap(e[i * n_ + k], e[j * n_ + k]);
        return Matrix(n_, std::move(e));
    }
    std::vector<Real> e(a_);
    for (std::size_t k = 0; k < n_; ++k) std::swap(e[i * n_ + k], e[j * n_ + k]);
    return Matrix(n_, std::move(e));
}

Real Matrix::max_abs_diff(const Matrix& other) const {
    if (other.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch");
    Real m = 0;
    for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, Real(abs(a_[k] - other.a_[k])));
    return m;
}

std::optional<Rational> exact_determinant(const Matrix& m) {
    if (!m.exact()) return std::nullopt;
    const std::size_t n = m.dim();
    std::vector<Rational> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.exact_at(i, j);
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r)
            if (a[r * n + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r * n + col] == 0) continue;
            Rational f = a[r * n + col] / a[col * n + col];
            for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return det;
}

Real determinant(const Matrix& m) {
    if (auto q = exact_determinant(m)) return to_real(*q);
    const std::size_t n = m.dim();
    std::vector<Real> a(m.entries().begin(), m.entries().end());
    Real det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(a[r * n + col]) > abs(a[pivot * n + col])) pivot = r;
        if (a[pivot * n + col] == 0) return Real(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Real f = a[r * n + col] / a[col * n + col];
            if (f == 0) continue;
            for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.dim();
    if (m.exact()) {
        std::vector<Rational> a(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.exact_at(i, j);
        auto inv = exact_gauss_jordan_inverse(n, std::move(a));
        if (!inv) fail(ErrorKind::Degenerate, "singular matrix");
        return Matrix(n, std::move(*inv));
    }
    std::vector<Real> a(m.entries().begin(), m.entries().end());
    std::vector<Real> inv(n * n, Real(0));
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(a[r * n + col]) > abs(a[pivot * n + col])) pivot = r;
        if (a[pivot * n + col] == 0) fail(ErrorKind::Degenerate, "singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
                std::swap(inv[pivot * n + j], inv[col * n + j]);
            }
        }
        Real p = a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] /= p;
            inv[col * n + j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Real f = a[r * n + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    return Matrix(n, std::move(inv));
}

LatticeBasis::LatticeBasis(Matrix basis) : basis_(std::move(basis)) {
    const std::size_t n = basis_.dim();
    if (n < 1) fail(ErrorKind::InvalidInput, "empty basis");
    det_ = determinant(basis_);
    Real hadamard = 1;
    for (std::size_t j = 0; j < n; ++j) hadamard *= norm(basis_.column(j));
    const Real singular_tol = pow10_neg(static_cast<int>(working_digits()) - 10) * hadamard;
    if (hadamard == 0 || abs(det_) <= singular_tol) fail(ErrorKind::Degenerate, "degenerate lattice");
    const Real abs_det = abs(det_);
    unimodular_ = abs(abs_det - 1) <= pow10_neg(30) * std::max(Real(1), abs_det);
}

LatticeBasis dual_basis(const LatticeBasis& lattice) { return LatticeBasis(inverse(lattice.basis()).transpose()); }

Matrix gram(const Matrix& m) { return m.transpose() * m; }

Real operator_norm(const Matrix& m) {
    const std::size_t n = m.dim();
    bool diagonal = true;
    for (std::size_t i = 0; i < n && diagonal; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m(i, j) != 0) {
                diagonal = false;
                break;
            }
    if (diagonal) {
        Real best = 0;
        for (std::size_t i = 0; i < n; ++i) best = std::max(best, Real(abs(m(i, i))));
        return best;
    }
    Matrix s = gram(m);
    Real top;
    if (n == 1) {
        top = s(0, 0);
    } else if (n == 2) {
        Real half_trace = (s(0, 0) + s(1, 1)) / 2;
        Real half_diff = (s(0, 0) - s(1, 1)) / 2;
        top = half_trace + sqrt(half_diff * half_diff + s(0, 1) * s(0, 1));
    } else if (n == 3) {
        top = largest_eigenvalue_sym3(s);
    } else {
        top = largest_eigenvalue_power(s);
    }
    return sqrt(std::max(top, Real(0)));
}

Real dot(std::span<const Real> a, std::span<const Real> b) {
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Real norm2(std::span<const Real> v) { return dot(v, v); }

Real norm(std::span<const Real> v) { return sqrt(norm2(v)); }

bool near_integer(const Real& x, const Real& tol) { return abs(x - round(x)) <= tol; }

namespace {

std::optional<Rational> json_scalar(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
    if (j.is_number_float()) return parse_rational(j.dump());
    return std::nullopt;
}

nlohmann::json parse_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Matrix parse_matrix_json(std::string_view text) {
    nlohmann::json j = parse_json(text);
    if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, "matrix must be a non-empty array of rows");
    const std::size_t n = j.size();
    std::vector<Rational> entries;
    entries.reserve(n * n);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != n) fail(ErrorKind::InvalidInput, "matrix must be square");
        for (const auto& e : row) {
            auto q = json_scalar(e);
            if (!q) fail(ErrorKind::InvalidInput, "matrix entry is not a decimal number: " + e.dump());
            entries.push_back(std::move(*q));
        }
    }
    return Matrix(n, std::move(entries));
}

Vector parse_vector_json(std::string_view text) {
    nlohmann::json j = parse_json(text);
    if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, "vector must be a non-empty array");
    Vector v;
    for (const auto& e : j) {
        auto q = json_scalar(e);
        if (!q) fail(ErrorKind::InvalidInput, "vector entry is not a decimal number: " + e.dump());
        v.push_back(to_real(*q));
    }
    return v;
}

}  // namespace latcount
