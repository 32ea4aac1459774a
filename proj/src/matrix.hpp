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

#pragma once

#include "real.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace latcount {

using Vector = std::vector<Real>;
using IntVector = std::vector<std::int64_t>;

/// Square n x n matrix, row-major, immutable once built.
///
/// When every entry is known exactly as a rational (decimal literals,
/// fractions, integers) an exact shadow is kept alongside the working
/// precision values; determinant and inverse then run in exact arithmetic.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t n, std::vector<Real> entries);
    explicit Matrix(std::size_t n, std::vector<Rational> exact);

    static Matrix zero(std::size_t n);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Real> d);
    static Matrix from_int(std::size_t n, std::span<const std::int64_t> entries);

    std::size_t dim() const noexcept { return n_; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const Real> entries() const noexcept { return a_; }

    bool exact() const noexcept { return exact_.has_value(); }
    const Rational& exact_at(std::size_t i, std::size_t j) const { return (*exact_)[i * n_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(std::span<const Real> x) const;
    Vector apply(std::span<const std::int64_t> z) const;
    Matrix scaled(const Real& s) const;
    Matrix swap_rows(std::size_t i, std::size_t j) const;

    /// Entry-wise max |a_ij - b_ij|.
    Real max_abs_diff(const Matrix& other) const;

private:
    std::size_t n_ = 0;
    std::vector<Real> a_;
    std::optional<std::vector<Rational>> exact_;
};

/// Lattice generated by the columns of an n x n basis matrix.
class LatticeBasis {
public:
    /// Throws ErrorKind::Degenerate ("degenerate lattice") on singular input.
    explicit LatticeBasis(Matrix basis);

    const Matrix& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.dim(); }
    const Real& det() const noexcept { return det_; }
    bool unimodular() const noexcept { return unimodular_; }

    /// B z for integer coordinates z.
    Vector point(std::span<const std::int64_t> z) const { return basis_.apply(z); }

private:
    Matrix basis_;
    Real det_;
    bool unimodular_ = false;
};

Real determinant(const Matrix& m);
std::optional<Rational> exact_determinant(const Matrix& m);

/// Throws ErrorKind::Degenerate on a singular matrix.
Matrix inverse(const Matrix& m);

/// (B^-1)^T, generating the dual lattice.
LatticeBasis dual_basis(const LatticeBasis& lattice);

Matrix gram(const Matrix& m);

/// Largest singular value.
Real operator_norm(const Matrix& m);

Real dot(std::span<const Real> a, std::span<const Real> b);
Real norm2(std::span<const Real> v);
Real norm(std::span<const Real> v);

/// True when x lies within tol of an integer.
bool near_integer(const Real& x, const Real& tol);

/// Nested JSON arrays of decimal strings (rows). Integers and plain JSON
/// numbers are accepted too and read through their decimal text.
Matrix parse_matrix_json(std::string_view text);
Vector parse_vector_json(std::string_view text);

}  // namespace latcount
