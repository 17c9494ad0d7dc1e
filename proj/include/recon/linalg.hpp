/*
   Copyright 2026 The recon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RECON_LINALG_HPP
#define RECON_LINALG_HPP

#include <type_traits>
#include <vector>

#include "recon/apolarity.hpp"
#include "recon/form.hpp"

namespace recon {

/// Dense matrix over an exact field, row major. Sizes here are tiny (the
/// pairing matrices of the reconstruction), entries are huge.
template <class K>
class Matrix {
   public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

    static Matrix identity(int n, const K& like) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = FieldOps<K>::one(like);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    K& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }
    const K& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw space_mismatch("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                if (FieldOps<K>::is_zero(a(i, k))) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
            }
        }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        std::vector<K> out(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) {
            K acc{};
            for (int j = 0; j < cols_; ++j) acc = acc + (*this)(i, j) * v[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            if (!(a.a_[i] == b.a_[i])) return false;
        return true;
    }

   private:
    int rows_, cols_;
    std::vector<K> a_;
};

/// Bareiss fraction-free determinant of an integer matrix; every interior
/// division is exact, which keeps intermediate entries at determinant scale.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i) {
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                    swap = i;
                    break;
                }
            }
            if (swap < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(swap)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
        }
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    Int d = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return sign < 0 ? Int(-d) : d;
}

/// Exact determinant. Rational matrices clear denominators row by row and
/// run Bareiss over the integers.
inline Rational det(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw not_square();
    const int n = m.rows();
    std::vector<std::vector<Int>> im(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    Rational scale(1);
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) l = l / gcd(l, m(i, j).den()) * m(i, j).den();
        scale = scale * Rational(Int(1), l);
        for (int j = 0; j < n; ++j) im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j).num() * (l / m(i, j).den());
    }
    return Rational(bareiss_det(std::move(im))) * scale;
}

template <class K>
K det(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw not_square();
    const int n = m.rows();
    Matrix<K> a = m;
    K result{};
    bool one_set = false;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (!FieldOps<K>::is_zero(a(i, k))) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) return K{};
        if (pivot != k) {
            for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(k, j));
            sign = -sign;
        }
        if (!one_set) {
            result = a(k, k);
            one_set = true;
        } else {
            result = result * a(k, k);
        }
        K inv = FieldOps<K>::inverse(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (FieldOps<K>::is_zero(a(i, k))) continue;
            K factor = a(i, k) * inv;
            for (int j = k; j < n; ++j) a(i, j) = a(i, j) - factor * a(k, j);
        }
    }
    if (n == 0) return K{};
    return sign < 0 ? FieldOps<K>::neg(result) : result;
}

/// Exact inverse by Gauss-Jordan elimination.
template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw not_square();
    const int n = m.rows();
    Matrix<K> a = m;
    K like{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!FieldOps<K>::is_zero(a(i, j))) like = a(i, j);
    Matrix<K> inv = Matrix<K>::identity(n, like);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (!FieldOps<K>::is_zero(a(i, k))) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw singular_matrix();
        if (pivot != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(k, j));
                std::swap(inv(pivot, j), inv(k, j));
            }
        }
        K pinv = FieldOps<K>::inverse(a(k, k));
        for (int j = 0; j < n; ++j) {
            a(k, j) = a(k, j) * pinv;
            inv(k, j) = inv(k, j) * pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || FieldOps<K>::is_zero(a(i, k))) continue;
            K f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(k, j);
                inv(i, j) = inv(i, j) - f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form in place; returns pivot column per row rank.
template <class K>
std::vector<int> rref(Matrix<K>& a) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < a.rows(); ++i) {
            if (!FieldOps<K>::is_zero(a(i, col))) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
        K pinv = FieldOps<K>::inverse(a(row, col));
        for (int j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * pinv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || FieldOps<K>::is_zero(a(i, col))) continue;
            K f = a(i, col);
            for (int j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
int rank(Matrix<K> a) {
    return static_cast<int>(rref(a).size());
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
inline std::vector<Rational> primitive_normalized(const std::vector<Rational>& v) {
    Int l = 1;
    for (const auto& x : v) l = l / gcd(l, x.den()) * x.den();
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x.num() * (l / x.den()));
    if (g == 0) return v;
    int lead = 0;
    for (const auto& x : v) {
        if (!x.is_zero()) {
            lead = x.sign();
            break;
        }
    }
    Rational scale = Rational(l, g) * Rational(lead < 0 ? -1 : 1);
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x * scale);
    return out;
}

/// Basis of the exact right null space. Rational kernels come back as
/// primitive integer vectors with positive leading entry, so quadric
/// representatives are deterministic.
template <class K>
std::vector<std::vector<K>> right_kernel(const Matrix<K>& m) {
    Matrix<K> a = m;
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<K>> basis;
    K like{};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!FieldOps<K>::is_zero(m(i, j))) like = m(i, j);
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<K> v(static_cast<std::size_t>(m.cols()));
        v[static_cast<std::size_t>(free)] = FieldOps<K>::one(like);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[static_cast<std::size_t>(pivots[r])] = FieldOps<K>::neg(a(static_cast<int>(r), free));
        }
        if constexpr (std::is_same_v<K, Rational>) {
            v = primitive_normalized(v);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Matrix of apolarity pairings D(p_i, q_j) between a dual family and a
/// primal family of forms of one common degree.
template <class K>
Matrix<K> pairing_matrix(const std::vector<Form<K>>& p, const std::vector<Form<K>>& q) {
    Matrix<K> m(static_cast<int>(p.size()), static_cast<int>(q.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            m(static_cast<int>(i), static_cast<int>(j)) = apolar_scalar(p[i], q[j]);
        }
    }
    return m;
}

/// Coefficient matrix of a family of forms: row i holds the coordinates of
/// family[i] in the canonical monomial basis of its degree slice.
template <class K>
Matrix<K> coefficient_matrix(const std::vector<Form<K>>& family) {
    if (family.empty()) return Matrix<K>();
    auto exps = canonical_exponents(family[0].space(), family[0].degrees());
    Matrix<K> m(static_cast<int>(family.size()), static_cast<int>(exps.size()));
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!(family[i].space() == family[0].space()) || family[i].degrees() != family[0].degrees())
            throw space_mismatch("family members live in different degree slices");
        for (std::size_t j = 0; j < exps.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = family[i].coefficient(exps[j]);
    }
    return m;
}

}  // namespace recon

#endif
