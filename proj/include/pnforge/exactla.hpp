#pragma once
// Exact linear algebra: linear forms in unknowns, coefficient-matching
// assembly, fraction-free elimination, nullspaces and affine solution sets.

#include "pnforge/error.hpp"
#include "pnforge/field.hpp"
#include "pnforge/parallel.hpp"
#include "pnforge/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pnforge {

/// sum_k c_k * x_k + constant, over the unknowns x_k of a system.
template <class K>
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(const K& constant) : constant_(constant) {}
    LinearForm(int constant) : constant_(constant) {}

    static LinearForm unknown(int index, const K& c = K(1)) {
        LinearForm f;
        if (!is_zero(c)) f.coeffs_.emplace(index, c);
        return f;
    }

    const std::map<int, K>& coeffs() const { return coeffs_; }
    const K& constant() const { return constant_; }
    bool is_constant() const { return coeffs_.empty(); }

    K evaluate(const std::vector<K>& x) const {
        K s = constant_;
        for (const auto& [k, c] : coeffs_) s += c * x.at(k);
        return s;
    }

    LinearForm& operator+=(const LinearForm& o) {
        constant_ += o.constant_;
        for (const auto& [k, c] : o.coeffs_) accumulate(k, c);
        return *this;
    }
    LinearForm& operator-=(const LinearForm& o) {
        constant_ -= o.constant_;
        for (const auto& [k, c] : o.coeffs_) accumulate(k, K(-c));
        return *this;
    }
    LinearForm& operator*=(const K& s) {
        if (is_zero(s)) return *this = LinearForm();
        constant_ *= s;
        for (auto& [k, c] : coeffs_) c *= s;
        return *this;
    }

    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator-(LinearForm a) { return a *= K(-1); }
    friend LinearForm operator*(LinearForm a, const K& s) { return a *= s; }
    friend LinearForm operator*(const K& s, LinearForm a) { return a *= s; }
    friend LinearForm operator*(const LinearForm& a, const LinearForm& b) {
        if (a.is_constant()) return b * a.constant_;
        if (b.is_constant()) return a * b.constant_;
        throw Error(ErrorKind::NonAffineDependence, "product of two non-constant linear forms");
    }
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LinearForm& a, const LinearForm& b) { return !(a == b); }

private:
    void accumulate(int k, const K& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = coeffs_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) coeffs_.erase(it);
        }
    }

    std::map<int, K> coeffs_;
    K constant_{0};
};

template <class K>
bool is_zero(const LinearForm<K>& f) {
    return f.is_constant() && is_zero(f.constant());
}

template <class K>
std::string to_string(const LinearForm<K>& f) {
    std::string s;
    for (const auto& [k, c] : f.coeffs()) s += (s.empty() ? "" : " + ") + ("(" + to_string(c) + ")*x" + std::to_string(k));
    if (!is_zero(f.constant()) || s.empty()) s += (s.empty() ? "" : " + ") + to_string(f.constant());
    return s;
}

template <class K>
using LinPoly = BasicPoly<LinearForm<K>>;
template <class K>
using LinPolyVec = BasicPolyVec<LinearForm<K>>;

/// Tag of one unknown: coefficient of u^i v^j in component `coord` of
/// polynomial `block` (a patch, or q versus r).
struct UnknownLabel {
    int block = 0;
    int coord = 0;
    int i = 0;
    int j = 0;
    friend bool operator==(const UnknownLabel& a, const UnknownLabel& b) {
        return a.block == b.block && a.coord == b.coord && a.i == b.i && a.j == b.j;
    }
};

/// One equation per monomial, each requiring that coefficient to vanish.
/// Throws NonAffineDependence if the expression is not affine in the
/// unknowns (detected while the expression is formed).
template <class K>
std::vector<LinearForm<K>> constrain_identity_zero(const LinPoly<K>& expr) {
    std::vector<LinearForm<K>> eqs;
    for (const auto& [m, c] : expr.terms()) eqs.push_back(c);
    return eqs;
}

template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = K(1);
        return m;
    }

    std::vector<K> apply(const std::vector<K>& x) const {
        std::vector<K> y(rows_, K(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!is_zero((*this)(r, c))) y[r] += (*this)(r, c) * x[c];
        return y;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<K> data_;
};

template <class K>
struct LinearSystem {
    Matrix<K> matrix;
    std::vector<K> rhs;
    std::vector<UnknownLabel> labels;

    std::size_t unknowns() const { return labels.size(); }
    std::size_t equations() const { return rhs.size(); }
};

template <class K>
struct SolutionFamily {
    std::vector<K> particular;
    std::vector<std::vector<K>> basis;
    std::vector<UnknownLabel> labels;
    std::size_t rank = 0;

    std::size_t dimension() const { return basis.size(); }

    /// particular + sum_k t_k * basis_k
    std::vector<K> member(const std::vector<K>& t) const {
        if (t.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "parameter count differs from family dimension");
        std::vector<K> x = particular;
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t c = 0; c < x.size(); ++c)
                if (!is_zero(basis[k][c])) x[c] += t[k] * basis[k][c];
        return x;
    }
};

/// Accumulates unknowns and equations.
template <class K>
class SystemBuilder {
public:
    int add_unknown(const UnknownLabel& label) {
        labels_.push_back(label);
        return static_cast<int>(labels_.size()) - 1;
    }

    /// dim components of degree <= d with fresh unknown coefficients,
    /// labelled coordinate-major then graded-lex.
    LinPolyVec<K> unknown_polyvec(int dim, int d, int block = 0) {
        LinPolyVec<K> x(dim);
        for (int c = 0; c < dim; ++c)
            for (Monomial m : monomials_up_to(d)) {
                int k = add_unknown({block, c, m.i, m.j});
                x[c].add_term(m, LinearForm<K>::unknown(k));
            }
        return x;
    }

    /// Requires form == 0.
    void add_equation(const LinearForm<K>& form) {
        if (form.is_constant() && is_zero(form.constant())) return;
        eqs_.push_back(form);
    }
    void add_identity_zero(const LinPoly<K>& expr) {
        for (auto& f : constrain_identity_zero(expr)) add_equation(f);
    }
    void add_identity_zero(const LinPolyVec<K>& expr) {
        for (const auto& p : expr) add_identity_zero(p);
    }

    std::size_t unknowns() const { return labels_.size(); }
    const std::vector<UnknownLabel>& labels() const { return labels_; }

    LinearSystem<K> build() const {
        LinearSystem<K> sys{Matrix<K>(eqs_.size(), labels_.size()), std::vector<K>(eqs_.size(), K(0)), labels_};
        for (std::size_t r = 0; r < eqs_.size(); ++r) {
            for (const auto& [k, c] : eqs_[r].coeffs()) sys.matrix(r, k) = c;
            sys.rhs[r] = -eqs_[r].constant();
        }
        return sys;
    }

private:
    std::vector<UnknownLabel> labels_;
    std::vector<LinearForm<K>> eqs_;
};

namespace detail {

template <class K>
struct Echelon {
    std::vector<std::vector<K>> rows;  // first `pivots.size()` rows are the echelon rows
    std::vector<std::size_t> pivots;
};

/// Fraction-free (Bareiss) forward elimination over the first `pivot_cols`
/// columns; trailing columns are carried along. Each row is first scaled to
/// integral form. Pivot: smallest bit size in the column, lowest row on ties.
template <class K>
Echelon<K> bareiss(std::vector<std::vector<K>> a, std::size_t pivot_cols) {
    for (auto& row : a) {
        Integer l = 1;
        for (const auto& x : row) {
            Integer d = denominator_lcm(x);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        if (l != 1) {
            K s{Rational(l)};
            for (auto& x : row)
                if (!is_zero(x)) x *= s;
        }
    }
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    Echelon<K> out;
    K prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m; ++c) {
        std::size_t best = m;
        std::size_t best_bits = 0;
        for (std::size_t i = r; i < m; ++i) {
            if (is_zero(a[i][c])) continue;
            std::size_t b = bit_size(a[i][c]);
            if (best == m || b < best_bits) {
                best = i;
                best_bits = b;
            }
        }
        if (best == m) continue;
        std::swap(a[r], a[best]);
        const std::vector<K>& prow = a[r];
        const K piv = prow[c];
        std::vector<std::size_t> support;
        for (std::size_t j = c + 1; j < n; ++j)
            if (!is_zero(prow[j])) support.push_back(j);
        const bool unit_prev = prev == K(1);
        auto update = [&](std::size_t off) {
            std::vector<K>& row = a[r + 1 + off];
            K f = row[c];
            row[c] = K(0);
            for (std::size_t j = c + 1; j < n; ++j) {
                if (is_zero(row[j])) continue;
                row[j] *= piv;
            }
            if (!is_zero(f))
                for (std::size_t j : support) row[j] -= f * prow[j];
            if (!unit_prev)
                for (std::size_t j = c + 1; j < n; ++j)
                    if (!is_zero(row[j])) row[j] /= prev;
        };
        std::size_t below = m - r - 1;
        if (below * support.size() > 20000)
            parallel_for(below, update);
        else
            for (std::size_t off = 0; off < below; ++off) update(off);
        prev = piv;
        out.pivots.push_back(c);
        ++r;
    }
    out.rows = std::move(a);
    return out;
}

template <class K>
std::vector<std::vector<K>> to_rows(const Matrix<K>& A, const std::vector<K>* rhs) {
    std::vector<std::vector<K>> rows(A.rows(), std::vector<K>(A.cols() + (rhs ? 1 : 0), K(0)));
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c) rows[r][c] = A(r, c);
        if (rhs) rows[r][A.cols()] = (*rhs)[r];
    }
    return rows;
}

/// Back substitution: pivot unknowns from free values and optional rhs column.
template <class K>
std::vector<K> back_substitute(const Echelon<K>& e, std::size_t n, std::vector<K> x, bool with_rhs) {
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        const auto& row = e.rows[k];
        std::size_t pc = e.pivots[k];
        K s = with_rhs ? row[n] : K(0);
        for (std::size_t j = pc + 1; j < n; ++j)
            if (!is_zero(row[j]) && !is_zero(x[j])) s -= row[j] * x[j];
        x[pc] = s / row[pc];
    }
    return x;
}

template <class K>
std::vector<std::vector<K>> kernel_from(const Echelon<K>& e, std::size_t n) {
    std::vector<bool> is_pivot(n, false);
    for (auto pc : e.pivots) is_pivot[pc] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> x(n, K(0));
        x[f] = K(1);
        x = back_substitute(e, n, std::move(x), false);
        make_primitive(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace detail

template <class K>
std::size_t rank(const Matrix<K>& A) {
    return detail::bareiss(detail::to_rows(A, static_cast<const std::vector<K>*>(nullptr)), A.cols()).pivots.size();
}

/// Exact kernel of the matrix (the rhs is ignored).
template <class K>
SolutionFamily<K> nullspace(const LinearSystem<K>& sys) {
    const std::size_t n = sys.matrix.cols();
    auto e = detail::bareiss(detail::to_rows(sys.matrix, static_cast<const std::vector<K>*>(nullptr)), n);
    SolutionFamily<K> fam;
    fam.particular.assign(n, K(0));
    fam.basis = detail::kernel_from(e, n);
    fam.labels = sys.labels;
    fam.rank = e.pivots.size();
    return fam;
}

/// Particular solution (free unknowns zero) plus kernel. Throws Inconsistent
/// when rank(A|b) > rank(A).
template <class K>
SolutionFamily<K> solve_affine(const LinearSystem<K>& sys) {
    const std::size_t n = sys.matrix.cols();
    auto e = detail::bareiss(detail::to_rows(sys.matrix, &sys.rhs), n);
    for (std::size_t r = e.pivots.size(); r < e.rows.size(); ++r)
        if (!is_zero(e.rows[r][n]))
            throw Error(ErrorKind::Inconsistent, "rank(A|b) = " + std::to_string(e.pivots.size() + 1) + " exceeds rank(A) = " +
                                                     std::to_string(e.pivots.size()));
    SolutionFamily<K> fam;
    fam.particular = detail::back_substitute(e, n, std::vector<K>(n, K(0)), true);
    fam.basis = detail::kernel_from(e, n);
    fam.labels = sys.labels;
    fam.rank = e.pivots.size();
    return fam;
}

/// True iff A x = b holds exactly.
template <class K>
bool satisfies(const LinearSystem<K>& sys, const std::vector<K>& x, bool homogeneous = false) {
    auto y = sys.matrix.apply(x);
    for (std::size_t r = 0; r < y.size(); ++r)
        if (!(y[r] == (homogeneous ? K(0) : sys.rhs[r]))) return false;
    return true;
}

/// Substitutes a solution vector into unknown polynomials.
template <class K>
BasicPolyVec<K> instantiate(const LinPolyVec<K>& x, const std::vector<K>& values) {
    BasicPolyVec<K> out(x.dim());
    for (std::size_t c = 0; c < x.dim(); ++c)
        for (const auto& [m, f] : x[c].terms()) out[c].add_term(m, f.evaluate(values));
    return out;
}

}  // namespace pnforge
