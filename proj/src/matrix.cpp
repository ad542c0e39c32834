#include "cmx/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace cmx {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Cyclo(1);
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Cyclo>>& rows) {
    int r = int(rows.size());
    int c = r ? int(rows[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Cyclo& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    Mat m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    Mat m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
    return m;
}

Mat operator*(const Cyclo& s, const Mat& a) {
    Mat m = a;
    for (auto& x : m.a_) x *= s;
    return m;
}

std::vector<Cyclo> Mat::apply(const std::vector<Cyclo>& v) const {
    if (int(v.size()) != c_) throw std::invalid_argument("vector length mismatch");
    std::vector<Cyclo> out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

Mat Mat::transpose() const {
    Mat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

std::vector<int> Mat::rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int p = -1;
        for (int i = row; i < r_; ++i)
            if (!(*this)(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
        Cyclo inv = (*this)(row, col).inverse();
        for (int j = col; j < c_; ++j)
            if (!(*this)(row, j).is_zero()) (*this)(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || (*this)(i, col).is_zero()) continue;
            Cyclo f = (*this)(i, col);
            for (int j = col; j < c_; ++j)
                if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

int Mat::rank() const {
    Mat m = *this;
    return int(m.rref().size());
}

std::vector<std::vector<Cyclo>> Mat::kernel() const {
    Mat m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<Cyclo>> basis;
    for (int f = 0; f < c_; ++f) {
        if (is_piv[f]) continue;
        std::vector<Cyclo> v(c_);
        v[f] = Cyclo(1);
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(int(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat Mat::inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    Mat aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, c_ + i) = Cyclo(1);
    }
    auto piv = aug.rref();
    if (int(piv.size()) < r_ || piv[r_ - 1] >= c_) throw std::domain_error("singular matrix");
    Mat inv(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
}

Mat Mat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Mat r = identity(r_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Cyclo Mat::trace() const {
    Cyclo s;
    for (int i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
}

Cyclo Mat::det() const {
    if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
    Mat m = *this;
    Cyclo d(1);
    for (int col = 0; col < c_; ++col) {
        int p = -1;
        for (int i = col; i < r_; ++i)
            if (!m(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Cyclo();
        if (p != col) {
            for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Cyclo inv = m(col, col).inverse();
        for (int i = col + 1; i < r_; ++i) {
            if (m(i, col).is_zero()) continue;
            Cyclo f = m(i, col) * inv;
            for (int j = col; j < c_; ++j)
                if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

bool Mat::is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if ((*this)(i, j) != Cyclo(i == j ? 1 : 0)) return false;
    return true;
}

bool Mat::is_zero() const {
    for (auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<Cyclo> Mat::charpoly() const {
    if (r_ != c_) throw std::invalid_argument("charpoly of non-square matrix");
    int n = r_;
    // reduce to upper Hessenberg form by similarity, then the standard recurrence
    Mat h = *this;
    for (int k = 1; k < n - 1; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!h(i, k - 1).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(h(p, j), h(k, j));
            for (int i = 0; i < n; ++i) std::swap(h(i, p), h(i, k));
        }
        Cyclo inv = h(k, k - 1).inverse();
        for (int i = k + 1; i < n; ++i) {
            if (h(i, k - 1).is_zero()) continue;
            Cyclo f = h(i, k - 1) * inv;
            for (int j = 0; j < n; ++j)
                if (!h(k, j).is_zero()) h(i, j) -= f * h(k, j);
            for (int r = 0; r < n; ++r)
                if (!h(r, i).is_zero()) h(r, k) += f * h(r, i);
        }
    }
    // p_0 = 1; p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im * prod_{j=i+1}^{m} h_{j,j-1} * p_{i-1}
    std::vector<std::vector<Cyclo>> p(n + 1);
    p[0] = {Cyclo(1)};
    for (int m = 1; m <= n; ++m) {
        std::vector<Cyclo> cur(m + 1);
        const auto& prev = p[m - 1];
        for (int d = 0; d < int(prev.size()); ++d) {
            cur[d + 1] += prev[d];
            cur[d] -= h(m - 1, m - 1) * prev[d];
        }
        Cyclo prod(1);
        for (int i = m - 1; i >= 1; --i) {
            prod *= h(i, i - 1);
            if (prod.is_zero()) break;
            Cyclo f = h(i - 1, m - 1) * prod;
            if (f.is_zero()) continue;
            const auto& q = p[i - 1];
            for (int d = 0; d < int(q.size()); ++d) cur[d] -= f * q[d];
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

Mat Mat::eval_poly(const std::vector<Cyclo>& p) const {
    Mat r(r_, c_);
    for (int k = int(p.size()) - 1; k >= 0; --k) {
        r = r * (*this);
        for (int i = 0; i < r_; ++i) r(i, i) += p[k];
    }
    return r;
}

int Mat::conductor() const {
    long n = 1;
    for (auto& x : a_) n = lcm_int(n, x.conductor());
    return int(n);
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace cmx
