#pragma once

#include "cmx/cyclo.hpp"

#include <string>
#include <vector>

namespace cmx {

// Dense matrix over cyclotomic numbers.
class Mat {
public:
    Mat() = default;
    Mat(int r, int c) : r_(r), c_(c), a_(size_t(r) * c) {}
    static Mat identity(int n);
    static Mat from_rows(const std::vector<std::vector<Cyclo>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Cyclo& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Cyclo& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Cyclo& s, const Mat& a);
    friend bool operator==(const Mat& a, const Mat& b) = default;
    std::vector<Cyclo> apply(const std::vector<Cyclo>& v) const;

    Mat transpose() const;
    Mat inverse() const;
    Mat pow(long e) const;
    Cyclo trace() const;
    Cyclo det() const;
    bool is_identity() const;
    bool is_zero() const;

    // reduced row echelon form in place; returns pivot columns
    std::vector<int> rref();
    int rank() const;
    // basis of {v : A v = 0}, one vector per free column
    std::vector<std::vector<Cyclo>> kernel() const;
    // characteristic polynomial det(xI - A), ascending coefficients
    std::vector<Cyclo> charpoly() const;
    // p(A) for ascending coefficients p
    Mat eval_poly(const std::vector<Cyclo>& p) const;

    int conductor() const;
    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Cyclo> a_;
};

}  // namespace cmx
