#pragma once

#include <array>
#include <string>

#include "cfcolor/exact.hpp"

namespace cfcolor {

// 2x2 integer matrix; an element of GL(2,Z) when the determinant is +-1.
struct Mat2Z {
    Int a11{1}, a12{0}, a21{0}, a22{1};

    static Mat2Z identity() { return {}; }

    Int det() const { return a11 * a22 - a12 * a21; }
    bool is_unimodular() const {
        Int d = det();
        return d == 1 || d == -1;
    }
    // Throws PreconditionError unless unimodular.
    Mat2Z inverse() const;
    Mat2Z pow(unsigned long e) const;

    std::array<Int, 2> apply(const Int& x, const Int& y) const {
        return {Int(a11 * x + a12 * y), Int(a21 * x + a22 * y)};
    }

    std::string str() const;

    friend Mat2Z operator*(const Mat2Z& l, const Mat2Z& r) {
        return {Int(l.a11 * r.a11 + l.a12 * r.a21), Int(l.a11 * r.a12 + l.a12 * r.a22),
                Int(l.a21 * r.a11 + l.a22 * r.a21), Int(l.a21 * r.a12 + l.a22 * r.a22)};
    }
    friend bool operator==(const Mat2Z&, const Mat2Z&) = default;
};

}  // namespace cfcolor
