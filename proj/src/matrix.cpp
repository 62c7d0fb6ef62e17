#include "cfcolor/matrix.hpp"

#include "cfcolor/errors.hpp"

namespace cfcolor {

Mat2Z Mat2Z::inverse() const {
    Int d = det();
    require(d == 1 || d == -1, "matrix is not in GL(2,Z): det " + d.get_str());
    // d^-1 == d for d in {1,-1}
    return {Int(d * a22), Int(-d * a12), Int(-d * a21), Int(d * a11)};
}

Mat2Z Mat2Z::pow(unsigned long e) const {
    Mat2Z out = identity();
    Mat2Z base = *this;
    while (e) {
        if (e & 1) out = out * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return out;
}

std::string Mat2Z::str() const {
    return "[[" + a11.get_str() + "," + a12.get_str() + "],[" + a21.get_str() + "," +
           a22.get_str() + "]]";
}

}  // namespace cfcolor
