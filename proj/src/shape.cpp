#include "sw/shape.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sw {

SegreShape SegreShape::canonicalize(std::vector<long> dims) {
    if (dims.empty())
        throw std::invalid_argument("shape: need at least one factor");
    for (long a : dims) {
        if (a < 1)
            throw std::invalid_argument(
                "shape: factor dimensions must be >= 1");
    }
    SegreShape s;
    s.input_dims_ = dims;
    std::sort(dims.begin(), dims.end());
    s.dims_ = std::move(dims);
    s.points_ = 1;
    for (long a : s.dims_) {
        s.dim_ += a;
        s.points_ *= (a + 1);
        if (s.dim_ < 0)
            throw std::invalid_argument("shape: dimension sum overflow");
    }
    return s;
}

bool SegreShape::ambient_fits(std::size_t cap) const {
    return points_.fits_ulong_p() && points_.get_ui() <= cap;
}

std::size_t SegreShape::ambient_points_index() const {
    if (!points_.fits_ulong_p())
        throw std::invalid_argument("shape too large for dense computation");
    return static_cast<std::size_t>(points_.get_ui());
}

std::string SegreShape::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) os << ',';
        os << dims_[i];
    }
    os << ')';
    return os.str();
}

Rational critical_rank(const SegreShape& shape) {
    Rational kc(shape.ambient_points(), BigInt(1 + shape.dim()));
    kc.canonicalize();
    return kc;
}

BigInt expected_secant_dim(const SegreShape& shape, long k) {
    if (k < 1) throw std::invalid_argument("expected_secant_dim: k >= 1");
    const BigInt span = BigInt(k) * (shape.dim() + 1);
    return std::min(span, shape.ambient_points()) - 1;
}

BigInt segre_degree(const SegreShape& shape) {
    BigInt deg = factorial(static_cast<unsigned long>(shape.dim()));
    for (long a : shape.dims())
        deg /= factorial(static_cast<unsigned long>(a));
    return deg;
}

BigInt segre_degree_head(const SegreShape& shape) {
    std::vector<long> head(shape.dims().begin(), shape.dims().end() - 1);
    if (head.empty()) return BigInt(1);
    return segre_degree(SegreShape::canonicalize(std::move(head)));
}

BigInt max_k_below_critical(const SegreShape& shape) {
    return floor_strict(critical_rank(shape));
}

}  // namespace sw
