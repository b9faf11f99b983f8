#include "specest/basis_measure.hpp"

#include <stdexcept>

#include "specest/io_util.hpp"

namespace specest {

namespace {

void check_interval(double a, double b) {
    if (!(a >= 0.0)) throw std::invalid_argument("interval lower bound must be >= 0");
    if (!(b > a)) throw std::invalid_argument("interval needs b > a");
}

}  // namespace

BasisMeasure BasisMeasure::point_mass(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("point mass location must be >= 0");
    return BasisMeasure(MeasureKind::PointMass, t, t);
}

BasisMeasure BasisMeasure::uniform(double a, double b) {
    check_interval(a, b);
    return BasisMeasure(MeasureKind::Uniform, a, b);
}

BasisMeasure BasisMeasure::linear_inc(double a, double b) {
    check_interval(a, b);
    return BasisMeasure(MeasureKind::LinearInc, a, b);
}

BasisMeasure BasisMeasure::linear_dec(double a, double b) {
    check_interval(a, b);
    return BasisMeasure(MeasureKind::LinearDec, a, b);
}

double BasisMeasure::cdf(double x) const {
    switch (kind_) {
        case MeasureKind::PointMass:
            return x >= a_ ? 1.0 : 0.0;
        case MeasureKind::Uniform: {
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            return (x - a_) / (b_ - a_);
        }
        case MeasureKind::LinearInc: {
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            double s = (x - a_) / (b_ - a_);
            return s * s;
        }
        case MeasureKind::LinearDec: {
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            double s = (b_ - x) / (b_ - a_);
            return 1.0 - s * s;
        }
    }
    return 0.0;
}

double BasisMeasure::density(double x) const {
    if (kind_ == MeasureKind::PointMass) return 0.0;
    if (x < a_ || x > b_) return 0.0;
    double len = b_ - a_;
    switch (kind_) {
        case MeasureKind::Uniform:
            return 1.0 / len;
        case MeasureKind::LinearInc:
            return 2.0 * (x - a_) / (len * len);
        case MeasureKind::LinearDec:
            return 2.0 * (b_ - x) / (len * len);
        default:
            return 0.0;
    }
}

BasisMeasure BasisMeasure::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
    return BasisMeasure(kind_, a_ * factor, b_ * factor);
}

std::string BasisMeasure::describe() const {
    if (is_point()) return std::string("point(") + fmt_double(a_) + ")";
    return std::string(kind_name(kind_)) + "(" + fmt_double(a_) + "," + fmt_double(b_) + ")";
}

const char* kind_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::PointMass: return "point";
        case MeasureKind::Uniform: return "uniform";
        case MeasureKind::LinearInc: return "linear_inc";
        case MeasureKind::LinearDec: return "linear_dec";
    }
    return "?";
}

}  // namespace specest
