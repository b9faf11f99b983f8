#pragma once

#include <string>

namespace specest {

enum class MeasureKind { PointMass, Uniform, LinearInc, LinearDec };

// One dictionary element: a probability measure of total mass 1 supported on
// [0, inf). Interval kinds carry closed-form CDFs and densities:
//   Uniform(a,b)    density 1/(b-a)
//   LinearInc(a,b)  density 2(x-a)/(b-a)^2
//   LinearDec(a,b)  density 2(b-x)/(b-a)^2
class BasisMeasure {
public:
    static BasisMeasure point_mass(double t);
    static BasisMeasure uniform(double a, double b);
    static BasisMeasure linear_inc(double a, double b);
    static BasisMeasure linear_dec(double a, double b);

    MeasureKind kind() const { return kind_; }
    bool is_point() const { return kind_ == MeasureKind::PointMass; }

    // Point-mass location; only valid for PointMass.
    double location() const { return a_; }
    // Interval bounds; only valid for interval kinds.
    double lower() const { return a_; }
    double upper() const { return b_; }
    double length() const { return b_ - a_; }

    double support_min() const { return a_; }
    double support_max() const { return is_point() ? a_ : b_; }

    double cdf(double x) const;
    // Lebesgue density; 0 everywhere for a point mass.
    double density(double x) const;

    // Image measure under x -> factor*x (factor > 0).
    BasisMeasure scaled(double factor) const;

    std::string describe() const;

    bool operator==(const BasisMeasure&) const = default;

private:
    BasisMeasure(MeasureKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
    MeasureKind kind_;
    double a_;  // point location, or interval lower bound
    double b_;  // interval upper bound (unused for point masses)
};

const char* kind_name(MeasureKind kind);

}  // namespace specest
