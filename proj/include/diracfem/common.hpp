#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace diracfem {

inline constexpr double kPi = std::numbers::pi;

/// 2D point (also used for vectors such as gradients).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::sqrt(dot(a, a)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A query point lies outside the meshed region.
class OutsideDomainError : public Error {
  public:
    using Error::Error;
};

/// A closed-form solution was evaluated at its singular point.
class SingularityError : public Error {
  public:
    using Error::Error;
};

/// Iterative solver missed its tolerance; carries the final iterate state.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& msg, int iterations_, double residual_)
        : Error(msg), iterations(iterations_), residual(residual_) {}
    int iterations;
    double residual;
};

/// Compensated accumulator; keeps reductions order-stable and accurate.
class KahanSum {
  public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace diracfem
