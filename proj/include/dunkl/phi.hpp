#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dunkl {

/// Admissible nonlinearity phi: nondecreasing, locally Lipschitz, phi(0) = 0.
///
/// A closed symbolic family so that primitives are exact and the growth of
/// int_0^t phi is decidable:
///   power(c, p)       c u^p, c > 0, p >= 1
///   linear(c)         c u
///   exp_minus_one(c)  c (e^u - 1)
///   poly(c1, c2, ...) c1 u + c2 u^2 + ..., all c_j >= 0, not all zero
/// Negative arguments evaluate to phi(0) = 0.
class Phi {
public:
    enum class Kind { Power, Linear, ExpMinusOne, Poly };

    static Phi power(double c, double p);
    static Phi linear(double c);
    static Phi exp_minus_one(double c);
    static Phi poly(std::vector<double> coefficients);

    /// Textual grammar: `power:c,p | linear:c | expm1:c | poly:c1,c2,...`.
    /// Throws Error(InvalidArgument) on malformed input.
    static Phi parse(std::string_view text);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& description() const noexcept { return description_; }
    [[nodiscard]] std::string to_text() const;

    double operator()(double u) const;
    double derivative(double u) const;
    /// log phi(u) for u > 0, computed without overflow.
    [[nodiscard]] double log_value(double u) const;
    /// int_0^t phi(s) ds.
    [[nodiscard]] double primitive(double t) const;
    /// int_a^{a+h} phi(s) ds without cancellation for small h.
    [[nodiscard]] double primitive_increment(double a, double h) const;

private:
    Phi(Kind kind, std::vector<double> params);
    void validate() const;

    Kind kind_;
    std::vector<double> params_;  // power: {c, p}; linear/expm1: {c}; poly: {c1, c2, ...}
    std::string description_;
};

}  // namespace dunkl
