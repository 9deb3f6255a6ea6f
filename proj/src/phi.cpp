#include "dunkl/phi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

std::vector<double> parse_numbers(std::string_view body, std::string_view full) {
    std::vector<double> out;
    while (true) {
        const auto comma = body.find(',');
        const std::string_view token = body.substr(0, comma);
        double v = 0.0;
        const auto* first = token.data();
        const auto* last = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (token.empty() || ec != std::errc{} || ptr != last) {
            fail(ErrorCode::InvalidArgument, "malformed number in phi '" + std::string(full) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

// ((a + h)^q - a^q) for q > 0, h >= 0, computed stably.
double power_increment(double a, double h, double q) {
    if (h == 0.0) return 0.0;
    if (a == 0.0) return std::pow(h, q);
    return std::pow(a, q) * std::expm1(q * std::log1p(h / a));
}

std::string format_params(const std::vector<double>& p) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s << ',';
        s << p[i];
    }
    return s.str();
}

}  // namespace

Phi::Phi(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {
    validate();
    std::ostringstream d;
    switch (kind_) {
        case Kind::Power: d << params_[0] << " u^" << params_[1]; break;
        case Kind::Linear: d << params_[0] << " u"; break;
        case Kind::ExpMinusOne: d << params_[0] << " (e^u - 1)"; break;
        case Kind::Poly: {
            bool first = true;
            for (std::size_t j = 0; j < params_.size(); ++j) {
                if (params_[j] == 0.0) continue;
                if (!first) d << " + ";
                d << params_[j] << " u^" << j + 1;
                first = false;
            }
            break;
        }
    }
    description_ = d.str();
}

Phi Phi::power(double c, double p) { return Phi(Kind::Power, {c, p}); }
Phi Phi::linear(double c) { return Phi(Kind::Linear, {c}); }
Phi Phi::exp_minus_one(double c) { return Phi(Kind::ExpMinusOne, {c}); }
Phi Phi::poly(std::vector<double> coefficients) { return Phi(Kind::Poly, std::move(coefficients)); }

Phi Phi::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        fail(ErrorCode::InvalidArgument, "phi '" + std::string(text) + "' lacks ':' (expected e.g. power:1,2)");
    }
    const std::string_view name = text.substr(0, colon);
    auto nums = parse_numbers(text.substr(colon + 1), text);
    auto expect = [&](std::size_t n) {
        if (nums.size() != n) {
            std::ostringstream msg;
            msg << "phi '" << text << "' expects " << n << " parameter(s)";
            fail(ErrorCode::InvalidArgument, msg.str());
        }
    };
    if (name == "power") {
        expect(2);
        return power(nums[0], nums[1]);
    }
    if (name == "linear") {
        expect(1);
        return linear(nums[0]);
    }
    if (name == "expm1") {
        expect(1);
        return exp_minus_one(nums[0]);
    }
    if (name == "poly") return poly(std::move(nums));
    fail(ErrorCode::InvalidArgument, "unknown phi family '" + std::string(name) + "'");
}

std::string Phi::to_text() const {
    switch (kind_) {
        case Kind::Power: return "power:" + format_params(params_);
        case Kind::Linear: return "linear:" + format_params(params_);
        case Kind::ExpMinusOne: return "expm1:" + format_params(params_);
        case Kind::Poly: return "poly:" + format_params(params_);
    }
    return {};
}

void Phi::validate() const {
    auto bad = [](const std::string& m) { fail(ErrorCode::InvalidArgument, m); };
    for (double v : params_)
        if (!std::isfinite(v)) bad("phi parameters must be finite");
    switch (kind_) {
        case Kind::Power:
            if (!(params_[0] > 0.0)) bad("power: c must be > 0");
            if (!(params_[1] >= 1.0)) bad("power: p must be >= 1 (locally Lipschitz at 0)");
            break;
        case Kind::Linear:
        case Kind::ExpMinusOne:
            if (!(params_[0] > 0.0)) bad("phi: c must be > 0");
            break;
        case Kind::Poly:
            if (params_.empty()) bad("poly: no coefficients");
            if (std::any_of(params_.begin(), params_.end(), [](double c) { return c < 0.0; }))
                bad("poly: coefficients must be nonnegative");
            if (std::all_of(params_.begin(), params_.end(), [](double c) { return c == 0.0; }))
                bad("poly: phi must not vanish identically");
            break;
    }
    // Structural invariants, checked by evaluation.
    if ((*this)(0.0) != 0.0) bad("phi(0) must be 0");
    double prev = 0.0;
    for (int i = 1; i <= 64; ++i) {
        const double v = (*this)(0.25 * i);
        if (v < prev) bad("phi must be nondecreasing");
        prev = v;
    }
}

double Phi::operator()(double u) const {
    if (!(u > 0.0)) return 0.0;
    switch (kind_) {
        case Kind::Power: return params_[0] * std::pow(u, params_[1]);
        case Kind::Linear: return params_[0] * u;
        case Kind::ExpMinusOne: return params_[0] * std::expm1(u);
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t j = params_.size(); j-- > 0;) acc = (acc + params_[j]) * u;
            return acc;
        }
    }
    return 0.0;
}

double Phi::derivative(double u) const {
    u = std::max(u, 0.0);
    switch (kind_) {
        case Kind::Power:
            return params_[1] == 1.0 ? params_[0] : params_[0] * params_[1] * std::pow(u, params_[1] - 1.0);
        case Kind::Linear: return params_[0];
        case Kind::ExpMinusOne: return params_[0] * std::exp(u);
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t j = params_.size(); j-- > 0;) acc = acc * u + static_cast<double>(j + 1) * params_[j];
            return acc;
        }
    }
    return 0.0;
}

double Phi::log_value(double u) const {
    if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
    const double lu = std::log(u);
    switch (kind_) {
        case Kind::Power: return std::log(params_[0]) + params_[1] * lu;
        case Kind::Linear: return std::log(params_[0]) + lu;
        case Kind::ExpMinusOne: return std::log(params_[0]) + u + std::log(-std::expm1(-u));
        case Kind::Poly: {
            double peak = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < params_.size(); ++j)
                if (params_[j] > 0.0) peak = std::max(peak, std::log(params_[j]) + (j + 1) * lu);
            double sum = 0.0;
            for (std::size_t j = 0; j < params_.size(); ++j)
                if (params_[j] > 0.0) sum += std::exp(std::log(params_[j]) + (j + 1) * lu - peak);
            return peak + std::log(sum);
        }
    }
    return 0.0;
}

double Phi::primitive(double t) const { return primitive_increment(0.0, t); }

double Phi::primitive_increment(double a, double h) const {
    if (h == 0.0) return 0.0;
    if (a < 0.0 || h < 0.0) fail(ErrorCode::InvalidArgument, "primitive_increment requires a, h >= 0");
    switch (kind_) {
        case Kind::Power: {
            const double q = params_[1] + 1.0;
            return params_[0] * power_increment(a, h, q) / q;
        }
        case Kind::Linear: return params_[0] * h * (2.0 * a + h) / 2.0;
        case Kind::ExpMinusOne: {
            // c (e^a (e^h - 1) - h); series near a = 0, h -> 0 avoids cancellation.
            if (a == 0.0 && h < 1e-3) {
                return params_[0] * h * h * (0.5 + h * (1.0 / 6.0 + h * (1.0 / 24.0 + h / 120.0)));
            }
            return params_[0] * (std::exp(a) * std::expm1(h) - h);
        }
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t j = 0; j < params_.size(); ++j) {
                if (params_[j] == 0.0) continue;
                const double q = static_cast<double>(j + 2);
                acc += params_[j] * power_increment(a, h, q) / q;
            }
            return acc;
        }
    }
    return 0.0;
}

}  // namespace dunkl
