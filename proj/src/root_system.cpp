#include "dunkl/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

constexpr double kStructuralTol = 1e-12;
constexpr double kNormTol = 1e-9;
constexpr double kGroupDedupTol = 1e-8;

Vec canonical_sign(Vec v) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kStructuralTol) {
            if (v[i] < 0) v = -v;
            break;
        }
    }
    return v;
}

double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Index of the positive root equal to +-v, or -1.
int find_root(const std::vector<Vec>& roots, const Vec& v, double tol) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (max_abs_diff(roots[i], v) <= tol || max_abs_diff(roots[i], -v) <= tol) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::vector<double> expand_multiplicities(const std::vector<double>& k, std::size_t n,
                                          const char* family) {
    if (k.size() == 1) return std::vector<double>(n, k.front());
    if (k.size() == n) return k;
    std::ostringstream msg;
    msg << family << ": expected 1 or " << n << " multiplicities, got " << k.size();
    fail(ErrorCode::InvalidArgument, msg.str());
}

}  // namespace

std::string to_string(RootFamily family) {
    switch (family) {
        case RootFamily::A1Product: return "a1_product";
        case RootFamily::Dihedral: return "dihedral";
        case RootFamily::BRank2: return "b2";
        case RootFamily::Custom: return "custom";
    }
    return "custom";
}

RootFamily root_family_from_string(const std::string& name) {
    if (name == "a1_product" || name == "A1_product") return RootFamily::A1Product;
    if (name == "dihedral") return RootFamily::Dihedral;
    if (name == "b2" || name == "B_rank2" || name == "b_rank2") return RootFamily::BRank2;
    if (name == "custom") return RootFamily::Custom;
    fail(ErrorCode::InvalidArgument, "unknown root system family '" + name + "'");
}

Vec reflect(const Vec& alpha, const Vec& x) {
    return x - (2.0 * alpha.dot(x) / alpha.squaredNorm()) * alpha;
}

Mat reflection_matrix(const Vec& alpha) {
    const auto d = alpha.size();
    Mat s = Mat::Identity(d, d);
    s -= (2.0 / alpha.squaredNorm()) * alpha * alpha.transpose();
    return s;
}

RootSystem RootSystem::build(RootFamily family, const RootSystemParams& params) {
    RootSystem sys;
    sys.family_ = family;
    const double s2 = std::numbers::sqrt2;

    switch (family) {
        case RootFamily::A1Product: {
            const int d = params.dimension;
            if (d < 1 || d > kMaxDim) fail(ErrorCode::InvalidArgument, "a1_product: dimension out of range");
            sys.dimension_ = d;
            for (int i = 0; i < d; ++i) {
                Vec e = Vec::Zero(d);
                e[i] = s2;
                sys.roots_.push_back(e);
            }
            sys.k_ = expand_multiplicities(params.k, static_cast<std::size_t>(d), "a1_product");
            break;
        }
        case RootFamily::Dihedral: {
            const int n = params.order;
            if (n < 2) fail(ErrorCode::InvalidArgument, "dihedral: order must be >= 2");
            sys.dimension_ = 2;
            std::vector<double> classes = params.k;
            if (classes.size() == 1) classes.push_back(classes.front());
            if (classes.size() != 2) fail(ErrorCode::InvalidArgument, "dihedral: expected 1 or 2 multiplicities");
            for (int j = 0; j < n; ++j) {
                const double theta = std::numbers::pi * j / n;
                Vec a(2);
                a << s2 * std::cos(theta), s2 * std::sin(theta);
                // Snap tiny coordinates so that axis roots are exact.
                for (int i = 0; i < 2; ++i)
                    if (std::abs(a[i]) < 1e-15) a[i] = 0.0;
                sys.roots_.push_back(canonical_sign(a));
                sys.k_.push_back(classes[static_cast<std::size_t>(j % 2)]);
            }
            break;
        }
        case RootFamily::BRank2: {
            sys.dimension_ = 2;
            std::vector<double> classes = params.k;
            if (classes.size() == 1) classes.push_back(classes.front());
            if (classes.size() != 2) fail(ErrorCode::InvalidArgument, "b2: expected 1 or 2 multiplicities");
            Vec e1(2), e2(2), l1(2), l2(2);
            e1 << s2, 0.0;
            e2 << 0.0, s2;
            l1 << 1.0, 1.0;
            l2 << 1.0, -1.0;
            sys.roots_ = {e1, e2, l1, l2};
            sys.k_ = {classes[0], classes[0], classes[1], classes[1]};
            break;
        }
        case RootFamily::Custom: {
            const int d = params.dimension > 0
                              ? params.dimension
                              : (params.roots.empty() ? 0 : static_cast<int>(params.roots.front().size()));
            if (d < 1 || d > kMaxDim) fail(ErrorCode::InvalidArgument, "custom: dimension out of range");
            if (params.roots.empty()) fail(ErrorCode::InvalidArgument, "custom: no roots given");
            sys.dimension_ = d;
            for (const auto& r : params.roots) {
                if (r.size() != d) fail(ErrorCode::InvalidArgument, "custom: root dimension mismatch");
                if (r.squaredNorm() == 0.0) fail(ErrorCode::InvalidArgument, "custom: zero root");
                if (std::abs(r.squaredNorm() - 2.0) > kNormTol) {
                    std::ostringstream msg;
                    msg << "custom root has |alpha|^2 = " << r.squaredNorm() << ", expected 2";
                    fail(ErrorCode::UnnormalizedRoot, msg.str());
                }
                sys.roots_.push_back(canonical_sign(r));
            }
            sys.k_ = expand_multiplicities(params.k, sys.roots_.size(), "custom");
            break;
        }
    }

    for (double k : sys.k_) {
        if (!(k >= 0.0) || !std::isfinite(k)) fail(ErrorCode::InvalidArgument, "multiplicities must be finite and >= 0");
    }

    // R n R.alpha = {+-alpha}: no two stored roots may be parallel.
    for (std::size_t i = 0; i < sys.roots_.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.roots_.size(); ++j) {
            const double c = sys.roots_[i].dot(sys.roots_[j]);
            if (std::abs(std::abs(c) - 2.0) <= kStructuralTol) {
                fail(ErrorCode::NotARootSystem, "two roots are parallel");
            }
        }
    }

    // Closure sigma_alpha(R) = R and W-invariance of k.
    for (std::size_t i = 0; i < sys.roots_.size(); ++i) {
        for (std::size_t j = 0; j < sys.roots_.size(); ++j) {
            const Vec image = reflect(sys.roots_[i], sys.roots_[j]);
            const int idx = find_root(sys.roots_, image, kStructuralTol);
            if (idx < 0) {
                std::ostringstream msg;
                msg << "reflection of root " << j << " in root " << i << " is not in the system";
                fail(ErrorCode::NotARootSystem, msg.str());
            }
            if (std::abs(sys.k_[static_cast<std::size_t>(idx)] - sys.k_[j]) > kStructuralTol) {
                std::ostringstream msg;
                msg << "k(sigma_" << i << " alpha_" << j << ") != k(alpha_" << j << ")";
                fail(ErrorCode::NonInvariantMultiplicity, msg.str());
            }
        }
    }

    double sum = 0.0;
    for (double k : sys.k_) sum += k;
    sys.m_ = sys.dimension_ + 2.0 * sum;
    if (!(sys.m_ > 2.0)) {
        std::ostringstream msg;
        msg << "m = " << sys.m_ << " must exceed 2";
        fail(ErrorCode::MTooSmall, msg.str());
    }
    return sys;
}

std::vector<Vec> RootSystem::full_system() const {
    std::vector<Vec> out(roots_);
    for (const auto& r : roots_) out.push_back(-r);
    return out;
}

std::vector<double> RootSystem::full_multiplicities() const {
    std::vector<double> out(k_);
    out.insert(out.end(), k_.begin(), k_.end());
    return out;
}

double RootSystem::weight(const Vec& x) const {
    double w = 1.0;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (k_[i] == 0.0) continue;
        // +alpha and -alpha contribute the same factor.
        w *= std::pow(std::abs(roots_[i].dot(x)), 2.0 * k_[i]);
    }
    return w;
}

std::vector<GroupElement> enumerate_group(const RootSystem& sys, std::size_t cap) {
    const int d = sys.dimension();
    std::vector<Mat> generators;
    for (const auto& r : sys.positive_roots()) generators.push_back(reflection_matrix(r));

    std::vector<GroupElement> elements{{Mat::Identity(d, d), 0}};
    std::deque<std::size_t> frontier{0};
    auto known = [&](const Mat& g) {
        return std::any_of(elements.begin(), elements.end(), [&](const GroupElement& e) {
            return (e.matrix - g).cwiseAbs().maxCoeff() < kGroupDedupTol;
        });
    };

    while (!frontier.empty()) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        for (const auto& s : generators) {
            Mat product = s * elements[idx].matrix;
            if (known(product)) continue;
            elements.push_back({product, elements[idx].word_length + 1});
            if (elements.size() > cap) {
                std::ostringstream msg;
                msg << "group enumeration exceeded " << cap << " elements";
                fail(ErrorCode::GroupTooLarge, msg.str());
            }
            frontier.push_back(elements.size() - 1);
        }
    }
    return elements;
}

}  // namespace dunkl
