#pragma once

// Soft-margin SVM with a 3-degree polynomial kernel, trained by sequential
// minimal optimization. AE is the positive class (+1).

#include <cmath>
#include <cstddef>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"

namespace asrdet {

inline double poly3_kernel(const std::vector<double>& u, const std::vector<double>& v) {
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    const double base = dot + 1.0;
    return base * base * base;
}

struct SvmModel {
    std::size_t dim = 0;
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> coefficients;  // alpha_i * y_i
    double bias = 0.0;
    double c = 1.0;

    // Signed margin; positive means AE.
    double decision(const std::vector<double>& x) const {
        if (x.size() != dim) throw DimensionMismatch(dim, x.size());
        double f = bias;
        for (std::size_t i = 0; i < support_vectors.size(); ++i)
            f += coefficients[i] * poly3_kernel(support_vectors[i], x);
        return f;
    }
};

namespace detail {

inline int label_sign(Label l) { return l == Label::Ae ? +1 : -1; }

}  // namespace detail

inline SvmModel train_svm(const std::vector<FeatureVector>& data, double c = 1.0,
                          double tol = 1e-3) {
    if (data.empty()) throw DegenerateTraining("empty training set");
    const std::size_t n = data.size();
    const std::size_t dim = data.front().scores.size();

    std::vector<int> y(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!data[i].label) throw LabelError("unlabeled vector in training set: " + data[i].audio_id);
        if (data[i].scores.size() != dim) throw DimensionMismatch(dim, data[i].scores.size());
        y[i] = detail::label_sign(*data[i].label);
        (y[i] > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) throw DegenerateTraining("training data contains a single class");

    // Precomputed kernel matrix; training sets here are small (thousands).
    std::vector<double> kmat(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            kmat[i * n + j] = kmat[j * n + i] = poly3_kernel(data[i].scores, data[j].scores);
    auto k = [&](std::size_t i, std::size_t j) { return kmat[i * n + j]; };

    std::vector<double> alpha(n, 0.0);
    double b = 0.0;
    std::vector<double> err(n);
    auto decision_of = [&](std::size_t i) {
        double f = b;
        for (std::size_t j = 0; j < n; ++j)
            if (alpha[j] > 0.0) f += alpha[j] * y[j] * k(j, i);
        return f;
    };
    for (std::size_t i = 0; i < n; ++i) err[i] = decision_of(i) - y[i];

    // Platt SMO: second index chosen by max |E1 - E2|, deterministic scan
    // fallback. Alternates full passes with passes over non-bound alphas.
    auto take_step = [&](std::size_t i1, std::size_t i2) -> bool {
        if (i1 == i2) return false;
        const double a1_old = alpha[i1], a2_old = alpha[i2];
        const int y1 = y[i1], y2 = y[i2];
        const double e1 = err[i1], e2 = err[i2];
        const double s = y1 * y2;
        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2_old - a1_old);
            hi = std::min(c, c + a2_old - a1_old);
        } else {
            lo = std::max(0.0, a1_old + a2_old - c);
            hi = std::min(c, a1_old + a2_old);
        }
        if (lo >= hi) return false;
        const double eta = k(i1, i1) + k(i2, i2) - 2.0 * k(i1, i2);
        double a2;
        if (eta > 1e-12) {
            a2 = a2_old + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, lo, hi);
        } else {
            // Flat direction: move to the bound with lower objective.
            const double f1 = y1 * (e1 + b) - a1_old * k(i1, i1) - s * a2_old * k(i1, i2);
            const double f2 = y2 * (e2 + b) - s * a1_old * k(i1, i2) - a2_old * k(i2, i2);
            const double l1 = a1_old + s * (a2_old - lo);
            const double h1 = a1_old + s * (a2_old - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k(i1, i1) +
                                  0.5 * lo * lo * k(i2, i2) + s * lo * l1 * k(i1, i2);
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k(i1, i1) +
                                  0.5 * hi * hi * k(i2, i2) + s * hi * h1 * k(i1, i2);
            if (obj_lo < obj_hi - 1e-12) a2 = lo;
            else if (obj_hi < obj_lo - 1e-12) a2 = hi;
            else return false;
        }
        if (std::abs(a2 - a2_old) < 1e-12 * (a2 + a2_old + 1e-12)) return false;
        const double a1 = a1_old + s * (a2_old - a2);

        const double b1 = b - e1 - y1 * (a1 - a1_old) * k(i1, i1) - y2 * (a2 - a2_old) * k(i1, i2);
        const double b2 = b - e2 - y1 * (a1 - a1_old) * k(i1, i2) - y2 * (a2 - a2_old) * k(i2, i2);
        double b_new;
        if (a1 > 0.0 && a1 < c) b_new = b1;
        else if (a2 > 0.0 && a2 < c) b_new = b2;
        else b_new = 0.5 * (b1 + b2);

        const double db = b_new - b;
        for (std::size_t j = 0; j < n; ++j)
            err[j] += y1 * (a1 - a1_old) * k(i1, j) + y2 * (a2 - a2_old) * k(i2, j) + db;
        alpha[i1] = a1;
        alpha[i2] = a2;
        b = b_new;
        return true;
    };

    auto examine = [&](std::size_t i2) -> bool {
        const double e2 = err[i2];
        const double r2 = e2 * y[i2];
        const bool violates = (r2 < -tol && alpha[i2] < c) || (r2 > tol && alpha[i2] > 0.0);
        if (!violates) return false;
        // Best partner by |E1 - E2| among non-bound alphas.
        std::size_t best = i2;
        double best_gap = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (alpha[j] > 0.0 && alpha[j] < c) {
                const double gap = std::abs(err[j] - e2);
                if (gap > best_gap) best_gap = gap, best = j;
            }
        }
        if (best != i2 && take_step(best, i2)) return true;
        for (std::size_t j = 0; j < n; ++j)
            if (alpha[j] > 0.0 && alpha[j] < c && take_step(j, i2)) return true;
        for (std::size_t j = 0; j < n; ++j)
            if (take_step(j, i2)) return true;
        return false;
    };

    const std::size_t max_sweeps = 200 * n + 1000;
    std::size_t sweeps = 0;
    std::size_t changed = 1;
    bool examine_all = true;
    while ((changed > 0 || examine_all) && sweeps < max_sweeps) {
        changed = 0;
        if (examine_all) {
            for (std::size_t i = 0; i < n; ++i) changed += examine(i);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                if (alpha[i] > 0.0 && alpha[i] < c) changed += examine(i);
        }
        if (examine_all) examine_all = false;
        else if (changed == 0) examine_all = true;
        ++sweeps;
    }

    SvmModel model;
    model.dim = dim;
    model.c = c;
    model.bias = b;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) {
            model.support_vectors.push_back(data[i].scores);
            model.coefficients.push_back(alpha[i] * y[i]);
        }
    }
    return model;
}

}  // namespace asrdet
