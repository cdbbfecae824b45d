#include "wasep/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wasep {

MeanSem mean_sem(const std::vector<double>& xs) {
    MeanSem s;
    s.count = std::int64_t(xs.size());
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= double(xs.size());
    if (xs.size() > 1) {
        double v = 0.0;
        for (double x : xs) v += (x - s.mean) * (x - s.mean);
        v /= double(xs.size() - 1);
        s.sd = std::sqrt(v);
        s.sem = s.sd / std::sqrt(double(xs.size()));
    }
    return s;
}

VarEstimate variance_estimate(const std::vector<double>& xs) {
    VarEstimate v;
    v.count = std::int64_t(xs.size());
    if (xs.size() < 2) return v;
    const MeanSem m = mean_sem(xs);
    v.var = m.sd * m.sd;
    v.sem = v.var * std::sqrt(2.0 / double(xs.size() - 1));
    return v;
}

CompareRecord compare(const std::vector<double>& sim_mean,
                      const std::vector<double>& sim_sem,
                      const std::vector<double>& prediction, double tolerance,
                      CompareMode mode) {
    if (sim_mean.size() != prediction.size() ||
        (mode == CompareMode::ZScore && sim_sem.size() != sim_mean.size()))
        throw std::invalid_argument("compare: grid mismatch");
    CompareRecord rec;
    rec.mode = mode;
    rec.tolerance = tolerance;
    rec.pass = true;
    for (std::size_t i = 0; i < sim_mean.size(); ++i) {
        const double diff = sim_mean[i] - prediction[i];
        const double z = sim_sem.empty() || sim_sem[i] == 0.0
                             ? (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                             : diff / sim_sem[i];
        rec.z.push_back(z);
        const double denom = std::abs(prediction[i]);
        rec.rel_err.push_back(denom > 0 ? std::abs(diff) / denom : std::abs(diff));
        if (mode == CompareMode::ZScore && std::abs(z) > tolerance) rec.pass = false;
        if (mode == CompareMode::RelErr && rec.rel_err.back() > tolerance)
            rec.pass = false;
    }
    return rec;
}

}  // namespace wasep
