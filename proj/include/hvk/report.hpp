#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace hvk {

inline std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct LabeledValue {
    std::string label;
    double value = 0.0;
    std::string exact;  // rational text when the value is exact, else empty
};

struct VerificationReport {
    std::string claim_id;
    std::vector<LabeledValue> computed;
    std::vector<LabeledValue> reference;
    double tolerance = 0.0;
    double defect = 0.0;  // max relative defect over the value pairs
    bool passed = false;
    std::map<std::string, std::string> diagnostics;

    void diag(const std::string& key, double v) { diagnostics[key] = format17(v); }
    void diag(const std::string& key, const std::string& v) { diagnostics[key] = v; }

    // defect_i = |c_i - r_i| / max(|r_i|, floor)
    VerificationReport& close(double floor = 0.0) {
        defect = 0.0;
        const std::size_t m = std::min(computed.size(), reference.size());
        for (std::size_t i = 0; i < m; ++i) {
            double r = reference[i].value, c = computed[i].value;
            double s = std::max(std::abs(r), floor);
            double d;
            if (!computed[i].exact.empty() && !reference[i].exact.empty())
                d = computed[i].exact == reference[i].exact ? 0.0 : std::abs(c - r) / std::max(s, 1e-300) + 1e-300;
            else
                d = s > 0 ? std::abs(c - r) / s : std::abs(c - r);
            if (std::isnan(d)) d = INFINITY;
            defect = std::max(defect, d);
        }
        passed = defect <= tolerance;
        return *this;
    }
};

inline void sort_reports(std::vector<VerificationReport>& rs) {
    std::stable_sort(rs.begin(), rs.end(),
                     [](const VerificationReport& a, const VerificationReport& b) { return a.claim_id < b.claim_id; });
}

inline bool all_passed(const std::vector<VerificationReport>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const VerificationReport& r) { return r.passed; });
}

}  // namespace hvk
