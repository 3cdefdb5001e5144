#include "manifuse/types.hpp"

namespace manifuse {

void validate(const SampleMatrix& x) {
    if (x.data.rows() < 2)
        throw invalid_input_error("SampleMatrix '" + x.sensor_id + "': need N >= 2 samples, got " +
                                  std::to_string(x.data.rows()));
    if (x.data.cols() < 1)
        throw invalid_input_error("SampleMatrix '" + x.sensor_id + "': need D >= 1 features");
    if (!x.data.allFinite())
        throw invalid_input_error("SampleMatrix '" + x.sensor_id + "': non-finite entries");
}

std::string to_string(DistanceKind k) {
    switch (k) {
        case DistanceKind::euclidean: return "euclidean";
        case DistanceKind::mahalanobis: return "mahalanobis";
        case DistanceKind::diffusion: return "diffusion";
        case DistanceKind::ad: return "ad";
        case DistanceKind::common: return "common";
    }
    return "unknown";
}

DistanceKind distance_kind_from_string(const std::string& s) {
    if (s == "euclidean") return DistanceKind::euclidean;
    if (s == "mahalanobis") return DistanceKind::mahalanobis;
    if (s == "diffusion") return DistanceKind::diffusion;
    if (s == "ad") return DistanceKind::ad;
    if (s == "common") return DistanceKind::common;
    throw invalid_input_error("unknown distance kind '" + s + "'");
}

void validate(const SensitivityTable& s) {
    for (Eigen::Index k = 0; k < s.table.rows(); ++k) {
        int row_sum = 0;
        for (Eigen::Index m = 0; m < s.table.cols(); ++m) {
            const int v = s.table(k, m);
            if (v != 0 && v != 1)
                throw invalid_input_error("SensitivityTable: entries must be 0/1");
            row_sum += v;
        }
        if (row_sum < 2)
            throw invalid_input_error("SensitivityTable: variable " + std::to_string(k) +
                                      " observed by fewer than 2 sensors");
    }
}

void validate(const MultimodalDataset& d) {
    if (d.sensors.size() < 2)
        throw invalid_input_error("MultimodalDataset: need M >= 2 sensors");
    const Eigen::Index n = d.sensors.front().n();
    for (const auto& s : d.sensors) {
        validate(s);
        if (s.n() != n)
            throw invalid_input_error("MultimodalDataset: sensor '" + s.sensor_id +
                                      "' sample count mismatch");
    }
}

} // namespace manifuse
