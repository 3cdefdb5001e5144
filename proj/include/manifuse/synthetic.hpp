#pragma once

#include <array>
#include <cstdint>

#include "manifuse/types.hpp"

// Deterministic rotating-arrows benchmark: three cameras, each seeing two
// of the three shared arrows plus one sensor-specific arrow, rendered to
// RGB snapshots and observed through a random orthonormal projection. An
// optional frequency-modulated "pure noise" sensor can be appended.

namespace manifuse::synthetic {

struct RGB {
    double r, g, b;
};

struct ToyConfig {
    Eigen::Index n = 500;
    int image_height = 36;
    int image_width = 96;
    int channels = 3;
    Eigen::Index d_proj = 200;
    std::uint64_t seed = 42;
    double arrow_length = 14.0;
    double arrow_thickness = 2.0;
    bool include_noise_sensor = false;
    int noise_window = 64;
    double noise_rate_hz = 100.0;

    Eigen::Index image_vector_length() const {
        return static_cast<Eigen::Index>(image_height) * image_width * channels;
    }
    void validate() const;
};

// Three cameras, three common arrows, three peripheral arrows.
inline constexpr int kNumSensors = 3;
inline constexpr int kNumAngles = 6;   // theta1..theta3, n1..n3

// Angle column indices seen by each camera: two common plus one nuisance.
inline constexpr std::array<std::array<int, 3>, kNumSensors> kSensorAngles{{
    {{0, 1, 3}},   // theta1, theta2, n1
    {{1, 2, 4}},   // theta2, theta3, n2
    {{2, 0, 5}},   // theta3, theta1, n3
}};

// Arrow colors: common variables red/green/blue, nuisance orange/purple/gray.
std::array<RGB, 3> sensor_colors(int sensor);

// K x M table with rows theta1..theta3 and columns the three cameras.
SensitivityTable toy_sensitivity_table();

// Six independent uniform [0, 2pi) angle streams; every draw is a pure
// function of (seed, stream, sample), so any subset regenerates identically.
GroundTruth sample_angles(Eigen::Index n, std::uint64_t seed);

// Rasterize three arrows (one per 32-px cell) into a column-stacked RGB
// vector of length J: per-channel planes, column-major inside a plane.
Vector render_snapshot(const std::array<double, 3>& angles,
                       const std::array<RGB, 3>& colors, const ToyConfig& cfg);

// J x D orthonormal basis from a seeded Gaussian matrix (QR).
Matrix random_projection_basis(Eigen::Index j, Eigen::Index d, std::uint64_t seed);

// s_i = B^T r_i for every row; images are N x J, result N x D.
SampleMatrix observe(const Matrix& images, const Matrix& basis, std::string sensor_id);

struct NoiseSensor {
    SampleMatrix data;   // N x window
    Vector phi;          // instantaneous frequency at each window center
};

// Frequency-modulated unit sine sampled at rate_hz and cut into N
// consecutive non-overlapping windows. The modulation is
// phi(tau) = 1/2 + 1/4 sin(2 pi tau / 5120), n(t) = sin(2 pi int_0^t phi).
NoiseSensor noise_sensor_signal(Eigen::Index n, int window, double rate_hz);

// Full benchmark: angles -> per-camera renders -> shared projection ->
// optional noise sensor; ground truth attached.
MultimodalDataset generate_toy_dataset(const ToyConfig& cfg);

// Same pipeline with externally supplied angles (the ground-truth matrix
// must be N x 6 in [0, 2pi)).
MultimodalDataset generate_from_truth(const GroundTruth& truth, const ToyConfig& cfg);

} // namespace manifuse::synthetic
