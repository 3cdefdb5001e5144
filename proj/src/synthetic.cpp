#include "manifuse/synthetic.hpp"

#include <cmath>

#include "manifuse/basis.hpp"
#include "manifuse/parallel.hpp"
#include "manifuse/rng.hpp"

namespace manifuse::synthetic {

namespace {

constexpr double kModulationPeriod = 512.0 * 10.0;

double modulation_phi(double tau) {
    return 0.5 + 0.25 * std::sin(2.0 * M_PI * tau / kModulationPeriod);
}

// distance from point p to segment [a, b]
double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double vx = bx - ax;
    const double vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double s = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const double dx = px - (ax + s * vx);
    const double dy = py - (ay + s * vy);
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace

void ToyConfig::validate() const {
    if (n < 2) throw invalid_config_error("ToyConfig: need n >= 2");
    if (image_height < 1 || image_width < 3 || channels < 1)
        throw invalid_config_error("ToyConfig: bad image shape");
    if (d_proj < 1 || d_proj > image_vector_length())
        throw invalid_config_error("ToyConfig: d_proj must satisfy 1 <= d_proj <= J=" +
                                   std::to_string(image_vector_length()));
    if (arrow_length <= 0.0 || arrow_thickness <= 0.0)
        throw invalid_config_error("ToyConfig: arrow geometry must be positive");
    if (include_noise_sensor && (noise_window < 2 || noise_rate_hz <= 0.0))
        throw invalid_config_error("ToyConfig: noise sensor needs window >= 2 and rate > 0");
}

std::array<RGB, 3> sensor_colors(int sensor) {
    static constexpr RGB red{1.0, 0.0, 0.0};
    static constexpr RGB green{0.0, 1.0, 0.0};
    static constexpr RGB blue{0.0, 0.0, 1.0};
    static constexpr RGB orange{1.0, 0.5, 0.0};
    static constexpr RGB purple{0.5, 0.0, 0.5};
    static constexpr RGB gray{0.5, 0.5, 0.5};
    switch (sensor) {
        case 0: return {red, green, orange};
        case 1: return {green, blue, purple};
        case 2: return {blue, red, gray};
        default: throw invalid_input_error("sensor_colors: sensor index out of range");
    }
}

SensitivityTable toy_sensitivity_table() {
    SensitivityTable s;
    s.table.resize(3, 3);
    // rows: theta1..theta3, columns: cameras 1..3
    s.table << 1, 0, 1,
               1, 1, 0,
               0, 1, 1;
    validate(s);
    return s;
}

GroundTruth sample_angles(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw invalid_config_error("sample_angles: need n >= 1");
    GroundTruth truth;
    truth.angles.resize(n, kNumAngles);
    for (int v = 0; v < kNumAngles; ++v)
        for (Eigen::Index i = 0; i < n; ++i)
            truth.angles(i, v) = rng::uniform_angle(
                seed, rng::kStreamAngleBase + static_cast<std::uint64_t>(v),
                static_cast<std::uint64_t>(i));
    truth.angle_names = {"theta1", "theta2", "theta3", "n1", "n2", "n3"};
    truth.sensitivity = toy_sensitivity_table();
    return truth;
}

Vector render_snapshot(const std::array<double, 3>& angles,
                       const std::array<RGB, 3>& colors, const ToyConfig& cfg) {
    const int h = cfg.image_height;
    const int w = cfg.image_width;
    const int plane = h * w;
    Vector img = Vector::Zero(cfg.image_vector_length());

    const int cell_w = w / 3;
    const double half = 0.5 * cfg.arrow_thickness;
    for (int a = 0; a < 3; ++a) {
        const double cx = cell_w * a + 0.5 * cell_w;
        const double cy = 0.5 * h;
        const double tipx = cx + cfg.arrow_length * std::cos(angles[static_cast<std::size_t>(a)]);
        const double tipy = cy - cfg.arrow_length * std::sin(angles[static_cast<std::size_t>(a)]);
        const RGB& color = colors[static_cast<std::size_t>(a)];
        const double channel[3] = {color.r, color.g, color.b};

        for (int col = cell_w * a; col < cell_w * (a + 1); ++col) {
            for (int row = 0; row < h; ++row) {
                const double d = segment_distance(col + 0.5, row + 0.5, cx, cy, tipx, tipy);
                const double alpha = std::clamp(half + 0.5 - d, 0.0, 1.0);
                if (alpha <= 0.0) continue;
                for (int c = 0; c < std::min(cfg.channels, 3); ++c) {
                    const Eigen::Index idx = static_cast<Eigen::Index>(c) * plane + col * h + row;
                    img(idx) = std::max(img(idx), alpha * channel[c]);
                }
            }
        }
    }
    return img;
}

Matrix random_projection_basis(Eigen::Index j, Eigen::Index d, std::uint64_t seed) {
    if (d > j)
        throw invalid_config_error("random_projection_basis: D=" + std::to_string(d) +
                                   " exceeds J=" + std::to_string(j));
    return detail::orthonormal_gaussian_basis(j, d, seed, rng::kStreamBasis);
}

SampleMatrix observe(const Matrix& images, const Matrix& basis, std::string sensor_id) {
    if (images.cols() != basis.rows())
        throw invalid_input_error("observe: images are N x " + std::to_string(images.cols()) +
                                  " but basis is " + std::to_string(basis.rows()) + " x " +
                                  std::to_string(basis.cols()));
    return SampleMatrix{images * basis, std::move(sensor_id)};
}

NoiseSensor noise_sensor_signal(Eigen::Index n, int window, double rate_hz) {
    if (n < 1 || window < 2)
        throw invalid_config_error("noise_sensor_signal: need n >= 1, window >= 2");
    if (rate_hz <= 0.0)
        throw invalid_config_error("noise_sensor_signal: rate must be > 0");

    const Eigen::Index total = n * window;
    const double dt = 1.0 / rate_hz;

    // trapezoid accumulation of the instantaneous frequency
    Vector samples(total);
    double integral = 0.0;
    double phi_prev = modulation_phi(0.0);
    samples(0) = std::sin(2.0 * M_PI * integral);
    for (Eigen::Index k = 1; k < total; ++k) {
        const double phi_k = modulation_phi(static_cast<double>(k) * dt);
        integral += 0.5 * (phi_prev + phi_k) * dt;
        phi_prev = phi_k;
        samples(k) = std::sin(2.0 * M_PI * integral);
    }

    NoiseSensor out;
    out.data.sensor_id = "noise";
    out.data.data.resize(n, window);
    out.phi.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.data.data.row(i) = samples.segment(i * window, window).transpose();
        const double center = (static_cast<double>(i) + 0.5) * window * dt;
        out.phi(i) = modulation_phi(center);
    }
    return out;
}

MultimodalDataset generate_toy_dataset(const ToyConfig& cfg) {
    cfg.validate();
    return generate_from_truth(sample_angles(cfg.n, cfg.seed), cfg);
}

MultimodalDataset generate_from_truth(const GroundTruth& truth, const ToyConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = truth.angles.rows();
    if (n != cfg.n || truth.angles.cols() != kNumAngles)
        throw invalid_input_error("generate_from_truth: angles must be n x 6");

    const Eigen::Index j = cfg.image_vector_length();
    const Matrix basis = random_projection_basis(j, cfg.d_proj, cfg.seed);

    MultimodalDataset data;
    data.ground_truth = truth;
    for (int m = 0; m < kNumSensors; ++m) {
        Matrix images(n, j);
        const auto colors = sensor_colors(m);
        par::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
            const Eigen::Index i = static_cast<Eigen::Index>(ui);
            const std::array<double, 3> angles = {
                truth.angles(i, kSensorAngles[static_cast<std::size_t>(m)][0]),
                truth.angles(i, kSensorAngles[static_cast<std::size_t>(m)][1]),
                truth.angles(i, kSensorAngles[static_cast<std::size_t>(m)][2]),
            };
            images.row(i) = render_snapshot(angles, colors, cfg).transpose();
        });
        data.sensors.push_back(observe(images, basis, "sensor_" + std::to_string(m + 1)));
    }

    if (cfg.include_noise_sensor) {
        NoiseSensor noise = noise_sensor_signal(n, cfg.noise_window, cfg.noise_rate_hz);
        data.sensors.push_back(std::move(noise.data));
        data.ground_truth->noise_phi = std::move(noise.phi);
    }
    return data;
}

} // namespace manifuse::synthetic
