// manifuse command-line front end: dataset generation, embedding schemes,
// evaluation, plotting and distance exports. Exit codes: 0 success,
// 2 configuration error, 3 input error, 4 numerical failure.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "manifuse/diffusion.hpp"
#include "manifuse/evaluation.hpp"
#include "manifuse/fusion.hpp"
#include "manifuse/io.hpp"
#include "manifuse/manifest.hpp"
#include "manifuse/synthetic.hpp"
#include "manifuse/viz.hpp"

namespace fs = std::filesystem;
using namespace manifuse;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct ToyFlags {
    synthetic::ToyConfig cfg;
    std::string out_dir = "toy";
};

struct SchemeFlags {
    fusion::FusionConfig cfg;
    std::string data_dir;
    std::string out_dir = ".";
    std::string scheme = "common-graph";
    std::string metric = "euclidean";
    Eigen::Index fixed_dim = 0;      // 0 = spectral gap
    bool unsquared_union = false;
    std::vector<int> pair = {0, 1};  // for --scheme ad
};

void add_fusion_flags(CLI::App* cmd, SchemeFlags& f) {
    cmd->add_option("--data", f.data_dir, "dataset directory (from gen-toy)")->required();
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--scheme", f.scheme, "dm|ad|common-graph|common-graph-mahalanobis|concat|mult")
        ->check(CLI::IsMember({"dm", "ad", "common-graph", "common-graph-mahalanobis", "concat",
                               "mult"}));
    cmd->add_option("--t", f.cfg.t, "diffusion time");
    cmd->add_option("--l", f.fixed_dim, "fixed embedding dimension (0: spectral gap)");
    cmd->add_option("--l-max", f.cfg.l_max, "spectral-gap search bound");
    cmd->add_option("--eps-mult", f.cfg.eps_multiplier_sensor, "per-sensor median multiplier");
    cmd->add_option("--eps-mult-union", f.cfg.eps_multiplier_union, "union kernel multiplier");
    cmd->add_option("--metric", f.metric, "euclidean|mahalanobis")
        ->check(CLI::IsMember({"euclidean", "mahalanobis"}));
    cmd->add_option("--rp-dim", f.cfg.rp_dim, "random-projection pre-reduction dimension");
    cmd->add_option("--seed", f.cfg.seed, "seed for seeded stages");
    cmd->add_option("--pair", f.pair, "ordered sensor pair for --scheme ad")->expected(2);
    cmd->add_flag("--unsquared-union", f.unsquared_union,
                  "use exp(-d/eps) instead of exp(-d^2/eps) for the union kernel");
}

fusion::FusionConfig finish_fusion_config(const SchemeFlags& f) {
    fusion::FusionConfig cfg = f.cfg;
    cfg.metric = f.metric == "mahalanobis" ? kernels::Metric::mahalanobis
                                           : kernels::Metric::euclidean;
    cfg.squared_union_kernel = !f.unsquared_union;
    if (f.fixed_dim > 0) {
        cfg.embed_dim_policy = fusion::DimPolicy::fixed;
        cfg.embed_fixed_dim = f.fixed_dim;
    }
    cfg.validate();
    return cfg;
}

MultimodalDataset load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw io_error("dataset directory '" + dir.string() + "' not found");
    std::map<std::string, fs::path> sensor_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("sensor_", 0) == 0 && entry.path().extension() == ".csv")
            sensor_files.emplace(name, entry.path());
    }
    if (sensor_files.size() < 2)
        throw io_error("dataset directory '" + dir.string() + "' has fewer than 2 sensor files");

    MultimodalDataset data;
    for (const auto& [name, path] : sensor_files) {
        io::MatrixFile file = io::read_matrix(path);
        SampleMatrix s{std::move(file.values), path.stem().string()};
        data.sensors.push_back(std::move(s));
    }

    const fs::path truth_path = dir / "ground_truth.csv";
    if (fs::exists(truth_path)) {
        io::MatrixFile truth = io::read_matrix(truth_path);
        GroundTruth gt;
        gt.sensitivity = synthetic::toy_sensitivity_table();
        gt.angle_names = {"theta1", "theta2", "theta3", "n1", "n2", "n3"};
        if (truth.values.cols() >= 7) {
            gt.angles = truth.values.leftCols(6);
            gt.noise_phi = truth.values.col(6);
        } else {
            gt.angles = truth.values;
        }
        data.ground_truth = std::move(gt);
    }
    validate(data);
    return data;
}

int run_gen_toy(const ToyFlags& f) {
    f.cfg.validate();
    fs::create_directories(f.out_dir);
    ExperimentManifest manifest("gen-toy");
    manifest.set("seed", static_cast<long long>(f.cfg.seed));
    manifest.set("n", static_cast<long long>(f.cfg.n));
    manifest.set("d_proj", static_cast<long long>(f.cfg.d_proj));
    manifest.set("image_height", static_cast<long long>(f.cfg.image_height));
    manifest.set("image_width", static_cast<long long>(f.cfg.image_width));
    manifest.set("channels", static_cast<long long>(f.cfg.channels));
    manifest.set("arrow_length", f.cfg.arrow_length);
    manifest.set("arrow_thickness", f.cfg.arrow_thickness);
    manifest.set("noise_sensor", static_cast<long long>(f.cfg.include_noise_sensor ? 1 : 0));
    manifest.set("noise_window", static_cast<long long>(f.cfg.noise_window));
    manifest.set("noise_rate_hz", f.cfg.noise_rate_hz);

    Stopwatch gen_clock;
    const MultimodalDataset data = synthetic::generate_toy_dataset(f.cfg);
    manifest.record_timing("generate", gen_clock.ms());

    Stopwatch write_clock;
    const fs::path dir(f.out_dir);
    for (std::size_t m = 0; m < data.sensors.size(); ++m) {
        const fs::path path = dir / ("sensor_" + std::to_string(m + 1) + ".csv");
        io::write_matrix(path, data.sensors[m].data, "sample");
        manifest.record_digest(path);
    }

    const GroundTruth& gt = *data.ground_truth;
    Matrix truth(f.cfg.n, gt.noise_phi ? 7 : 6);
    truth.leftCols(6) = gt.angles;
    if (gt.noise_phi) truth.col(6) = *gt.noise_phi;
    const fs::path truth_path = dir / "ground_truth.csv";
    io::write_matrix(truth_path, truth, "ground_truth");
    manifest.record_digest(truth_path);
    manifest.record_timing("write", write_clock.ms());
    manifest.write(dir / "manifest.txt");

    std::cout << "wrote " << data.sensors.size() << " sensors (N=" << f.cfg.n
              << ", D=" << f.cfg.d_proj << ") to " << f.out_dir << "\n";
    return 0;
}

int run_embed(const SchemeFlags& f) {
    const fusion::FusionConfig cfg = finish_fusion_config(f);
    const MultimodalDataset data = load_dataset(f.data_dir);
    fs::create_directories(f.out_dir);
    const fs::path out_dir(f.out_dir);

    ExperimentManifest manifest("embed");
    manifest.set("scheme", f.scheme);
    manifest.set("data", f.data_dir);
    manifest.set("t", static_cast<long long>(cfg.t));
    manifest.set("metric", f.metric);
    manifest.set("eps_mult", cfg.eps_multiplier_sensor);
    manifest.set("eps_mult_union", cfg.eps_multiplier_union);
    manifest.set("l_fixed", static_cast<long long>(f.fixed_dim));
    manifest.set("l_max", static_cast<long long>(cfg.l_max));
    manifest.set("squared_union_kernel",
                 static_cast<long long>(cfg.squared_union_kernel ? 1 : 0));
    manifest.set("rp_dim", static_cast<long long>(cfg.rp_dim));
    manifest.set("seed", static_cast<long long>(cfg.seed));
    for (const auto& s : data.sensors)
        manifest.record_digest(fs::path(f.data_dir) / (s.sensor_id + ".csv"));

    Stopwatch clock;
    std::vector<fs::path> outputs;
    if (f.scheme == "dm") {
        for (const auto& s : data.sensors) {
            const Embedding e = fusion::single_sensor_dm(s, cfg);
            const fs::path path = out_dir / ("embedding_dm_" + s.sensor_id + ".csv");
            io::write_embedding(path, e);
            outputs.push_back(path);
        }
    } else if (f.scheme == "ad") {
        const int m = f.pair[0], n = f.pair[1];
        const int count = static_cast<int>(data.sensors.size());
        if (m < 0 || n < 0 || m >= count || n >= count || m == n)
            throw invalid_config_error("--pair must name two distinct sensors in [0," +
                                       std::to_string(count - 1) + "]");
        const auto ops = fusion::sensor_operators(data, cfg);
        const auto ad = alternating::ad_operator(ops[static_cast<std::size_t>(m)],
                                                 ops[static_cast<std::size_t>(n)], m, n);
        const Eigen::Index fixed =
            cfg.embed_dim_policy == fusion::DimPolicy::fixed ? cfg.embed_fixed_dim : 0;
        const Embedding e = diffusion::diffusion_map(ad.op, cfg.t, fixed, cfg.l_max);
        const fs::path path = out_dir / ("embedding_ad_" + std::to_string(m) + "_" +
                                         std::to_string(n) + ".csv");
        io::write_embedding(path, e);
        outputs.push_back(path);
    } else {
        Embedding e;
        fusion::FusionConfig run_cfg = cfg;
        if (f.scheme == "common-graph-mahalanobis")
            run_cfg.union_variant = fusion::UnionVariant::mahalanobis_union;
        if (f.scheme == "common-graph" || f.scheme == "common-graph-mahalanobis")
            e = fusion::common_graph(data, run_cfg);
        else if (f.scheme == "concat")
            e = fusion::concatenation_baseline(data, run_cfg);
        else
            e = fusion::multiplication_baseline(data, run_cfg);
        const fs::path path = out_dir / ("embedding_" + f.scheme + ".csv");
        io::write_embedding(path, e);
        outputs.push_back(path);
    }
    manifest.record_timing("embed", clock.ms());
    for (const auto& p : outputs) manifest.record_digest(p);
    manifest.write(out_dir / ("manifest_embed_" + f.scheme + ".txt"));

    for (const auto& p : outputs) std::cout << "wrote " << p.string() << "\n";
    return 0;
}

struct EvalFlags {
    std::string embedding_file;
    std::string truth_file;
    std::string out_prefix = "eval";
    int knn_bins = 4;
    int knn_k = 7;
    int repeats = 10;
    double split = 0.75;
    std::uint64_t seed = 0;
};

int run_eval(const EvalFlags& f) {
    const Embedding e = io::read_embedding(f.embedding_file);
    const io::MatrixFile truth = io::read_matrix(f.truth_file);
    if (truth.values.rows() != e.n())
        throw invalid_input_error("eval: embedding and ground truth row counts differ");
    if (truth.values.cols() < 6)
        throw invalid_input_error("eval: ground truth needs >= 6 angle columns");

    const std::vector<std::string> names = {"theta1", "theta2", "theta3", "n1", "n2", "n3"};
    std::vector<evaluation::RecoveryScore> scores;
    for (int v = 0; v < 6; ++v)
        scores.push_back(evaluation::angle_recovery_r2(e, truth.values.col(v), names[static_cast<std::size_t>(v)]));
    if (truth.values.cols() >= 7)
        scores.push_back(evaluation::value_recovery_r2(e, truth.values.col(6), "noise_phi"));

    const std::vector<int> labels =
        evaluation::quantize_angle(truth.values.col(0), f.knn_bins);
    const evaluation::ClassificationReport knn =
        evaluation::knn_classify(e, labels, f.knn_k, f.split, f.repeats, f.seed);

    const fs::path report_path = f.out_prefix + "_report.txt";
    std::ofstream report(report_path, std::ios::binary);
    if (!report) throw io_error("cannot open '" + report_path.string() + "'");
    report << "embedding: " << f.embedding_file << " (N=" << e.n() << ", L=" << e.dim()
           << ", t=" << e.t << ")\n";
    for (const auto& s : scores)
        report << "r2." << s.variable_id << " = " << io::format_double(s.r_squared)
               << (s.rank_deficient ? "  [rank deficient]" : "") << "\n";
    report << "knn.bins = " << f.knn_bins << "\nknn.k = " << knn.k << "\nknn.total_error = "
           << io::format_double(knn.total_error) << "\nknn.total_std = "
           << io::format_double(knn.total_std) << "\n";
    for (std::size_t c = 0; c < knn.per_class_error.size(); ++c)
        report << "knn.class_" << c << "_error = " << io::format_double(knn.per_class_error[c])
               << "\n";

    Matrix table(static_cast<Eigen::Index>(scores.size()) + 1, 2);
    for (std::size_t s = 0; s < scores.size(); ++s) {
        table(static_cast<Eigen::Index>(s), 0) = static_cast<double>(s);
        table(static_cast<Eigen::Index>(s), 1) = scores[s].r_squared;
    }
    table(static_cast<Eigen::Index>(scores.size()), 0) = -1.0;   // knn row
    table(static_cast<Eigen::Index>(scores.size()), 1) = knn.total_error;
    io::write_matrix(f.out_prefix + "_scores.csv", table, "scores");

    std::cout << "wrote " << report_path.string() << " and " << f.out_prefix
              << "_scores.csv\n";
    return 0;
}

struct PlotFlags {
    std::string embedding_file;
    std::string color_file;
    Eigen::Index x = 0, y = 1;
    Eigen::Index color_col = 0;
    std::string out = "plot.svg";
};

int run_plot(const PlotFlags& f) {
    const Embedding e = io::read_embedding(f.embedding_file);
    if (e.dim() < 2) throw invalid_input_error("plot: embedding needs >= 2 columns");
    const io::MatrixFile colors = io::read_matrix(f.color_file);
    if (f.color_col < 0 || f.color_col >= colors.values.cols())
        throw invalid_config_error("plot: color column out of range");
    if (colors.values.rows() != e.n())
        throw invalid_input_error("plot: color file row count mismatch");
    viz::svg_scatter(f.out, e.coordinates, f.x, f.y, colors.values.col(f.color_col));
    std::cout << "wrote " << f.out << "\n";
    return 0;
}

struct DistanceFlags {
    SchemeFlags scheme;
    std::string out = "distances.csv";
    int sensor = 0;
    std::string what = "euclidean";   // euclidean|mahalanobis|diffusion|ad|common
};

int run_distances(const DistanceFlags& f) {
    const fusion::FusionConfig cfg = finish_fusion_config(f.scheme);
    const MultimodalDataset data = load_dataset(f.scheme.data_dir);
    const int count = static_cast<int>(data.sensors.size());
    if (f.sensor < 0 || f.sensor >= count)
        throw invalid_config_error("--sensor out of range [0," + std::to_string(count - 1) + "]");

    DistanceMatrix d{Matrix(), DistanceKind::euclidean};
    if (f.what == "euclidean" || f.what == "mahalanobis") {
        const auto metric = f.what == "euclidean" ? kernels::Metric::euclidean
                                                  : kernels::Metric::mahalanobis;
        d = kernels::sensor_distance_matrix(data.sensors[static_cast<std::size_t>(f.sensor)],
                                            metric, cfg.mahalanobis);
    } else if (f.what == "diffusion") {
        const auto k = kernels::sensor_operator(data.sensors[static_cast<std::size_t>(f.sensor)],
                                                cfg.metric, cfg.eps_multiplier_sensor,
                                                cfg.mahalanobis);
        d = diffusion::diffusion_distance(k, cfg.t, diffusion::stationary_distribution(k));
    } else if (f.what == "ad") {
        const int m = f.scheme.pair[0], n = f.scheme.pair[1];
        if (m < 0 || n < 0 || m >= count || n >= count || m == n)
            throw invalid_config_error("--pair must name two distinct sensors");
        const auto ops = fusion::sensor_operators(data, cfg);
        d = alternating::ad_distance(
            alternating::ad_operator(ops[static_cast<std::size_t>(m)],
                                     ops[static_cast<std::size_t>(n)], m, n),
            cfg.t);
    } else if (f.what == "common") {
        const auto ops = fusion::sensor_operators(data, cfg);
        const auto pairs = fusion::ad_operators(ops);
        if (cfg.union_variant == fusion::UnionVariant::mahalanobis_union) {
            d = fusion::mahalanobis_union(pairs, cfg);
        } else {
            fusion::PairDistances dists;
            for (const auto& [key, ad] : pairs)
                dists.emplace(key, alternating::ad_distance(ad, cfg.t));
            d = fusion::union_distance_sum(dists);
        }
    } else {
        throw invalid_config_error("unknown distance kind '" + f.what + "'");
    }
    io::write_matrix(f.out, d.values, to_string(d.kind));
    std::cout << "wrote " << f.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion-maps multimodal fusion toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");
    app.get_config_formatter_base()->comment('#');

    ToyFlags toy;
    auto* gen = app.add_subcommand("gen-toy", "generate the rotating-arrows benchmark");
    gen->add_option("--out", toy.out_dir, "output directory");
    gen->add_option("--n", toy.cfg.n, "number of samples");
    gen->add_option("--seed", toy.cfg.seed, "generator seed");
    gen->add_option("--d-proj", toy.cfg.d_proj, "random projection dimension");
    gen->add_option("--arrow-length", toy.cfg.arrow_length, "arrow length in pixels");
    gen->add_option("--arrow-thickness", toy.cfg.arrow_thickness, "arrow thickness in pixels");
    gen->add_flag("--noise-sensor", toy.cfg.include_noise_sensor, "append the modulated noise sensor");
    gen->add_option("--noise-window", toy.cfg.noise_window, "noise samples per observation");
    gen->add_option("--noise-rate", toy.cfg.noise_rate_hz, "noise sampling rate (Hz)");

    SchemeFlags scheme;
    auto* embed = app.add_subcommand("embed", "compute an embedding with a chosen scheme");
    add_fusion_flags(embed, scheme);

    EvalFlags eval;
    auto* ev = app.add_subcommand("eval", "score an embedding against ground truth");
    ev->add_option("--embedding", eval.embedding_file, "embedding CSV")->required();
    ev->add_option("--truth", eval.truth_file, "ground truth CSV")->required();
    ev->add_option("--out", eval.out_prefix, "output file prefix");
    ev->add_option("--knn-bins", eval.knn_bins, "angle quantization bins");
    ev->add_option("--knn-k", eval.knn_k, "k for the k-NN classifier");
    ev->add_option("--repeats", eval.repeats, "number of random splits");
    ev->add_option("--split", eval.split, "training fraction");
    ev->add_option("--seed", eval.seed, "split seed");

    PlotFlags plot;
    auto* pl = app.add_subcommand("plot", "scatter two embedding columns as SVG");
    pl->add_option("--embedding", plot.embedding_file, "embedding CSV")->required();
    pl->add_option("--color-file", plot.color_file, "CSV providing the color scalar")->required();
    pl->add_option("--color-col", plot.color_col, "column of the color scalar");
    pl->add_option("--x", plot.x, "x coordinate column");
    pl->add_option("--y", plot.y, "y coordinate column");
    pl->add_option("--out", plot.out, "output SVG path");

    DistanceFlags dist;
    auto* di = app.add_subcommand("distances", "export a distance matrix");
    add_fusion_flags(di, dist.scheme);
    di->add_option("--kind", dist.what, "euclidean|mahalanobis|diffusion|ad|common")
        ->check(CLI::IsMember({"euclidean", "mahalanobis", "diffusion", "ad", "common"}));
    di->add_option("--sensor", dist.sensor, "sensor index for per-sensor kinds");
    di->add_option("--dist-out", dist.out, "output CSV path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen_toy(toy);
        if (embed->parsed()) return run_embed(scheme);
        if (ev->parsed()) return run_eval(eval);
        if (pl->parsed()) return run_plot(plot);
        if (di->parsed()) return run_distances(dist);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const invalid_config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_failure_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const invalid_input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
