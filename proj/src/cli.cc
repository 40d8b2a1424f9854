#include "vvs/cli.h"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vvs/acuity.h"
#include "vvs/config.h"
#include "vvs/errors.h"
#include "vvs/io.h"
#include "vvs/report.h"
#include "vvs/sim.h"
#include "vvs/synthetic.h"
#include "vvs/voxelizer.h"

namespace vvs {

namespace {

ExperimentConfig config_or_default(const std::string& path) {
  if (path.empty())
    return ExperimentConfig{};
  if (!std::filesystem::exists(path))
    throw InputError("config file '" + path + "' does not exist");
  return load_config(path);
}

SyntheticSpec synthetic_spec(const ExperimentConfig& cfg,
                             const std::string& motion,
                             const std::string& bandwidth, double duration) {
  SyntheticSpec spec;
  spec.motion = parse_motion(motion);
  spec.bandwidth = parse_bandwidth_profile(bandwidth);
  spec.duration_s = duration;
  spec.d0 = cfg.session.acuity.d0;
  spec.content = cfg.content_bounds;
  return spec;
}

SessionTraces file_traces(const ExperimentConfig& cfg,
                          const std::string& bandwidth,
                          const std::string& poses) {
  SessionTraces tr;
  tr.bandwidth = parse_bandwidth_trace(bandwidth);
  tr.poses = parse_pose_trace(poses);
  tr.content_bounds = cfg.content_bounds;
  tr.content_center = cfg.content_center;
  return tr;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("'" + item + "' is not a number");
    }
  }
  if (out.empty())
    throw InputError("empty number list");
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Acuity-aware tile-based volumetric video streaming simulator"};
  app.require_subcommand(1);

  std::string config_path, scheme, out_dir, format = "csv";
  std::uint64_t seed = 1;

  // run
  CLI::App* run = app.add_subcommand("run", "simulate one session");
  std::string bw_path, pose_path, motion, bw_profile = "medium";
  double duration = 30.0;
  run->add_option("--config", config_path, "experiment config (JSON)");
  run->add_option("--scheme", scheme,
                  "proposed|rate_utility|viewport_utility|distance_tile");
  run->add_option("--bandwidth", bw_path, "bandwidth trace CSV");
  run->add_option("--poses", pose_path, "pose trace CSV");
  run->add_option("--synthetic", motion,
                  "far-orbit|close-in|crossing (instead of trace files)");
  run->add_option("--bandwidth-profile", bw_profile,
                  "low|medium|high|ample");
  run->add_option("--duration", duration, "synthetic duration, s");
  run->add_option("--seed", seed, "synthetic trace seed");
  run->add_option("--out", out_dir, "report directory")->required();
  run->add_option("--format", format, "csv|json");

  // compare
  CLI::App* compare =
      app.add_subcommand("compare", "run the scheme matrix over trace sets");
  std::vector<std::string> schemes_list, motions, bw_profiles;
  std::vector<std::string> bw_files, pose_files;
  int seeds = 1, threads = 1;
  compare->add_option("--config", config_path, "experiment config (JSON)");
  compare->add_option("--scheme", schemes_list, "schemes (default: all)");
  compare->add_option("--synthetic", motions, "motion profiles");
  compare->add_option("--bandwidth-profile", bw_profiles,
                      "bandwidth profiles (default: low medium high)");
  compare->add_option("--seeds", seeds, "synthetic seeds per profile");
  compare->add_option("--seed", seed, "first synthetic seed");
  compare->add_option("--duration", duration, "synthetic duration, s");
  compare->add_option("--bandwidth", bw_files, "bandwidth trace CSVs");
  compare->add_option("--poses", pose_files, "pose trace CSVs");
  compare->add_option("--threads", threads, "worker threads");
  compare->add_option("--out", out_dir, "report directory")->required();
  compare->add_option("--format", format, "csv|json");

  // ladder
  CLI::App* ladder =
      app.add_subcommand("ladder", "tabulate density vs voxel size");
  std::string cloud_path, factors = "1,2,4,8,16";
  double v0 = 0.0;
  bool per_tile = false;
  ladder->add_option("--cloud", cloud_path, "ASCII XYZ point cloud")
      ->required();
  ladder->add_option("--v0", v0, "finest voxel size, m")->required();
  ladder->add_option("--factors", factors,
                     "voxel sizes as multiples of v0, ascending from 1");
  ladder->add_flag("--per-tile", per_tile, "one table per tile");
  ladder->add_option("--config", config_path, "config (tile grid)");
  ladder->add_option("--out", out_dir, "output CSV (file, or dir with "
                                       "--per-tile); default stdout");

  // acuity
  CLI::App* acuity =
      app.add_subcommand("acuity", "print boundary density vs distance");
  AcuityParams ap;
  double alpha = 2.0, d_min = 0.25, d_max = 5.0, d_step = 0.25;
  std::string density_path;
  acuity->add_option("--config", config_path, "config (acuity section)");
  auto* d0_opt = acuity->add_option("--d0", ap.d0, "default distance, m");
  auto* v0_opt = acuity->add_option("--v0", ap.v0, "finest voxel, m");
  auto* dev_opt =
      acuity->add_option("--ppi-device", ap.ppi_device, "device px/m");
  auto* th_opt =
      acuity->add_option("--theta", ap.theta_arcmin, "acuity, arcmin");
  acuity->add_option("--alpha", alpha, "parametric density exponent");
  acuity->add_option("--density", density_path, "density table CSV");
  acuity->add_option("--min", d_min, "first distance, m");
  acuity->add_option("--max", d_max, "last distance, m");
  acuity->add_option("--step", d_step, "distance step, m");

  // traces gen
  CLI::App* traces = app.add_subcommand("traces", "trace utilities");
  traces->require_subcommand(1);
  CLI::App* gen = traces->add_subcommand("gen", "write synthetic traces");
  std::string profile = "far-orbit";
  gen->add_option("--profile", profile, "far-orbit|close-in|crossing");
  gen->add_option("--bandwidth-profile", bw_profile,
                  "low|medium|high|ample");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--duration", duration, "duration, s");
  gen->add_option("--config", config_path, "config (d0, content box)");
  gen->add_option("--out", out_dir, "output directory")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      ExperimentConfig cfg = config_or_default(config_path);
      if (!scheme.empty())
        cfg.session.scheme = parse_scheme(scheme);
      SessionTraces tr;
      if (!motion.empty()) {
        tr = generate_synthetic_traces(
            synthetic_spec(cfg, motion, bw_profile, duration), seed);
      } else {
        if (bw_path.empty() || pose_path.empty())
          throw InputError("run needs --bandwidth and --poses, or "
                           "--synthetic");
        tr = file_traces(cfg, bw_path, pose_path);
      }
      const SessionResult r = run_session(cfg.session, tr);
      write_session_reports(out_dir, r, format);
      for (const auto& w : r.summary.warnings)
        err << "warning: " << w << '\n';
      out << "scheme=" << r.summary.scheme << " chunks=" << r.summary.chunks
          << " mean_qoe=" << r.summary.mean_qoe
          << " total_bytes=" << r.summary.total_bytes << '\n';
      return 0;
    }

    if (*compare) {
      ExperimentConfig cfg = config_or_default(config_path);
      std::vector<Scheme> schemes;
      for (const auto& s : schemes_list)
        schemes.push_back(parse_scheme(s));
      if (schemes.empty())
        schemes = all_schemes();
      std::vector<ExperimentCell> cells;
      if (bw_files.size() != pose_files.size())
        throw InputError("--bandwidth and --poses must pair up");
      for (size_t i = 0; i < bw_files.size(); ++i) {
        cells.push_back({"file", bw_files[i], pose_files[i],
                         file_traces(cfg, bw_files[i], pose_files[i])});
      }
      if (bw_profiles.empty())
        bw_profiles = {"low", "medium", "high"};
      for (const auto& m : motions) {
        for (const auto& b : bw_profiles) {
          for (int k = 0; k < seeds; ++k) {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
            cells.push_back(
                {m, b, "seed" + std::to_string(s),
                 generate_synthetic_traces(synthetic_spec(cfg, m, b, duration),
                                           s)});
          }
        }
      }
      if (cells.empty())
        throw InputError("compare needs trace files or --synthetic profiles");
      const ExperimentResult r =
          run_experiment(cfg.session, schemes, cells, threads);
      write_experiment_reports(out_dir, r, format);
      out << "rows=" << r.rows.size() << '\n';
      return 0;
    }

    if (*ladder) {
      const PointCloud cloud = read_xyz(cloud_path);
      std::vector<double> grid;
      for (double f : parse_list(factors))
        grid.push_back(f * v0);
      if (!per_tile) {
        const DensityMap map = build_density_map(cloud, v0, grid);
        if (out_dir.empty())
          write_density_map(out, map);
        else
          write_density_map(out_dir, map);
        return 0;
      }
      if (out_dir.empty())
        throw InputError("--per-tile needs --out <dir>");
      const ExperimentConfig cfg = config_or_default(config_path);
      const auto maps = build_tile_density_maps(
          cloud, cfg.session.ladder.grid(), v0, grid);
      std::filesystem::create_directories(out_dir);
      for (size_t i = 0; i < maps.size(); ++i) {
        if (maps[i])
          write_density_map((std::filesystem::path(out_dir) /
                             ("density_tile_" + std::to_string(i) + ".csv"))
                                .string(),
                            *maps[i]);
      }
      return 0;
    }

    if (*acuity) {
      AcuityParams params = ap;
      DensityModel density = ParametricDensity{ap.v0, alpha};
      if (!config_path.empty()) {
        const ExperimentConfig cfg = config_or_default(config_path);
        params = cfg.session.acuity;
        density = cfg.session.density;
        if (*d0_opt)
          params.d0 = ap.d0;
        if (*v0_opt)
          params.v0 = ap.v0;
        if (*dev_opt)
          params.ppi_device = ap.ppi_device;
        if (*th_opt)
          params.theta_arcmin = ap.theta_arcmin;
        if (auto* pd = std::get_if<ParametricDensity>(&density))
          pd->v0 = params.v0;
      }
      if (!density_path.empty())
        density = read_density_map(density_path);
      if (!(d_step > 0) || !(d_min > 0) || !(d_max >= d_min))
        throw InputError("need 0 < min <= max and step > 0");
      const AcuityModel model(params, density);
      out << "d_m,ppi_t,p_t,voxel_m,eta_star,clamped\n";
      const int n = static_cast<int>(std::floor((d_max - d_min) / d_step +
                                                1e-9));
      for (int k = 0; k <= n; ++k) {
        const double d = d_min + k * d_step;
        const AcuityEvaluation ev = model.evaluate(d);
        out << std::setprecision(6) << d << ',' << ev.ppi_t << ',' << ev.p_t
            << ',' << ev.voxel << ',' << ev.boundary.eta << ','
            << (ev.boundary.clamped ? 1 : 0) << '\n';
      }
      return 0;
    }

    if (*gen) {
      const ExperimentConfig cfg = config_or_default(config_path);
      const SessionTraces tr = generate_synthetic_traces(
          synthetic_spec(cfg, profile, bw_profile, duration), seed);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path base(out_dir);
      write_bandwidth_trace((base / "bandwidth.csv").string(), tr.bandwidth);
      write_pose_trace((base / "poses.csv").string(), tr.poses);
      out << "wrote " << tr.bandwidth.size() << " bandwidth and "
          << tr.poses.size() << " pose samples\n";
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace vvs
