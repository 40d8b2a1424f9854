#include "vvs/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vvs/errors.h"
#include "vvs/io.h"

namespace vvs {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw InputError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw InputError("config: unknown key '" + key + "' in " + where);
  }
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw InputError("config: '" + where + "' must be a 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

std::string resolve(const std::string& base, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base) / p).string();
}

QualityLadder parse_ladder(const json& j) {
  check_keys(j, "ladder", {"gof_duration_s", "tiles", "levels"});
  const QualityLadder ref = QualityLadder::reference();
  const double gof = j.value("gof_duration_s", ref.gof_duration());
  TileGrid grid = ref.grid();
  if (j.contains("tiles")) {
    const json& t = j["tiles"];
    if (!t.is_array() || t.size() != 3)
      throw InputError("config: ladder.tiles must be [L, W, H]");
    grid = {t[0].get<int>(), t[1].get<int>(), t[2].get<int>()};
  }
  std::vector<QualityLevel> levels = ref.levels();
  if (j.contains("levels")) {
    levels.clear();
    for (const json& lv : j["levels"]) {
      check_keys(lv, "ladder.levels[]", {"m", "eta", "bitrate_mbps"});
      QualityLevel q;
      q.eta = lv.at("eta").get<double>();
      q.m = lv.value("m", q.eta);
      q.bitrate_mbps = lv.at("bitrate_mbps").get<double>();
      levels.push_back(q);
    }
  }
  return QualityLadder(std::move(levels), gof, grid);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  check_keys(root, "config",
             {"ladder", "acuity", "density", "psnr", "weights", "scheme",
              "frustum", "distance_bands", "buffer_capacity_s", "prediction",
              "bandwidth_window", "history_capacity", "num_chunks", "seed",
              "content"});

  ExperimentConfig out;
  SessionConfig& s = out.session;
  try {
    if (root.contains("ladder"))
      s.ladder = parse_ladder(root["ladder"]);

    if (root.contains("acuity")) {
      const json& a = root["acuity"];
      check_keys(a, "acuity", {"d0", "v0", "ppi_device", "theta_arcmin"});
      s.acuity.d0 = a.value("d0", s.acuity.d0);
      s.acuity.v0 = a.value("v0", s.acuity.v0);
      s.acuity.ppi_device = a.value("ppi_device", s.acuity.ppi_device);
      s.acuity.theta_arcmin = a.value("theta_arcmin", s.acuity.theta_arcmin);
    }
    s.acuity.validate();

    ParametricDensity pd;
    pd.v0 = s.acuity.v0;
    s.density = pd;
    if (root.contains("density")) {
      const json& d = root["density"];
      check_keys(d, "density", {"type", "alpha", "path"});
      const std::string type = d.value("type", "parametric");
      if (type == "parametric") {
        pd.alpha = d.value("alpha", pd.alpha);
        if (!(pd.alpha > 0))
          throw InputError("config: density.alpha must be positive");
        s.density = pd;
      } else if (type == "table") {
        s.density = read_density_map(resolve(base_dir, d.at("path")));
      } else {
        throw InputError("config: density.type must be parametric or table");
      }
    }

    if (root.contains("psnr")) {
      const json& p = root["psnr"];
      check_keys(p, "psnr", {"type", "c0", "c1", "c2", "saturate", "path"});
      const bool saturate = p.value("saturate", true);
      const std::string type = p.value("type", "parametric");
      if (type == "parametric") {
        PsnrModel::Parametric c;
        c.c0 = p.value("c0", c.c0);
        c.c1 = p.value("c1", c.c1);
        c.c2 = p.value("c2", c.c2);
        c.d0 = s.acuity.d0;
        s.psnr = PsnrModel::parametric(c, saturate);
      } else if (type == "table") {
        s.psnr = read_psnr_table(resolve(base_dir, p.at("path")), saturate);
      } else {
        throw InputError("config: psnr.type must be parametric or table");
      }
    } else {
      PsnrModel::Parametric c;
      c.d0 = s.acuity.d0;
      s.psnr = PsnrModel::parametric(c, true);
    }

    if (root.contains("weights")) {
      const json& w = root["weights"];
      check_keys(w, "weights", {"p", "q", "r"});
      s.weights.p = w.value("p", s.weights.p);
      s.weights.q = w.value("q", s.weights.q);
      s.weights.r = w.value("r", s.weights.r);
    }
    if (root.contains("scheme"))
      s.scheme = parse_scheme(root["scheme"].get<std::string>());

    if (root.contains("frustum")) {
      const json& f = root["frustum"];
      check_keys(f, "frustum", {"fov_h_deg", "fov_v_deg", "near", "far"});
      s.frustum.fov_h_deg = f.value("fov_h_deg", s.frustum.fov_h_deg);
      s.frustum.fov_v_deg = f.value("fov_v_deg", s.frustum.fov_v_deg);
      s.frustum.near = f.value("near", s.frustum.near);
      s.frustum.far = f.value("far", s.frustum.far);
    }
    if (root.contains("distance_bands")) {
      const json& b = root["distance_bands"];
      check_keys(b, "distance_bands", {"upper_bounds", "levels"});
      DistanceBands bands;
      bands.upper_bounds = b.at("upper_bounds").get<std::vector<double>>();
      bands.levels = b.at("levels").get<std::vector<int>>();
      s.bands = bands;
    }
    s.buffer_capacity_s = root.value("buffer_capacity_s",
                                     2 * s.ladder.gof_duration());
    if (root.contains("prediction")) {
      const std::string mode = root["prediction"].get<std::string>();
      if (mode == "history")
        s.prediction = PredictionMode::kHistory;
      else if (mode == "oracle")
        s.prediction = PredictionMode::kOracle;
      else
        throw InputError("config: prediction must be history or oracle");
    }
    s.bandwidth_window = root.value("bandwidth_window", s.bandwidth_window);
    s.history_capacity = root.value("history_capacity", s.history_capacity);
    s.num_chunks = root.value("num_chunks", s.num_chunks);
    s.seed = root.value("seed", s.seed);

    if (root.contains("content")) {
      const json& c = root["content"];
      check_keys(c, "content", {"min", "max", "center"});
      if (c.contains("min"))
        out.content_bounds.min = vec3(c["min"], "content.min");
      if (c.contains("max"))
        out.content_bounds.max = vec3(c["max"], "content.max");
      out.content_center = c.contains("center")
                               ? vec3(c["center"], "content.center")
                               : out.content_bounds.center();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  s.validate();
  if (!((out.content_bounds.max - out.content_bounds.min).minCoeff() > 0))
    throw InputError("config: content bounds must have positive extent");
  return out;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string dir =
      std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), dir.empty() ? "." : dir);
}

}  // namespace vvs
