// Copyright 2026 The ladderqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ladderqed/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace ladderqed {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Column {
  std::string name;
  std::vector<double> values;
};

ojson json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_value(v).c_str(), nullptr);
}

std::string csv_cell(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_value(v.get<double>());
  if (v.is_null()) return "nan";
  return v.dump();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

class Writer {
 public:
  Writer(fs::path dir, OutputFormat format) : dir_(std::move(dir)), format_(format) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  /// One file of equal-length numeric columns.
  void columns(const std::string& stem, const ojson& meta, const std::vector<Column>& cols) {
    std::ostringstream os;
    if (format_ == OutputFormat::kCsv) {
      for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c].name;
      os << "\n";
      const std::size_t rows = cols.empty() ? 0 : cols.front().values.size();
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << format_value(cols[c].values[r]);
        os << "\n";
      }
    } else {
      ojson doc = meta;
      for (const auto& col : cols) {
        ojson arr = ojson::array();
        for (double v : col.values) arr.push_back(json_number(v));
        doc[col.name] = std::move(arr);
      }
      os << doc.dump(2) << "\n";
    }
    emit(stem, os.str());
  }

  /// A table of heterogeneous rows keyed by `header`.
  void table(const std::string& stem, const std::vector<std::string>& header, const std::vector<ojson>& rows) {
    std::ostringstream os;
    if (format_ == OutputFormat::kCsv) {
      for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
      os << "\n";
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << csv_cell(row.at(header[c]));
        os << "\n";
      }
    } else {
      ojson arr = ojson::array();
      for (const auto& row : rows) arr.push_back(row);
      os << arr.dump(2) << "\n";
    }
    emit(stem, os.str());
  }

  std::vector<fs::path> written;

 private:
  void emit(const std::string& stem, const std::string& text) {
    const fs::path path = dir_ / (stem + (format_ == OutputFormat::kCsv ? ".csv" : ".json"));
    write_text(path, text);
    written.push_back(path);
  }

  fs::path dir_;
  OutputFormat format_;
};

std::vector<double> to_std(const Eigen::VectorXd& v, double scale = 1.0) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i) * scale;
  return out;
}

std::string join(const std::vector<double>& values, double scale) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + format_value(values[i] * scale);
  return out;
}

ojson read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return ojson::parse(in);
  } catch (const ojson::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Eigen::VectorXd column_from_json(const ojson& doc, const char* key, double scale = 1.0) {
  const auto& arr = doc.at(key);
  Eigen::VectorXd out(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = arr[i].is_null() ? std::nan("") : arr[i].get<double>() * scale;
  return out;
}

}  // namespace

std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<fs::path> write_output(const ScenarioBundle& bundle, const ScenarioConfig& config) {
  Writer w(config.output.path, config.output.format);
  const double to_mhz = 1.0 / (2.0 * std::numbers::pi);

  for (const auto& item : bundle.traces) {
    const auto& t = item.trace;
    w.columns("spectrum_" + item.label, {{"label", item.label}, {"omega_c_mhz", json_number(item.omega_c_mhz)}},
              {{"delta_mhz", to_std(t.delta, to_mhz)},
               {"T", to_std(t.transmission)},
               {"phi_deg", to_std(t.phi, kRadToDeg)},
               {"chi", to_std(t.chi)},
               {"re_rho10", to_std(t.rho10.real())},
               {"im_rho10", to_std(t.rho10.imag())},
               {"pop_g1", to_std(t.pop_g1)},
               {"pop_f0", to_std(t.pop_f0)}});
  }

  for (const auto& item : bundle.signals) {
    const std::string field(to_string(item.field));
    w.columns("pf_" + field + "_" + item.label, {{"label", item.label}, {"field", field}},
              {{"t_us", to_std(item.signal.times)}, {"pf", to_std(item.signal.values)}});
  }

  {
    std::vector<ojson> rows;
    for (const auto& item : bundle.doublets) {
      rows.push_back({{"label", item.label},
                      {"n_peaks", item.report.n_peaks},
                      {"separation_mhz", json_number(item.report.separation * to_mhz)},
                      {"centers_mhz", join(item.report.centers, to_mhz)}});
    }
    w.table("doublets", {"label", "n_peaks", "separation_mhz", "centers_mhz"}, rows);
  }

  {
    std::vector<ojson> rows;
    for (const auto& item : bundle.fits) {
      const auto& names = parameter_names(item.fit.model);
      std::string packed;
      ojson params = ojson::object();
      for (std::size_t i = 0; i < names.size(); ++i) {
        const double v = item.fit.params(static_cast<Eigen::Index>(i));
        packed += (i ? ";" : "") + names[i] + "=" + format_value(v);
        params[names[i]] = json_number(v);
      }
      ojson row = {{"label", item.label},
                   {"field", std::string(to_string(item.field))},
                   {"model", std::string(to_string(item.fit.model))},
                   {"converged", item.fit.converged},
                   {"iterations", item.fit.iterations},
                   {"residual_rms", json_number(item.fit.residual_rms)}};
      row["params"] = config.output.format == OutputFormat::kCsv ? ojson(packed) : params;
      rows.push_back(std::move(row));
    }
    w.table("fits", {"label", "field", "model", "converged", "iterations", "residual_rms", "params"}, rows);
  }

  {
    std::vector<ojson> rows;
    for (const auto& item : bundle.regimes) {
      const auto& r = item.report;
      rows.push_back({{"label", item.label},
                      {"kappa_mhz", json_number(item.params.kappa * to_mhz)},
                      {"gamma_mhz", json_number(item.params.gamma * to_mhz)},
                      {"omega_c_mhz", json_number(item.params.omega_c * to_mhz)},
                      {"threshold_mhz", json_number(r.threshold * to_mhz)},
                      {"pole1_re_mhz", json_number(r.poles[0].real() * to_mhz)},
                      {"pole1_im_mhz", json_number(r.poles[0].imag() * to_mhz)},
                      {"pole2_re_mhz", json_number(r.poles[1].real() * to_mhz)},
                      {"pole2_im_mhz", json_number(r.poles[1].imag() * to_mhz)},
                      {"regime", std::string(to_string(r.regime))},
                      {"resolvable", r.resolvable}});
    }
    w.table("regimes",
            {"label", "kappa_mhz", "gamma_mhz", "omega_c_mhz", "threshold_mhz", "pole1_re_mhz", "pole1_im_mhz",
             "pole2_re_mhz", "pole2_im_mhz", "regime", "resolvable"},
            rows);
  }

  if (bundle.calibration) {
    const auto& c = *bundle.calibration;
    std::vector<double> dac, nbar_c;
    for (const auto& p : c.stark_points) {
      dac.push_back(p.delta_ac * to_mhz);
      nbar_c.push_back(p.nbar_c);
    }
    w.columns("calibration", ojson::object(), {{"delta_ac_mhz", dac}, {"nbar_c", nbar_c}});
    w.table("stark_fit", {"slope_mhz", "chi_shift_mhz", "residual_rms_mhz"},
            {ojson{{"slope_mhz", json_number(c.stark_fit.slope * to_mhz)},
                   {"chi_shift_mhz", json_number(c.stark_fit.chi_shift * to_mhz)},
                   {"residual_rms_mhz", json_number(c.stark_fit.residual_rms * to_mhz)}}});
    std::vector<double> ns;
    for (std::size_t n = 0; n < c.poisson.size(); ++n) ns.push_back(static_cast<double>(n));
    w.columns("poisson", {{"nbar", json_number(c.params.nbar)}}, {{"n", ns}, {"pmf", c.poisson}});
    w.columns("number_splitting", ojson::object(),
              {{"omega_mhz", to_std(c.omega, to_mhz)}, {"S", to_std(c.spectrum)}});
  }
  return w.written;
}

SpectrumTrace read_spectrum_json(const fs::path& path) {
  const ojson doc = read_json(path);
  const double to_angular = 2.0 * std::numbers::pi;
  SpectrumTrace t;
  try {
    t.params.omega_c = doc.at("omega_c_mhz").get<double>() * to_angular;
    t.delta = column_from_json(doc, "delta_mhz", to_angular);
    t.transmission = column_from_json(doc, "T");
    t.transmission_raw = t.transmission;
    t.phi = column_from_json(doc, "phi_deg", 1.0 / kRadToDeg);
    t.chi = column_from_json(doc, "chi");
    const Eigen::VectorXd re = column_from_json(doc, "re_rho10");
    const Eigen::VectorXd im = column_from_json(doc, "im_rho10");
    t.rho10.resize(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) t.rho10(i) = {re(i), im(i)};
    t.pop_g1 = column_from_json(doc, "pop_g1");
    t.pop_f0 = column_from_json(doc, "pop_f0");
  } catch (const ojson::exception& e) {
    throw IoError("spectrum file " + path.string() + " is missing fields: " + e.what());
  }
  return t;
}

TimeSignal read_signal_json(const fs::path& path) {
  const ojson doc = read_json(path);
  try {
    return {column_from_json(doc, "t_us"), column_from_json(doc, "pf")};
  } catch (const ojson::exception& e) {
    throw IoError("time-signal file " + path.string() + " is missing fields: " + e.what());
  }
}

}  // namespace ladderqed
