#include "gq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gq {

namespace detail {

std::string fp17(Real value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string meta_to_string(const MetaValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  if (const std::int64_t* i = std::get_if<std::int64_t>(&value))
    return std::to_string(*i);
  if (const Real* r = std::get_if<Real>(&value)) return fp17(*r);
  return std::get<std::string>(value);
}

}  // namespace detail

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string meta_to_json(const MetaValue& value) {
  if (std::get_if<std::string>(&value))
    return "\"" + json_escape(std::get<std::string>(value)) + "\"";
  return detail::meta_to_string(value);
}

void write_metadata_object(std::ostream& os, const Metadata& meta,
                           const std::string& indent) {
  os << "{";
  bool first = true;
  for (const auto& [key, value] : meta) {
    os << (first ? "\n" : ",\n") << indent << "  \"" << json_escape(key)
       << "\": " << meta_to_json(value);
    first = false;
  }
  if (!first) os << "\n" << indent;
  os << "}";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void write_config_comments(std::ostream& os, const Metadata& config) {
  for (const auto& [key, value] : config)
    os << "# " << key << "=" << detail::meta_to_string(value) << "\n";
}

MetaValue meta_from_json(const nlohmann::json& j, const std::string& key) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer() || j.is_number_unsigned())
    return static_cast<std::int64_t>(j.get<std::int64_t>());
  if (j.is_number_float()) return j.get<Real>();
  if (j.is_string()) return j.get<std::string>();
  throw FormatError("metadata." + key + ": unsupported value type");
}

}  // namespace

void save_codebook(const Codebook& cb, const std::string& path) {
  validate(cb);
  std::ofstream os = open_out(path);
  os << "{\n";
  os << "  \"scheme\": \"" << to_string(cb.scheme) << "\",\n";
  os << "  \"N\": " << cb.size() << ",\n";
  os << "  \"sigma2\": " << detail::fp17(cb.sigma2) << ",\n";
  os << "  \"centroids\": [\n";
  for (int p = 0; p < cb.size(); ++p) {
    os << "    [" << detail::fp17(cb.centroids[p].real()) << ", "
       << detail::fp17(cb.centroids[p].imag()) << "]"
       << (p + 1 < cb.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
  os << "  \"metadata\": ";
  write_metadata_object(os, cb.metadata, "  ");
  os << "\n}\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

Codebook load_codebook(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("codebook '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw FormatError("codebook: top level must be an object");

  auto require = [&](const char* field) -> const nlohmann::json& {
    if (!j.contains(field))
      throw FormatError(std::string("codebook: missing field '") + field + "'");
    return j.at(field);
  };

  Codebook cb;
  const auto& scheme = require("scheme");
  if (!scheme.is_string()) throw FormatError("codebook: scheme must be a string");
  try {
    cb.scheme = scheme_from_string(scheme.get<std::string>());
  } catch (const InvalidScheme& e) {
    throw FormatError(std::string("codebook: ") + e.what());
  }

  const auto& n_field = require("N");
  if (!n_field.is_number_integer() && !n_field.is_number_unsigned())
    throw FormatError("codebook: N must be an integer");
  const std::int64_t n = n_field.get<std::int64_t>();
  if (n < 1) throw FormatError("codebook: N must be >= 1");

  const auto& s2 = require("sigma2");
  if (!s2.is_number()) throw FormatError("codebook: sigma2 must be a number");
  cb.sigma2 = s2.get<Real>();

  const auto& cents = require("centroids");
  if (!cents.is_array())
    throw FormatError("codebook: centroids must be an array");
  if (static_cast<std::int64_t>(cents.size()) != n)
    throw FormatError("codebook: centroids length does not match N");
  cb.centroids.resize(static_cast<int>(n));
  for (std::size_t k = 0; k < cents.size(); ++k) {
    const auto& pair = cents[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw FormatError("codebook: centroids[" + std::to_string(k) +
                        "] must be [re, im]");
    cb.centroids[static_cast<int>(k)] =
        Complex(pair[0].get<Real>(), pair[1].get<Real>());
  }

  if (j.contains("metadata")) {
    const auto& meta = j.at("metadata");
    if (!meta.is_object())
      throw FormatError("codebook: metadata must be an object");
    for (const auto& [key, value] : meta.items())
      cb.metadata[key] = meta_from_json(value, key);
  }

  validate(cb);
  return cb;
}

void save_report(const DistortionReport& report, const std::string& path,
                 const Metadata& config) {
  std::ofstream os = open_out(path);
  os << "{\n";
  os << "  \"mse\": " << detail::fp17(report.mse) << ",\n";
  os << "  \"mse_db\": " << detail::fp17(report.mse_db) << ",\n";
  os << "  \"rate_bits\": " << detail::fp17(report.rate_bits) << ",\n";
  os << "  \"samples_used\": " << report.samples_used << ",\n";
  os << "  \"ci_halfwidth\": " << detail::fp17(report.ci_halfwidth) << ",\n";
  os << "  \"seed\": " << report.seed << ",\n";
  os << "  \"config\": ";
  write_metadata_object(os, config, "  ");
  if (report.per_cell) {
    os << ",\n  \"per_cell\": [\n";
    const auto& cells = *report.per_cell;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const CellStats& c = cells[k];
      os << "    {\"index\": " << c.index
         << ", \"probability\": " << detail::fp17(c.probability)
         << ", \"conditional_mse\": " << detail::fp17(c.conditional_mse)
         << ", \"volume\": " << detail::fp17(c.volume)
         << ", \"nmi\": " << detail::fp17(c.nmi)
         << ", \"clipped\": " << (c.clipped ? "true" : "false") << "}"
         << (k + 1 < cells.size() ? "," : "") << "\n";
    }
    os << "  ]";
  }
  os << "\n}\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_cells_csv(const std::vector<CellStats>& cells,
                     const std::string& path, const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "index,probability,conditional_mse,volume,nmi,clipped\n";
  for (const CellStats& c : cells)
    os << c.index << "," << detail::fp17(c.probability) << ","
       << detail::fp17(c.conditional_mse) << "," << detail::fp17(c.volume)
       << "," << detail::fp17(c.nmi) << "," << (c.clipped ? 1 : 0) << "\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_voronoi_csv(const std::vector<Polygon>& cells,
                       const std::string& path, const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "cell,vertex,x,y\n";
  for (std::size_t p = 0; p < cells.size(); ++p)
    for (std::size_t v = 0; v < cells[p].size(); ++v)
      os << p + 1 << "," << v << "," << detail::fp17(cells[p][v][0]) << ","
         << detail::fp17(cells[p][v][1]) << "\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_trace_csv(const LloydMaxState& state, const std::string& path,
                     const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "iteration,distortion,max_radius_change\n";
  for (std::size_t k = 0; k < state.distortion_trace.size(); ++k) {
    os << k << "," << detail::fp17(state.distortion_trace[k]) << ",";
    if (k >= 1 && k - 1 < state.radius_change_trace.size())
      os << detail::fp17(state.radius_change_trace[k - 1]);
    os << "\n";
  }
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& path, const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "scheme,N,rate_bits,mse,mse_db,ci_halfwidth,seed,analytic_d_hr,"
        "analytic_r_hr_bits,analytic_r_echr_bits,rd_bound_mse,error\n";
  for (const SweepRow& r : rows) {
    os << to_string(r.scheme) << "," << r.N << ",";
    if (r.error.empty()) {
      os << detail::fp17(r.rate_bits) << "," << detail::fp17(r.mse) << ","
         << detail::fp17(r.mse_db) << "," << detail::fp17(r.ci_halfwidth)
         << "," << r.seed << "," << detail::fp17(r.analytic_d_hr) << ","
         << detail::fp17(r.analytic_r_hr_bits) << ","
         << detail::fp17(r.analytic_r_echr_bits) << ","
         << detail::fp17(r.rd_bound_mse) << ",";
    } else {
      std::string msg = r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      os << ",,,,,,,,," << msg;
    }
    os << "\n";
  }
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_profile_csv(const std::vector<ProfileRow>& rows,
                       const std::string& path, const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "scheme,N,n,n_over_N,magnitude\n";
  for (const ProfileRow& r : rows)
    os << to_string(r.scheme) << "," << r.N << "," << r.n << ","
       << detail::fp17(static_cast<Real>(r.n) / r.N) << ","
       << detail::fp17(r.magnitude) << "\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

void write_rd_csv(const std::vector<std::pair<Real, Real>>& points,
                  Real sigma2, const std::string& path,
                  const Metadata& config) {
  std::ofstream os = open_out(path);
  write_config_comments(os, config);
  os << "rate_bits,mse,mse_db\n";
  for (const auto& [rate, mse] : points)
    os << detail::fp17(rate) << "," << detail::fp17(mse) << ","
       << detail::fp17(10.0 * std::log10(mse / sigma2)) << "\n";
  if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace gq
