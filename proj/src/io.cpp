#include "nvmag/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nvmag {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::uint16_t quantize16(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint16_t>(std::lround(c * 65535.0));
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

void write_pgm16(const std::string& path, const FieldMap& map, bool binary) {
  auto out = open_out(path, binary);
  out << (binary ? "P5" : "P2") << "\n"
      << map.width << " " << map.height << "\n65535\n";
  if (binary) {
    std::string bytes;
    bytes.reserve(map.values.size() * 2);
    for (double v : map.values) {
      const std::uint16_t q = quantize16(v);
      bytes.push_back(static_cast<char>(q >> 8));
      bytes.push_back(static_cast<char>(q & 0xff));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  } else {
    for (int iy = 0; iy < map.height; ++iy) {
      for (int ix = 0; ix < map.width; ++ix) {
        out << quantize16(map.at(ix, iy));
        out << (ix + 1 == map.width ? '\n' : ' ');
      }
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

FieldMap read_pgm16(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5") throw IoError("not a PGM: " + path);
  int width = 0, height = 0, maxval = 0;
  in >> width >> height >> maxval;
  if (width <= 0 || height <= 0 || maxval != 65535)
    throw IoError("unsupported PGM geometry in " + path);
  FieldMap map;
  map.width = width;
  map.height = height;
  map.values.resize(static_cast<std::size_t>(width) * height);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    std::string bytes(map.values.size() * 2, '\0');
    in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!in) throw IoError("truncated PGM: " + path);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
      const auto hi = static_cast<unsigned char>(bytes[2 * i]);
      const auto lo = static_cast<unsigned char>(bytes[2 * i + 1]);
      map.values[i] = static_cast<double>((hi << 8) | lo) / 65535.0;
    }
  } else {
    for (auto& v : map.values) {
      long q = 0;
      if (!(in >> q)) throw IoError("truncated PGM: " + path);
      v = static_cast<double>(q) / 65535.0;
    }
  }
  return map;
}

void write_field_csv(const std::string& path, const FieldMap& map) {
  auto out = open_out(path);
  out << "x_index,y_index,value\n";
  for (int iy = 0; iy < map.height; ++iy)
    for (int ix = 0; ix < map.width; ++ix)
      out << ix << "," << iy << "," << fmt_double(map.at(ix, iy)) << "\n";
}

void write_samples_csv(const std::string& path,
                       const std::vector<SamplePoint>& coords,
                       const std::vector<double>& values,
                       const std::vector<int>* clamped) {
  auto out = open_out(path);
  out << (clamped ? "x,y,value,clamped\n" : "x,y,value\n");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out << fmt_double(coords[i].x) << "," << fmt_double(coords[i].y) << ","
        << fmt_double(values[i]);
    if (clamped) out << "," << (*clamped)[i];
    out << "\n";
  }
}

SampleCsv read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  SampleCsv data;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw IoError("malformed sample row in " + path);
    data.coords.push_back({std::stod(cells[0]), std::stod(cells[1])});
    data.values.push_back(std::stod(cells[2]));
    data.clamped.push_back(cells.size() > 3 ? std::stoi(cells[3]) : 0);
  }
  return data;
}

void write_references_csv(const std::string& path, const ReferenceSet& refs) {
  auto out = open_out(path);
  out << "x,y,nominal,measured\n";
  for (std::size_t i = 0; i < refs.coords.size(); ++i) {
    const double measured =
        i < refs.measured.size() ? refs.measured[i] : refs.nominal[i];
    out << fmt_double(refs.coords[i].x) << "," << fmt_double(refs.coords[i].y)
        << "," << fmt_double(refs.nominal[i]) << "," << fmt_double(measured)
        << "\n";
  }
}

void write_response_csv(const std::string& path, const ResponseCurve& curve) {
  auto out = open_out(path);
  out << "b_nt,population\n";
  for (std::size_t i = 0; i < curve.b_nt.size(); ++i)
    out << fmt_double(curve.b_nt[i]) << "," << fmt_double(curve.population[i])
        << "\n";
}

void write_text(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

std::string model_json(const KrigingModel& model) {
  nlohmann::json j;
  auto coords = nlohmann::json::array();
  for (const auto& c : model.coords) coords.push_back({c.x, c.y});
  j["coords"] = std::move(coords);
  j["values"] = model.values;
  j["hyper"] = {{"alpha", {model.hyper.alpha[0], model.hyper.alpha[1]}},
                {"p", {model.hyper.p[0], model.hyper.p[1]}}};
  j["nugget"] = model.hyper.nugget;
  j["mu_hat"] = model.mu;
  j["sigma2_hat"] = model.sigma2;
  j["log_likelihood"] = model.loglik;
  j["degenerate"] = model.degenerate;
  return j.dump(2) + "\n";
}

std::string metrics_json(const MetricsReport& rep) {
  nlohmann::json j;
  j["mae"] = rep.mae;
  j["rmse"] = rep.rmse;
  if (std::isinf(rep.psnr_db))
    j["psnr_db"] = "inf";
  else
    j["psnr_db"] = rep.psnr_db;
  j["r2"] = rep.r2;
  j["ssim"] = rep.ssim;
  j["data_range"] = rep.data_range;
  j["pixels"] = rep.pixels;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace nvmag
