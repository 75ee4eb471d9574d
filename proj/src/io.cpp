#include "vlab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

namespace vlab {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void rename_into_place(const std::filesystem::path& tmp, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("failed to move " + tmp.string() + " to " + path.string());
  }
}

void write_csv_impl(const std::filesystem::path& path, const Grid& g,
                    const std::function<void(std::ostream&, int, int)>& cell) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << "# " << g.nx << " " << g.ny << " " << format_double(g.Lx) << " "
        << format_double(g.Ly) << "\n";
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < g.nx; ++ix) {
        if (ix) out << ",";
        cell(out, ix, iy);
      }
      out << "\n";
    }
  }
  rename_into_place(tmp, path);
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CField& f) {
  write_csv_impl(path, f.grid, [&](std::ostream& out, int ix, int iy) {
    out << format_double(f.at(ix, iy).real()) << "," << format_double(f.at(ix, iy).imag());
  });
}

void write_csv(const std::filesystem::path& path, const RField& f) {
  write_csv_impl(path, f.grid, [&](std::ostream& out, int ix, int iy) {
    out << format_double(f.at(ix, iy));
  });
}

CField read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  Grid g;
  if (std::sscanf(header.c_str(), "# %d %d %lg %lg", &g.nx, &g.ny, &g.Lx, &g.Ly) != 4) {
    throw std::runtime_error("bad CSV header in " + path.string());
  }
  CField f(g);
  std::string line;
  for (int iy = 0; iy < g.ny; ++iy) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated CSV " + path.string());
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) == 2 * g.nx) {
      for (int ix = 0; ix < g.nx; ++ix) f.at(ix, iy) = cplx(vals[2 * ix], vals[2 * ix + 1]);
    } else if (static_cast<int>(vals.size()) == g.nx) {
      for (int ix = 0; ix < g.nx; ++ix) f.at(ix, iy) = vals[ix];
    } else {
      throw std::runtime_error("bad CSV row width in " + path.string());
    }
  }
  return f;
}

void write_snapshot(const std::filesystem::path& path, const CField& f) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    char header[32] = {};
    std::memcpy(header, "VLAB", 4);
    std::uint32_t version = 1, nx = f.grid.nx, ny = f.grid.ny;
    std::memcpy(header + 4, &version, 4);
    std::memcpy(header + 8, &nx, 4);
    std::memcpy(header + 12, &ny, 4);
    std::memcpy(header + 16, &f.grid.Lx, 8);
    std::memcpy(header + 24, &f.grid.Ly, 8);
    out.write(header, sizeof header);
    for (const cplx& x : f.v) {
      double re = x.real(), im = x.imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
  rename_into_place(tmp, path);
}

CField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char header[32];
  in.read(header, sizeof header);
  if (in.gcount() != sizeof header || std::memcmp(header, "VLAB", 4) != 0) {
    throw std::runtime_error("bad snapshot magic in " + path.string());
  }
  std::uint32_t version, nx, ny;
  std::memcpy(&version, header + 4, 4);
  std::memcpy(&nx, header + 8, 4);
  std::memcpy(&ny, header + 12, 4);
  if (version != 1) throw std::runtime_error("unsupported snapshot version");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  std::memcpy(&g.Lx, header + 16, 8);
  std::memcpy(&g.Ly, header + 24, 8);
  CField f(g);
  for (cplx& x : f.v) {
    double re, im;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    if (!in) throw std::runtime_error("truncated snapshot " + path.string());
    x = cplx(re, im);
  }
  return f;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  rename_into_place(tmp, path);
}

}  // namespace vlab
