#include "minnaert/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "minnaert/errors.hpp"

namespace minnaert {

TimeGrid TimeGrid::covering(double t_start, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= t_start)) {
    throw InvalidArgument("waves", "time grid needs dt > 0 and t_end >= t_start");
  }
  const auto steps = static_cast<std::size_t>(std::ceil((t_end - t_start) / dt - 1e-9));
  return {t_start, dt, steps + 1};
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt) || count == 0) {
    throw InvalidArgument("waves", "time grid needs dt > 0 and at least one sample");
  }
}

WaveTrace WaveTrace::zeros(const TimeGrid& grid) {
  return WaveTrace(grid, std::vector<double>(grid.count, 0.0));
}

WaveTrace WaveTrace::sample(const TimeGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) v[i] = f(grid.time(i));
  return WaveTrace(grid, std::move(v));
}

double WaveTrace::at(double t) const {
  if (values.empty()) return 0.0;
  const double x = (t - t_start) / dt;
  const double last = static_cast<double>(values.size() - 1);
  if (x < -1e-9 || x > last + 1e-9) return 0.0;
  if (x <= 0.0) return values.front();
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= values.size()) return values.back();
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

WaveTrace delayed(const WaveTrace& trace, double delay) {
  std::vector<double> v(trace.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = trace.at(trace.time(i) - delay);
  return WaveTrace(trace.t_start, trace.dt, std::move(v));
}

double WaveTrace::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void WaveTrace::validate(const char* module) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument(module, "trace dt must be > 0");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(module, "trace contains non-finite samples");
  }
}

namespace {
void check_compatible(const WaveTrace& a, const WaveTrace& b) {
  if (a.size() != b.size() || std::abs(a.dt - b.dt) > 1e-12 * a.dt ||
      std::abs(a.t_start - b.t_start) > 1e-12 * std::max(1.0, std::abs(a.t_start))) {
    throw InvalidArgument("waves", "traces live on different time grids");
  }
}
}  // namespace

WaveTrace& WaveTrace::operator+=(const WaveTrace& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

WaveTrace& WaveTrace::operator-=(const WaveTrace& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

WaveTrace& WaveTrace::operator*=(double s) {
  for (double& v : values) v *= s;
  return *this;
}

WaveTrace operator+(WaveTrace a, const WaveTrace& b) { return a += b; }
WaveTrace operator-(WaveTrace a, const WaveTrace& b) { return a -= b; }
WaveTrace operator*(double s, WaveTrace a) { return a *= s; }

double sup_distance(const WaveTrace& a, const WaveTrace& b) {
  check_compatible(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

std::string to_csv(const WaveTrace& trace) {
  std::string out = "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", trace.time(i), trace.values[i]);
    out += buf;
  }
  return out;
}

void write_csv(const std::string& path, const WaveTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cli", "cannot open " + path + " for writing");
  os << to_csv(trace);
}

WaveTrace read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("features", "cannot open trace " + path);
  std::string line;
  std::vector<double> t, v;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && !line.empty() && !(std::isdigit(static_cast<unsigned char>(line[0])) ||
                                          line[0] == '-' || line[0] == '.')) {
      continue;  // header
    }
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    char comma = 0;
    if (!(ls >> a >> comma >> b) || comma != ',') {
      throw InvalidArgument("features", path + ":" + std::to_string(lineno) + ": malformed row");
    }
    t.push_back(a);
    v.push_back(b);
  }
  if (t.size() < 2) throw InvalidArgument("features", path + ": need at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) {
      throw InvalidArgument("features", path + ": samples are not uniformly spaced");
    }
  }
  WaveTrace out(t.front(), dt, std::move(v));
  out.validate("features");
  return out;
}

}  // namespace minnaert
