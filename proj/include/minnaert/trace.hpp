#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace minnaert {

/// Uniform sampling of [t_start, t_start + (count-1) dt].
struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  std::size_t count = 0;

  double time(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  double t_end() const { return count == 0 ? t_start : time(count - 1); }

  /// Grid with spacing dt covering [t_start, t_end].
  static TimeGrid covering(double t_start, double t_end, double dt);
  void validate() const;
};

/// Uniformly sampled time series of a scalar field at a fixed point.
struct WaveTrace {
  double t_start = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  WaveTrace() = default;
  WaveTrace(double t0, double step, std::vector<double> v)
      : t_start(t0), dt(step), values(std::move(v)) {}
  WaveTrace(const TimeGrid& grid, std::vector<double> v)
      : t_start(grid.t_start), dt(grid.dt), values(std::move(v)) {}

  static WaveTrace zeros(const TimeGrid& grid);
  static WaveTrace sample(const TimeGrid& grid, const std::function<double(double)>& f);

  std::size_t size() const { return values.size(); }
  double time(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  TimeGrid grid() const { return {t_start, dt, values.size()}; }

  /// Linear interpolation; 0 outside the sampled interval.
  double at(double t) const;

  double max_abs() const;

  /// Checks dt > 0 and all samples finite; throws InvalidArgument.
  void validate(const char* module) const;

  WaveTrace& operator+=(const WaveTrace& other);
  WaveTrace& operator-=(const WaveTrace& other);
  WaveTrace& operator*=(double s);
};

/// out(t) = trace(t - delay) on the same grid, linear interpolation, 0 where
/// t - delay falls outside the record.
WaveTrace delayed(const WaveTrace& trace, double delay);

WaveTrace operator+(WaveTrace a, const WaveTrace& b);
WaveTrace operator-(WaveTrace a, const WaveTrace& b);
WaveTrace operator*(double s, WaveTrace a);

/// Sup-norm of a - b over their common samples; grids must agree.
double sup_distance(const WaveTrace& a, const WaveTrace& b);

/// CSV with header "t,value", 17 significant digits.
std::string to_csv(const WaveTrace& trace);
void write_csv(const std::string& path, const WaveTrace& trace);
WaveTrace read_csv(const std::string& path);

}  // namespace minnaert
