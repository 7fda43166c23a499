#include "heislac/decay.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "heislac/errors.hpp"
#include "heislac/op_norm.hpp"

namespace heislac {

namespace {

struct Line {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return {};
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return {};
  const double b = sxy / sxx;
  return {b, my - b * mx};
}

bool usable(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::size_t DecayFit::fitted() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return p.in_fit; }));
}

std::vector<std::string> DecayFit::exclusions() const {
  std::vector<std::string> out;
  for (const auto& p : points)
    if (!p.in_fit) {
      std::ostringstream os;
      os << parameter_name << "=" << p.parameter << ": " << p.note;
      out.push_back(os.str());
    }
  return out;
}

void refit(DecayFit& fit) {
  std::vector<double> x, y;
  for (const auto& p : fit.points)
    if (p.in_fit) {
      if (!usable(p.value)) throw std::invalid_argument("decay fit: fitted values must be positive and finite");
      x.push_back(p.parameter);
      y.push_back(std::log2(p.value));
    }
  if (x.size() < kMinFitPoints) {
    std::ostringstream os;
    os << "decay fit: " << x.size() << " usable points, need at least " << kMinFitPoints;
    throw std::invalid_argument(os.str());
  }
  const Line l = least_squares(x, y);
  if (!std::isfinite(l.slope)) throw std::invalid_argument("decay fit: parameters must not all coincide");
  fit.slope = l.slope;
  fit.intercept = l.intercept;
  fit.max_residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - (l.intercept + l.slope * x[i])));
}

DecayFit fit_decay(std::string name, const std::vector<double>& parameters, const std::vector<double>& values,
                   std::size_t skip_smallest) {
  if (parameters.size() != values.size()) throw std::invalid_argument("decay fit: size mismatch");
  DecayFit fit;
  fit.parameter_name = std::move(name);
  std::vector<double> sorted = parameters;
  std::sort(sorted.begin(), sorted.end());
  const double cut = skip_smallest == 0 || sorted.empty()
                         ? -std::numeric_limits<double>::infinity()
                         : sorted[std::min(skip_smallest, sorted.size()) - 1];
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    DecayPoint p{parameters[i], values[i], true, {}};
    if (skip_smallest > 0 && parameters[i] <= cut) {
      p.in_fit = false;
      p.note = "pre-asymptotic";
    } else if (!usable(values[i])) {
      p.in_fit = false;
      p.note = "not positive and finite";
    }
    fit.points.push_back(p);
  }
  std::stable_sort(fit.points.begin(), fit.points.end(),
                   [](const DecayPoint& a, const DecayPoint& b) { return a.parameter < b.parameter; });
  refit(fit);
  return fit;
}

void write_decay_csv(std::ostream& os, const DecayFit& fit) {
  os << "parameter,value,log2_norm,slope_running\n";
  std::vector<double> x, y;
  os << std::setprecision(17);
  for (const auto& p : fit.points) {
    if (p.in_fit) {
      x.push_back(p.parameter);
      y.push_back(std::log2(p.value));
    }
    const Line l = least_squares(x, y);
    os << p.parameter << "," << p.value << ",";
    if (usable(p.value)) os << std::log2(p.value);
    os << ",";
    if (p.in_fit && std::isfinite(l.slope)) os << l.slope;
    os << "\n";
  }
}

DecayFit decay_sweep(std::string name, const std::vector<double>& parameters,
                     const std::vector<OscKernelSpec>& specs, double tol) {
  if (parameters.size() != specs.size()) throw std::invalid_argument("decay sweep: size mismatch");
  if (specs.size() < kMinFitPoints) throw std::invalid_argument("decay sweep: need at least 4 specs");
  std::vector<double> values(specs.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> notes(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      const auto blocks = build_osc_blocks(specs[i]);
      const OpNormResult r = op_norm(std::span<const OscBlock>(blocks), tol);
      values[i] = r.value;
      if (!r.converged) notes[i] = "power iteration hit the iteration cap";
    } catch (const ResolutionError& e) {
      notes[i] = std::string("under-resolved: ") + e.what();
    }
  }
  std::vector<double> sorted = parameters;
  std::sort(sorted.begin(), sorted.end());
  const double cut = sorted[std::min(kPreAsymptotic, sorted.size()) - 1];
  DecayFit fit;
  fit.parameter_name = std::move(name);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    DecayPoint p{parameters[i], values[i], true, notes[i]};
    if (parameters[i] <= cut) {
      p.in_fit = false;
      if (p.note.empty()) p.note = "pre-asymptotic";
    } else if (!usable(values[i])) {
      p.in_fit = false;
      if (p.note.empty()) p.note = "not positive and finite";
    }
    fit.points.push_back(p);
  }
  std::stable_sort(fit.points.begin(), fit.points.end(),
                   [](const DecayPoint& a, const DecayPoint& b) { return a.parameter < b.parameter; });
  refit(fit);
  return fit;
}

}  // namespace heislac
