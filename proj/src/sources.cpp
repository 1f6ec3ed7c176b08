#include "vanhove/sources.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vanhove {

SourceSpec SourceSpec::gaussian(GridPtr grid) {
  SourceSpec s;
  s.family = SourceFamily::GaussianOnly;
  s.grid = std::move(grid);
  return s;
}

SourceSpec SourceSpec::power_law(GridPtr grid, double gamma) {
  SourceSpec s;
  s.family = SourceFamily::PowerLawGaussian;
  s.gamma = gamma;
  s.grid = std::move(grid);
  return s;
}

SourceSpec SourceSpec::from_samples(RadialFunction samples) {
  SourceSpec s;
  s.family = SourceFamily::CustomSamples;
  s.grid = samples.grid();
  s.custom = std::move(samples);
  return s;
}

SourceSpec SourceSpec::with_cutoff(int n) const {
  if (n < 1) throw std::invalid_argument("infrared cutoff n must be >= 1");
  SourceSpec s = *this;
  s.ir_cutoff = n;
  return s;
}

SourceSpec SourceSpec::without_cutoff() const {
  SourceSpec s = *this;
  s.ir_cutoff.reset();
  return s;
}

std::string to_string(InfraredClass c) {
  switch (c) {
    case InfraredClass::Regular: return "Regular";
    case InfraredClass::TypeI: return "TypeI";
    case InfraredClass::TypeII: return "TypeII";
    case InfraredClass::OutOfScope: return "OutOfScope";
  }
  return "?";
}

std::string to_string(SourceFamily f) {
  switch (f) {
    case SourceFamily::PowerLawGaussian: return "powerlaw";
    case SourceFamily::GaussianOnly: return "gaussian";
    case SourceFamily::CustomSamples: return "custom";
  }
  return "?";
}

RadialFunction realize(const SourceSpec& spec) {
  if (!spec.grid) throw std::invalid_argument("source has no grid");
  const GridPtr& grid = spec.grid;
  const int d = grid->dim();
  if (spec.family == SourceFamily::PowerLawGaussian && !spec.ir_cutoff &&
      !(spec.gamma < 0.5 * d))
    throw std::invalid_argument("power-law source with gamma >= d/2 is not in L^2; set a cutoff");

  ComplexVector v(grid->size());
  switch (spec.family) {
    case SourceFamily::GaussianOnly:
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double r = grid->nodes()[i];
        v[i] = std::exp(-r * r);
      }
      break;
    case SourceFamily::PowerLawGaussian:
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double r = grid->nodes()[i];
        v[i] = spec.gamma == 0.0 ? std::exp(-r * r) : std::pow(r, -spec.gamma) * std::exp(-r * r);
      }
      break;
    case SourceFamily::CustomSamples:
      if (!spec.custom) throw std::invalid_argument("custom source without samples");
      require_same_grid(*spec.custom, RadialFunction::zero(grid));
      v = spec.custom->values();
      break;
  }
  if (spec.ir_cutoff) {
    const double edge = 1.0 / *spec.ir_cutoff;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (grid->nodes()[i] < edge) v[i] = 0.0;
  }
  return RadialFunction(grid, std::move(v));
}

AnalyticClassification classify_analytic(const SourceSpec& spec) {
  if (spec.family != SourceFamily::PowerLawGaussian && spec.family != SourceFamily::GaussianOnly)
    throw std::invalid_argument("analytic classification needs a power-law source");
  if (spec.ir_cutoff) return {InfraredClass::Regular, "infrared cutoff removes the singularity"};
  if (spec.grid->mass() > 0)
    return {InfraredClass::Regular, "massive dispersion: all infrared weights are bounded"};
  const double gamma = spec.family == SourceFamily::GaussianOnly ? 0.0 : spec.gamma;
  const double d = spec.grid->dim();
  // J in L^2_{w^{-alpha}} iff gamma < (d - alpha) / 2
  if (!(gamma < 0.5 * d)) return {InfraredClass::OutOfScope, "source is not in L^2"};
  if (!(gamma < 0.5 * (d - 1))) return {InfraredClass::TypeII, ""};
  if (!(gamma < 0.5 * (d - 2))) return {InfraredClass::TypeI, ""};
  return {InfraredClass::Regular, ""};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope fit needs at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

// Growth exponent of the tail mass from the per-panel masses P_k ~ e_k^{-x}.
double tail_exponent(const std::vector<double>& edges, const std::vector<double>& panel_mass) {
  std::vector<double> e, m;
  for (std::size_t k = 0; k < panel_mass.size(); ++k) {
    if (panel_mass[k] > 0) {
      e.push_back(edges[k]);
      m.push_back(panel_mass[k]);
    }
  }
  if (e.size() < 3) return -std::numeric_limits<double>::infinity();
  return -log_log_slope(e, m);
}

}  // namespace

NumericClassification classify_numeric(const SourceSpec& spec) {
  const GridPtr& grid = spec.grid;
  if (!grid || !grid->has_panels())
    throw std::invalid_argument("numeric classification needs a panel grid");
  const auto& edges = grid->panel_edges();
  const int points = grid->points_per_panel();

  int probe_panels = 0;
  while (probe_panels + 1 < static_cast<int>(edges.size()) &&
         edges[probe_panels + 1] <= kInfraredProbeScale * (1 + 1e-12))
    ++probe_panels;
  if (probe_panels < 4)
    throw std::invalid_argument("eps-sequence leaves the resolved range: fewer than 4 panels below " +
                                std::to_string(kInfraredProbeScale));

  const RadialFunction J = realize(spec);
  std::vector<double> lower(edges.begin(), edges.begin() + probe_panels);
  std::vector<double> p0(probe_panels), p1(probe_panels), p2(probe_panels);
  for (int p = 0; p < probe_panels; ++p) {
    for (int i = 0; i < points; ++i) {
      const Eigen::Index k = Eigen::Index(p) * points + i;
      const double a = std::norm(J[k]);
      p0[p] += grid->weighted_measure(WeightExponent::Flat)[k] * a;
      p1[p] += grid->weighted_measure(WeightExponent::Inverse)[k] * a;
      p2[p] += grid->weighted_measure(WeightExponent::InverseSquare)[k] * a;
    }
  }

  NumericClassification out;
  out.exponent_l2 = tail_exponent(lower, p0);
  out.exponent_inv = tail_exponent(lower, p1);
  out.exponent_inv_sq = tail_exponent(lower, p2);
  out.diverges_l2 = out.exponent_l2 > -kDivergenceMargin;
  out.diverges_inv = out.exponent_inv > -kDivergenceMargin;
  out.diverges_inv_sq = out.exponent_inv_sq > -kDivergenceMargin;

  // m(eps) at each probe edge, for reporting
  const double total_inv = weighted_norm_sq(J, WeightExponent::Inverse);
  const double total_inv_sq = weighted_norm_sq(J, WeightExponent::InverseSquare);
  double below1 = 0, below2 = 0;
  for (int p = 0; p < probe_panels; ++p) {
    out.eps.push_back(lower[p]);
    out.mass_inv.push_back(total_inv - below1);
    out.mass_inv_sq.push_back(total_inv_sq - below2);
    below1 += p1[p];
    below2 += p2[p];
  }

  if (out.diverges_l2)
    out.tag = InfraredClass::OutOfScope;
  else if (out.diverges_inv)
    out.tag = InfraredClass::TypeII;
  else if (out.diverges_inv_sq)
    out.tag = InfraredClass::TypeI;
  else
    out.tag = InfraredClass::Regular;
  return out;
}

InfraredClass infrared_class(const SourceSpec& spec) {
  if (spec.ir_cutoff || !spec.grid->has_panels()) return InfraredClass::Regular;
  if (spec.family != SourceFamily::CustomSamples) return classify_analytic(spec).tag;
  return classify_numeric(spec).tag;
}

}  // namespace vanhove
