#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "rikit/grid_fn.hpp"

namespace rikit {

/// N-function Psi: either x^r or a convex increasing piecewise-linear function through the
/// origin given by nodes (x_i, y_i); continued linearly with the last slope.
struct OrliczFn {
  enum class Kind { Power, Sampled };
  Kind kind = Kind::Power;
  double r = 2.0;
  std::vector<double> xs, ys;  // without the origin

  static OrliczFn power(double r) {
    OrliczFn f;
    f.kind = Kind::Power;
    f.r = r;
    f.validate();
    return f;
  }
  static OrliczFn sampled(std::vector<double> xs, std::vector<double> ys) {
    OrliczFn f;
    f.kind = Kind::Sampled;
    f.xs = std::move(xs);
    f.ys = std::move(ys);
    f.validate();
    return f;
  }

  void validate() const {
    if (kind == Kind::Power) {
      require(std::isfinite(r) && r >= 1.0, "OrliczFn: exponent must be >= 1");
      return;
    }
    require(!xs.empty() && xs.size() == ys.size(), "OrliczFn: node count mismatch");
    double px = 0.0, py = 0.0, slope = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      require(xs[i] > px && ys[i] > py, "OrliczFn: nodes must be strictly increasing");
      const double s = (ys[i] - py) / (xs[i] - px);
      require(s >= slope * (1.0 - 1e-12), "OrliczFn: samples must be convex");
      slope = s;
      px = xs[i];
      py = ys[i];
    }
  }

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (kind == Kind::Power) return std::pow(x, r);
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (x <= xs[i]) return py + (ys[i] - py) * (x - px) / (xs[i] - px);
      px = xs[i];
      py = ys[i];
    }
    const std::size_t n = xs.size();
    const double x0 = n >= 2 ? xs[n - 2] : 0.0, y0 = n >= 2 ? ys[n - 2] : 0.0;
    return ys[n - 1] + (ys[n - 1] - y0) / (xs[n - 1] - x0) * (x - xs[n - 1]);
  }

  double inverse(double y) const {
    if (y <= 0.0) return 0.0;
    if (kind == Kind::Power) return std::pow(y, 1.0 / r);
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (y <= ys[i]) return px + (xs[i] - px) * (y - py) / (ys[i] - py);
      px = xs[i];
      py = ys[i];
    }
    const std::size_t n = xs.size();
    const double x0 = n >= 2 ? xs[n - 2] : 0.0, y0 = n >= 2 ? ys[n - 2] : 0.0;
    return xs[n - 1] + (y - ys[n - 1]) * (xs[n - 1] - x0) / (ys[n - 1] - y0);
  }
};

/// Fundamental-function shapes. All forms satisfy phi(0) = 0 by convention and are held
/// constant beyond domain_cap.
struct FundamentalFn {
  enum class Form { Power, PowerLog, OrliczInverse, Sampled, MaxOf, PsiMajorant };
  Form form = Form::Power;
  double alpha = 0.0;  // Power, PowerLog exponent; PsiMajorant exponent p
  double beta = 0.0;   // PowerLog log exponent
  double scale = 1.0;  // Power multiplier
  OrliczFn psi;
  std::vector<double> nodes_t, nodes_v;  // Sampled nodes (t_i, phi(t_i)), t_i > 0
  double sampled_tail = 0.0;             // Sampled value beyond the last node
  std::vector<FundamentalFn> parts;      // MaxOf
  std::shared_ptr<const FundamentalFn> inner;  // PsiMajorant
  double domain_cap = std::numeric_limits<double>::infinity();

  static FundamentalFn power(double a, double c = 1.0) {
    FundamentalFn f;
    f.form = Form::Power;
    f.alpha = a;
    f.scale = c;
    f.validate();
    return f;
  }
  static FundamentalFn power_log(double a, double b) {
    FundamentalFn f;
    f.form = Form::PowerLog;
    f.alpha = a;
    f.beta = b;
    f.validate();
    return f;
  }
  static FundamentalFn orlicz_inverse(OrliczFn psi) {
    FundamentalFn f;
    f.form = Form::OrliczInverse;
    f.psi = std::move(psi);
    return f;
  }
  /// Linear interpolation through (0,0) and the nodes; constant `tail` beyond the last node.
  static FundamentalFn sampled(std::vector<double> t, std::vector<double> v, double tail) {
    FundamentalFn f;
    f.form = Form::Sampled;
    f.nodes_t = std::move(t);
    f.nodes_v = std::move(v);
    f.sampled_tail = tail;
    f.validate();
    return f;
  }
  /// Reads the GridFn text format as node samples: values[i] = phi(breakpoints[i+1]).
  static FundamentalFn from_grid(const GridFn& g) {
    std::vector<double> t(g.breakpoints.begin() + 1, g.breakpoints.end());
    std::vector<double> v;
    for (const auto& x : g.values) v.push_back(x.value());
    return sampled(std::move(t), std::move(v), g.tail);
  }
  static FundamentalFn max_of(std::vector<FundamentalFn> ps) {
    FundamentalFn f;
    f.form = Form::MaxOf;
    f.parts = std::move(ps);
    f.validate();
    return f;
  }
  /// psi(t) = t^{1/p} sup_{t<=s<=1} phi(s)/s^{1/p} on (0,1], phi(t) beyond 1.
  static FundamentalFn psi_majorant(const FundamentalFn& phi, double p) {
    FundamentalFn f;
    f.form = Form::PsiMajorant;
    f.alpha = p;
    f.inner = std::make_shared<const FundamentalFn>(phi);
    return f;
  }
  FundamentalFn capped(double cap) const {
    require(cap > 0.0, "FundamentalFn: domain_cap must be positive");
    FundamentalFn f = *this;
    f.domain_cap = cap;
    return f;
  }

  void validate() const {
    switch (form) {
      case Form::Power:
        require(alpha >= 0.0 && alpha <= 1.0 && scale > 0.0,
                "Power: need 0 <= alpha <= 1 and positive scale");
        break;
      case Form::PowerLog:
        require(alpha > 0.0 && alpha <= 1.0, "PowerLog: need 0 < alpha <= 1");
        break;
      case Form::Sampled: {
        require(!nodes_t.empty() && nodes_t.size() == nodes_v.size(),
                "Sampled: node count mismatch");
        double pt = 0.0;
        for (std::size_t i = 0; i < nodes_t.size(); ++i) {
          require(nodes_t[i] > pt && std::isfinite(nodes_t[i]), "Sampled: nodes must increase");
          require(nodes_v[i] > 0.0 && std::isfinite(nodes_v[i]), "Sampled: values must be positive");
          pt = nodes_t[i];
        }
        require(sampled_tail >= nodes_v.back() - 1e-12 * nodes_v.back(),
                "Sampled: tail below last node value");
        break;
      }
      case Form::MaxOf:
        require(!parts.empty(), "MaxOf: empty part list");
        for (const auto& p : parts) p.validate();
        break;
      default:
        break;
    }
  }

  bool is_pure_power() const { return form == Form::Power && std::isinf(domain_cap); }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t > domain_cap) t = domain_cap;
    switch (form) {
      case Form::Power:
        return alpha == 0.0 ? scale : scale * std::pow(t, alpha);
      case Form::PowerLog:
        return std::pow(t, alpha) * std::pow(1.0 + std::fabs(std::log(t)), beta);
      case Form::OrliczInverse: {
        const double y = psi.inverse(1.0 / t);
        return y > 0.0 ? 1.0 / y : std::numeric_limits<double>::infinity();
      }
      case Form::Sampled: {
        auto it = std::lower_bound(nodes_t.begin(), nodes_t.end(), t);
        if (it == nodes_t.end()) return sampled_tail;
        const std::size_t i = static_cast<std::size_t>(it - nodes_t.begin());
        const double t0 = i == 0 ? 0.0 : nodes_t[i - 1];
        const double v0 = i == 0 ? 0.0 : nodes_v[i - 1];
        return v0 + (nodes_v[i] - v0) * (t - t0) / (nodes_t[i] - t0);
      }
      case Form::MaxOf: {
        double m = 0.0;
        for (const auto& p : parts) m = std::max(m, p(t));
        return m;
      }
      case Form::PsiMajorant:
        return psi_value(t);
    }
    return 0.0;
  }

  /// phi(0+).
  double at_zero_plus() const {
    switch (form) {
      case Form::Power:
        return alpha == 0.0 ? scale : 0.0;
      case Form::MaxOf: {
        double m = 0.0;
        for (const auto& p : parts) m = std::max(m, p.at_zero_plus());
        return m;
      }
      case Form::PsiMajorant:
        return inner->at_zero_plus() > 0.0 ? (*this)(1e-300) : 0.0;
      default:
        return 0.0;
    }
  }

  /// phi at +inf (may be +inf).
  double at_infinity() const {
    if (std::isfinite(domain_cap)) return (*this)(domain_cap);
    switch (form) {
      case Form::Power:
        return alpha == 0.0 ? scale : std::numeric_limits<double>::infinity();
      case Form::Sampled:
        return sampled_tail;
      case Form::MaxOf: {
        double m = 0.0;
        for (const auto& p : parts) m = std::max(m, p.at_infinity());
        return m;
      }
      case Form::PsiMajorant:
        return inner->at_infinity();
      case Form::OrliczInverse:
        return psi.kind == OrliczFn::Kind::Power ? std::numeric_limits<double>::infinity()
                                                 : 1.0 / psi.inverse(1e-300);
      default:
        return std::numeric_limits<double>::infinity();
    }
  }

  /// True when between consecutive break points phi is a power c t^a or an affine function with
  /// nonnegative intercept; several suprema are then attained at break points exactly.
  bool piecewise_regular() const {
    switch (form) {
      case Form::Power:
      case Form::Sampled:
        return true;
      case Form::MaxOf:
        return std::all_of(parts.begin(), parts.end(), [](const FundamentalFn& p) {
          return p.form == Form::Power && std::isinf(p.domain_cap);
        });
      case Form::PsiMajorant:
        return inner->piecewise_regular();
      default:
        return false;
    }
  }

  /// Points where the regular piece changes (Sampled nodes, MaxOf crossings, the cap, and 1 for
  /// the psi majorant), sorted.
  std::vector<double> breaks() const {
    std::vector<double> out;
    switch (form) {
      case Form::Sampled:
        out = nodes_t;
        break;
      case Form::MaxOf:
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const auto& a = parts[i];
          auto ba = a.breaks();
          out.insert(out.end(), ba.begin(), ba.end());
          for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const auto& b = parts[j];
            if (a.form == Form::Power && b.form == Form::Power && a.alpha != b.alpha) {
              const double t = std::pow(b.scale / a.scale, 1.0 / (a.alpha - b.alpha));
              if (std::isfinite(t) && t > 0.0) out.push_back(t);
            }
          }
        }
        break;
      case Form::PsiMajorant: {
        out = inner->breaks();
        out.push_back(1.0);
        break;
      }
      default:
        break;
    }
    if (std::isfinite(domain_cap)) out.push_back(domain_cap);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  double psi_value(double t) const {
    const FundamentalFn& phi = *inner;
    const double p = alpha;
    if (t >= 1.0) return phi(t);
    auto ratio = [&](double s) { return phi(s) / std::pow(s, 1.0 / p); };
    double best = ratio(t);
    if (phi.is_pure_power()) {
      if (phi.alpha >= 1.0 / p) best = std::max(best, ratio(1.0));
    } else {
      best = std::max(best, ratio(1.0));
      for (double b : phi.breaks()) {
        if (b > t && b < 1.0) best = std::max(best, ratio(b));
      }
      if (!phi.piecewise_regular()) {
        // Dense geometric sampling of [t, 1] for shapes without a piecewise structure.
        const int n = 400;
        const double lt = std::log(t);
        for (int k = 1; k < n; ++k) {
          best = std::max(best, ratio(std::exp(lt * (1.0 - static_cast<double>(k) / n))));
        }
      }
    }
    return std::pow(t, 1.0 / p) * best;
  }
};

}  // namespace rikit
