#include <cmath>
#include <numbers>

#include "vcv/acoustics.hpp"
#include "vcv/error.hpp"

namespace vcv::acoustics {

using Complex = std::complex<double>;

std::size_t FrequencyGrid::size() const {
  if (!(step_hz > 0.0) || !(f_max_hz > 0.0)) throw ParameterError("frequency grid: step and f_max must be positive");
  return static_cast<std::size_t>(std::floor(f_max_hz / step_hz + 1e-9)) + 1;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Chain {
  Complex a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

  void then(Complex b11, Complex b12, Complex b21, Complex b22) {
    const Complex c11 = a11 * b11 + a12 * b21;
    const Complex c12 = a11 * b12 + a12 * b22;
    const Complex c21 = a21 * b11 + a22 * b21;
    const Complex c22 = a21 * b12 + a22 * b22;
    a11 = c11;
    a12 = c12;
    a21 = c21;
    a22 = c22;
  }
};

void check_area(const articulator::AreaFunction& area) {
  if (area.sections.empty()) throw NumericalDomainError("transfer function: empty area function");
  for (std::size_t j = 0; j < area.sections.size(); ++j) {
    const auto& s = area.sections[j];
    if (!(s.area_cm2 > 0.0) || !std::isfinite(s.area_cm2)) {
      throw NumericalDomainError("transfer function: section " + std::to_string(j) + " has non-positive area");
    }
    if (!(s.length_cm > 0.0) || !std::isfinite(s.length_cm)) {
      throw NumericalDomainError("transfer function: section " + std::to_string(j) + " has non-positive length");
    }
  }
}

Complex gain_at(const articulator::AreaFunction& area, double f, const AcousticConfig& cfg) {
  if (f <= 0.0) return {1.0, 0.0};
  const double w = 2.0 * kPi * f;
  const double rho = cfg.air_density;
  const double c = cfg.sound_speed;

  Chain k;
  for (const auto& s : area.sections) {
    const double a = s.area_cm2;
    const double l = s.length_cm;
    if (cfg.loss == LossModel::lossless) {
      const double kl = w / c * l;
      const double z = rho * c / a;
      const double cs = std::cos(kl);
      const double sn = std::sin(kl);
      k.then({cs, 0.0}, {0.0, z * sn}, {0.0, sn / z}, {cs, 0.0});
    } else {
      // Series impedance R + jwL and shunt admittance jwC per unit length.
      const double perimeter = 2.0 * std::sqrt(kPi * a);
      const double r = cfg.loss_scale * perimeter / (a * a) * std::sqrt(rho * cfg.air_viscosity * w / 2.0);
      const Complex zs{r, w * rho / a};
      const Complex ys{0.0, w * a / (rho * c * c)};
      const Complex gamma = std::sqrt(zs * ys);
      const Complex z0 = std::sqrt(zs / ys);
      const Complex ch = std::cosh(gamma * l);
      const Complex sh = std::sinh(gamma * l);
      k.then(ch, z0 * sh, sh / z0, ch);
    }
  }

  Complex load{0.0, 0.0};
  if (cfg.radiation == Radiation::piston) {
    const double a = area.sections.back().area_cm2;
    const double rr = 128.0 * rho * c / (9.0 * kPi * kPi * a);
    const double lr = 8.0 * rho / (3.0 * kPi * std::sqrt(kPi * a));
    const Complex jwl{0.0, w * lr};
    load = jwl * rr / (rr + jwl);
  }
  return 1.0 / (k.a21 * load + k.a22);
}

}  // namespace

std::vector<Complex> transfer_at(const articulator::AreaFunction& area, std::span<const double> freqs_hz,
                                 const AcousticConfig& config) {
  check_area(area);
  std::vector<Complex> out;
  out.reserve(freqs_hz.size());
  for (double f : freqs_hz) out.push_back(gain_at(area, f, config));
  return out;
}

TransferFunction transfer_function(const articulator::AreaFunction& area, const FrequencyGrid& grid,
                                   const AcousticConfig& config) {
  check_area(area);
  TransferFunction h;
  h.grid = grid;
  const auto n = grid.size();
  h.gain.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = gain_at(area, grid.at(i), config);
    h.gain.push_back(std::isfinite(g.real()) && std::isfinite(g.imag()) ? g : Complex{1e300, 0.0});
  }
  return h;
}

}  // namespace vcv::acoustics
