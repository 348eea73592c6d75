#include <cmath>
#include <numeric>

#include "galsum/error.hpp"
#include "galsum/gal.hpp"

namespace galsum::engine {

GalExponent::GalExponent(std::uint32_t num, std::uint32_t den) {
  if (num == 0 || den == 0) throw ValidationError("alpha must be a positive rational");
  if (num > den) throw ValidationError("alpha must lie in (0, 1]");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

GalExponent GalExponent::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (s.find_first_not_of("0123456789") != std::string::npos || s.empty())
        throw ValidationError("alpha must be written p/q: '" + s + "'");
      return GalExponent(static_cast<std::uint32_t>(std::stoul(s)), 1);
    }
    auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (a.empty() || b.empty() || a.find_first_not_of("0123456789") != std::string::npos ||
        b.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("alpha must be written p/q: '" + s + "'");
    return GalExponent(static_cast<std::uint32_t>(std::stoul(a)),
                       static_cast<std::uint32_t>(std::stoul(b)));
  } catch (const std::out_of_range&) {
    throw ValidationError("alpha out of range: '" + s + "'");
  }
}

std::string GalExponent::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

void WeightDescriptor::validate() const {
  if (!(scale_C >= 1.0) || !std::isfinite(scale_C))
    throw ValidationError("weight scale C must be >= 1");
}

double WeightDescriptor::operator()(const FactoredInt& n) const {
  double w = 1.0;
  switch (kind) {
    case WeightKind::g0:
      w = std::exp(-0.5 * n.log());
      break;
    case WeightKind::g1:
      for (auto [p, e] : n.factors()) {
        if (e > 1) return 0.0;
        w /= std::sqrt(static_cast<double>(p)) - 1.0;
      }
      break;
    case WeightKind::g_alpha: {
      const double a = alpha_param.value();
      for (auto [p, e] : n.factors()) {
        if (e > 1) return 0.0;
        w /= std::expm1(0.5 * a * std::log(static_cast<double>(p)));
      }
      break;
    }
  }
  if (scale_C != 1.0) w *= std::pow(scale_C, static_cast<double>(n.factors().size()));
  return w;
}

}  // namespace galsum::engine
