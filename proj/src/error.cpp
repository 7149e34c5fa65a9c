#include "o1kepler/error.hpp"
#include "o1kepler/halfint.hpp"

#include <charconv>
#include <cmath>

namespace o1kepler {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::invariant: return "invariant error";
    case ErrorKind::overflow: return "overflow error";
    case ErrorKind::numerical: return "numerical error";
    case ErrorKind::accuracy: return "accuracy error";
    case ErrorKind::resource: return "resource error";
    case ErrorKind::guard: return "guard error";
  }
  return "error";
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfInt HalfInt::parse(std::string_view text) {
  const std::string shown(text);
  auto bad = [&]() { fail(ErrorKind::parameter, "not a half-integer: '" + shown + "'"); };
  auto to_int = [&](std::string_view t) {
    int v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size() || t.empty()) bad();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = to_int(text.substr(0, slash));
    const int den = to_int(text.substr(slash + 1));
    if (den == 1) return HalfInt(num);
    if (den != 2) bad();
    return from_twice(num);
  }
  double x = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) bad();
  const double twice = 2.0 * x;
  if (std::abs(twice) > 1e6 || twice != std::round(twice)) bad();
  return from_twice(static_cast<int>(twice));
}

}  // namespace o1kepler
