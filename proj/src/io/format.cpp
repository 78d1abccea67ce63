#include "bpc/io/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace bpc::io {

std::string format_exact(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::string format_short(double x) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.10g", x);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace bpc::io
