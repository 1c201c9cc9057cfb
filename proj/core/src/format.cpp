#include "liftspec/format.hpp"

#include <charconv>
#include <cstddef>

namespace liftspec {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v,
                                       std::chars_format::general, 17);
  return std::string(buf, static_cast<std::size_t>(ptr - buf));
}

}  // namespace liftspec
