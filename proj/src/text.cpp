#include "lopsim/text.hpp"

#include <charconv>

namespace lopsim {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace lopsim
