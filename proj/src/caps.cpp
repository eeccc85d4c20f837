#include "cqg/caps.hpp"

#include <mutex>

namespace cqg {

namespace {
std::mutex& caps_mutex() {
  static std::mutex m;
  return m;
}
Caps& caps_storage() {
  static Caps c;
  return c;
}
}  // namespace

const Caps& caps() { return caps_storage(); }

void set_caps(const Caps& c) {
  std::lock_guard lock(caps_mutex());
  caps_storage() = c;
}

}  // namespace cqg
