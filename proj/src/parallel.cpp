#include "cps/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cps {

std::size_t thread_count() {
  if (const char* env = std::getenv("CPS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace cps
