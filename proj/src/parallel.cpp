#include "gq/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gq {

int worker_count() {
  if (const char* env = std::getenv("GQ_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      // fall through to the hardware default on unparsable values
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace gq
