#include "schain/parallel.hpp"

#include <cstdlib>

namespace schain {

int thread_budget() {
  long want = 0;
  if (const char* env = std::getenv("SCHAIN_THREADS")) {
    char* end = nullptr;
    want = std::strtol(env, &end, 10);
    if (end == env || want < 0) want = 0;
  }
  if (want == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    want = hw == 0 ? 1 : static_cast<long>(hw);
  }
  return static_cast<int>(want);
}

}  // namespace schain
