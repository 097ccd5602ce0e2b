#include "powersieve/parallel.hpp"

#include <cstdlib>
#include <string>

namespace powersieve {

namespace {
std::atomic<unsigned> g_override{0};
}

void set_thread_count(unsigned n) { g_override.store(n); }

unsigned thread_count() {
  if (const unsigned n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("POWERSIEVE_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // unparsable: fall through to auto
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace powersieve
