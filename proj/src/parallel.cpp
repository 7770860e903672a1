#include "primelab/parallel.hpp"

#include <atomic>

namespace primelab {

namespace {
std::atomic<std::size_t> g_threads{1};
}

std::size_t default_threads() { return g_threads.load(); }

void set_default_threads(std::size_t n) { g_threads.store(n == 0 ? 1 : n); }

}  // namespace primelab
