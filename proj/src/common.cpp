#include "grd/common.hpp"

namespace grd {

namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int n) { g_workers.store(n < 1 ? 1 : n); }

int worker_count() { return g_workers.load(); }

}  // namespace grd
