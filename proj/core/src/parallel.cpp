#include "srhd/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace srhd {

int env_thread_count() {
  const char* s = std::getenv("SRHD_THREADS");
  if (s == nullptr) return 1;
  try {
    const int n = std::stoi(s);
    return n > 0 ? n : 1;
  } catch (...) {
    return 1;
  }
}

void parallel_for(int begin, int end, int threads,
                  const std::function<void(int)>& body) {
  const int count = end - begin;
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  const int nw = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long>(count) * w / nw);
    const int hi =
        begin + static_cast<int>(static_cast<long>(count) * (w + 1) / nw);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace srhd
