#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace talex {

// Chunked parallel map over [0, n).  The worker receives a half-open index
// range and returns one partial result; partials come back in chunk order,
// so any associative-commutative fold over them is deterministic.  Small
// inputs run inline.  Exceptions propagate through the futures.
template <typename R, typename Fn>
std::vector<R> parallel_map_chunks(std::size_t n, Fn worker,
                                   std::size_t grain = 1) {
  std::vector<R> results;
  if (n == 0) return results;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t chunks =
      std::min<std::size_t>(hw, (n + grain - 1) / grain);
  if (chunks <= 1) {
    results.push_back(worker(0, n));
    return results;
  }
  const std::size_t step = (n + chunks - 1) / chunks;
  std::vector<std::future<R>> futures;
  for (std::size_t begin = 0; begin < n; begin += step) {
    const std::size_t end = std::min(n, begin + step);
    futures.push_back(std::async(std::launch::async, [=]() {
      return worker(begin, end);
    }));
  }
  results.reserve(futures.size());
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

// Element-wise parallel map preserving input order.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, Fn per_item,
                            std::size_t grain = 8) {
  auto worker = [&per_item](std::size_t begin,
                            std::size_t end) -> std::vector<R> {
    std::vector<R> out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.push_back(per_item(i));
    return out;
  };
  std::vector<std::vector<R>> partials =
      parallel_map_chunks<std::vector<R>>(n, worker, grain);
  std::vector<R> out;
  out.reserve(n);
  for (auto& p : partials)
    for (auto& x : p) out.push_back(std::move(x));
  return out;
}

}  // namespace talex
