#pragma once

#include <functional>

namespace nlscat {

// Runs fn(i) for i in [0, count) on the given number of threads (0 = hardware
// concurrency).  Work items are claimed from a shared counter; each item must
// be independent of the others, so results do not depend on the schedule.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace nlscat
