#pragma once

#include <cstddef>
#include <functional>

namespace sweetspot {

// Worker budget: min(SSL_THREADS, hardware_concurrency), at least 1.
unsigned thread_cap();

// Runs body(0) .. body(count - 1) across at most thread_cap() threads.
// Bodies must be independent and results must not depend on execution order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sweetspot
