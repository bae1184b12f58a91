#include <gtest/gtest.h>

#include <vector>

#include "coocnet/alloc_tracker.hpp"
#include "coocnet/bench.hpp"
#include "coocnet/error.hpp"

// Runs as its own process: the hook starts uninstalled.
namespace coocnet {
namespace {

TEST(MeasureRun, RequiresHook) {
  ASSERT_FALSE(alloc::installed());
  EXPECT_THROW(measure_run([] { return 1; }), HookNotInstalledError);
}

TEST(MeasureRun, PeakOfOneMebibyteBlock) {
  alloc::install();
  auto m = measure_run([] {
    // A direct call to the allocation function cannot be elided.
    void* block = ::operator new(1u << 20);
    static_cast<char*>(block)[0] = 1;
    const char first = static_cast<char*>(block)[0];
    ::operator delete(block);
    return first;
  });
  EXPECT_GE(m.peak_mem_bytes, 1u << 20);
  EXPECT_EQ(m.result, 1);
  EXPECT_GE(m.wall_time_s, 0.0);
}

TEST(MeasureRun, NothingAllocatedIsZero) {
  alloc::install();
  int x = 0;
  auto m = measure_run([&x] { x += 41; });
  EXPECT_EQ(m.peak_mem_bytes, 0u);
  EXPECT_EQ(x, 41);
}

TEST(MeasureRun, PeakIsHighWaterNotNet) {
  alloc::install();
  auto m = measure_run([] {
    std::vector<void*> blocks;
    for (int i = 0; i < 4; ++i) blocks.push_back(::operator new(64 * 1024));
    for (void* b : blocks) ::operator delete(b);
    return blocks.size();
  });
  EXPECT_GE(m.peak_mem_bytes, 4u * 64 * 1024);
  EXPECT_LT(m.peak_mem_bytes, 4u * 64 * 1024 + 4096);
  EXPECT_LT(alloc::current_bytes(), std::int64_t{1} << 30);
}

}  // namespace
}  // namespace coocnet
