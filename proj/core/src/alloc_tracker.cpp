#include "coocnet/alloc_tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <new>

namespace coocnet::alloc {

namespace {

std::atomic<bool> g_installed{false};
std::atomic<std::int64_t> g_current{0};
std::atomic<std::int64_t> g_peak{0};

// Every block carries a 16-byte header just below the user pointer: the
// requested size, and the offset back to the malloc'd base with bit 0 set when
// the block was counted.
struct Header {
  std::uint64_t size;
  std::uint64_t meta;
};
static_assert(sizeof(Header) == 16);
constexpr std::size_t kHeader = 16;

Header* header_of(void* user) noexcept {
  return reinterpret_cast<Header*>(static_cast<char*>(user) - kHeader);
}

void* finish(void* base, std::size_t offset, std::size_t size) noexcept {
  void* user = static_cast<char*>(base) + offset;
  const bool counted = g_installed.load(std::memory_order_relaxed);
  *header_of(user) = Header{size, offset | (counted ? 1u : 0u)};
  if (counted) {
    const auto bytes = static_cast<std::int64_t>(size);
    const auto now = g_current.fetch_add(bytes, std::memory_order_relaxed) + bytes;
    auto peak = g_peak.load(std::memory_order_relaxed);
    while (now > peak && !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
  }
  return user;
}

void* allocate(std::size_t size) {
  void* base = std::malloc(kHeader + size);
  if (!base) throw std::bad_alloc();
  return finish(base, kHeader, size);
}

void* allocate_aligned(std::size_t size, std::align_val_t align) {
  const std::size_t a = std::max(static_cast<std::size_t>(align), kHeader);
  const std::size_t rounded = (a + size + a - 1) / a * a;
  void* base = std::aligned_alloc(a, rounded);
  if (!base) throw std::bad_alloc();
  return finish(base, a, size);
}

void release(void* user) noexcept {
  if (!user) return;
  const Header h = *header_of(user);
  if (h.meta & 1u) g_current.fetch_sub(static_cast<std::int64_t>(h.size), std::memory_order_relaxed);
  std::free(static_cast<char*>(user) - (h.meta & ~std::uint64_t{1}));
}

}  // namespace

void install() noexcept { g_installed.store(true, std::memory_order_relaxed); }

bool installed() noexcept { return g_installed.load(std::memory_order_relaxed); }

std::int64_t current_bytes() noexcept { return g_current.load(std::memory_order_relaxed); }

std::int64_t begin_window() noexcept {
  const auto now = g_current.load(std::memory_order_relaxed);
  g_peak.store(now, std::memory_order_relaxed);
  return now;
}

std::uint64_t window_peak(std::int64_t baseline) noexcept {
  const auto peak = g_peak.load(std::memory_order_relaxed);
  return peak > baseline ? static_cast<std::uint64_t>(peak - baseline) : 0;
}

}  // namespace coocnet::alloc

// Replaceable global allocation functions.

void* operator new(std::size_t size) { return coocnet::alloc::allocate(size); }
void* operator new[](std::size_t size) { return coocnet::alloc::allocate(size); }

void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  try {
    return coocnet::alloc::allocate(size);
  } catch (...) {
    return nullptr;
  }
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  try {
    return coocnet::alloc::allocate(size);
  } catch (...) {
    return nullptr;
  }
}

void* operator new(std::size_t size, std::align_val_t align) {
  return coocnet::alloc::allocate_aligned(size, align);
}
void* operator new[](std::size_t size, std::align_val_t align) {
  return coocnet::alloc::allocate_aligned(size, align);
}

void operator delete(void* p) noexcept { coocnet::alloc::release(p); }
void operator delete[](void* p) noexcept { coocnet::alloc::release(p); }
void operator delete(void* p, std::size_t) noexcept { coocnet::alloc::release(p); }
void operator delete[](void* p, std::size_t) noexcept { coocnet::alloc::release(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { coocnet::alloc::release(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { coocnet::alloc::release(p); }
void operator delete(void* p, std::align_val_t) noexcept { coocnet::alloc::release(p); }
void operator delete[](void* p, std::align_val_t) noexcept { coocnet::alloc::release(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { coocnet::alloc::release(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { coocnet::alloc::release(p); }
