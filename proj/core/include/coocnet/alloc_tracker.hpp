#pragma once

#include <cstdint>

// Process-wide heap accounting through replaced global operator new/delete.
// Linking this component replaces the allocation functions; accounting starts
// once install() has been called. Blocks are charged their requested size, so
// identical allocation sequences give identical counts regardless of heap
// state.
namespace coocnet::alloc {

void install() noexcept;
bool installed() noexcept;

// Net bytes currently allocated since install().
std::int64_t current_bytes() noexcept;

// Opens a measurement window: resets the high-water mark to the current level
// and returns that level as the window baseline.
std::int64_t begin_window() noexcept;

// High-water mark above `baseline` since the matching begin_window().
std::uint64_t window_peak(std::int64_t baseline) noexcept;

}  // namespace coocnet::alloc
