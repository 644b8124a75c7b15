#pragma once

// Closed integer-year windows and past/present frame grids.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "linkbounds/error.hpp"

namespace linkbounds {

/// Closed interval of calendar years.
class Window {
 public:
  Window(int start_year, int end_year) : start_(start_year), end_(end_year) {
    if (start_ > end_)
      throw ConfigError("window " + std::to_string(start_) + "-" + std::to_string(end_) +
                        " ends before it starts");
  }

  int start_year() const noexcept { return start_; }
  int end_year() const noexcept { return end_; }
  int length() const noexcept { return end_ - start_ + 1; }
  bool contains(int year) const noexcept { return start_ <= year && year <= end_; }
  bool contains(const Window& w) const noexcept {
    return start_ <= w.start_ && w.end_ <= end_;
  }

  std::string to_string() const { return std::to_string(start_) + "-" + std::to_string(end_); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int start_;
  int end_;
};

/// Past window immediately followed by the present window.
class FramePair {
 public:
  FramePair(Window past, Window present) : past_(past), present_(present) {
    if (present_.start_year() != past_.end_year() + 1)
      throw ConfigError("present window " + present_.to_string() +
                        " must start the year after past window " + past_.to_string());
  }

  const Window& past() const noexcept { return past_; }
  const Window& present() const noexcept { return present_; }

  friend bool operator==(const FramePair&, const FramePair&) = default;

 private:
  Window past_;
  Window present_;
};

struct FrameEnumeration {
  std::vector<FramePair> frames;
  std::size_t empty_combinations = 0;  // (past, present) length pairs that fit nowhere
};

namespace detail {
inline void check_lengths(const std::set<int>& lengths, const char* what) {
  if (lengths.empty()) throw ConfigError(std::string(what) + " must not be empty");
  if (*lengths.begin() < 1) throw ConfigError(std::string(what) + " must all be >= 1");
}
}  // namespace detail

/// Every contiguous past/present pair inside data_range, ordered by past
/// length, present length, then present start year. Present start years
/// advance by `slide`.
inline FrameEnumeration enumerate_frames(const Window& data_range, const std::set<int>& past_lengths,
                                         const std::set<int>& present_lengths, int slide) {
  detail::check_lengths(past_lengths, "past lengths");
  detail::check_lengths(present_lengths, "present lengths");
  if (slide < 1) throw ConfigError("slide must be >= 1");
  FrameEnumeration out;
  for (int p : past_lengths) {
    for (int q : present_lengths) {
      std::size_t before = out.frames.size();
      for (int present_start = data_range.start_year() + p;
           present_start + q - 1 <= data_range.end_year(); present_start += slide) {
        out.frames.emplace_back(Window(present_start - p, present_start - 1),
                                Window(present_start, present_start + q - 1));
      }
      if (out.frames.size() == before) ++out.empty_combinations;
    }
  }
  return out;
}

/// Every window of each length inside data_range, end years advancing by `slide`.
/// Ordered by length, then end year.
inline std::vector<Window> enumerate_single_windows(const Window& data_range,
                                                    const std::set<int>& lengths, int slide) {
  detail::check_lengths(lengths, "window lengths");
  if (slide < 1) throw ConfigError("slide must be >= 1");
  std::vector<Window> out;
  for (int len : lengths)
    for (int end = data_range.start_year() + len - 1; end <= data_range.end_year(); end += slide)
      out.emplace_back(end - len + 1, end);
  return out;
}

}  // namespace linkbounds
