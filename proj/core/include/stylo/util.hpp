#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylo {

// Seeded generator with platform-independent derived distributions.
// std::uniform_int_distribution and friends are implementation-defined, so
// they are avoided wherever results must be byte-identical across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// Runs fn(0..n-1) on up to `threads` workers. Results must be written to
// per-index slots by the caller; the first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

unsigned default_thread_count();

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

// RFC-4180-ish CSV helpers: fields containing separators or quotes are quoted.
std::string csv_escape(std::string_view field);
std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::string> csv_split(std::string_view line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string to_lower_ascii(std::string_view text);
std::vector<std::string> split_lines(std::string_view text);

}  // namespace stylo
