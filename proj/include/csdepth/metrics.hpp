#pragma once

#include <algorithm>
#include <cstdint>

// Lightweight instrumentation used by the benchmark and acceptance suites:
// a count of exact predicate/comparison evaluations, and a gauge of the
// auxiliary bytes the algorithms hold at any moment. Both are thread-local,
// so parallel verification workers do not contend.
namespace csdepth::metrics {

struct Counters {
    std::uint64_t ops = 0;
    std::uint64_t bytes_current = 0;
    std::uint64_t bytes_peak = 0;
};

inline thread_local Counters tls;

inline void count_op(std::uint64_t n = 1) { tls.ops += n; }

inline void note_alloc(std::uint64_t bytes) {
    tls.bytes_current += bytes;
    tls.bytes_peak = std::max(tls.bytes_peak, tls.bytes_current);
}

inline void note_free(std::uint64_t bytes) {
    tls.bytes_current -= std::min(bytes, tls.bytes_current);
}

inline void reset() { tls = Counters{}; }
inline Counters snapshot() { return tls; }

// RAII gauge for one logical allocation (a container the algorithm owns for
// a bounded scope). Sizes are reported by the call sites; heap growth inside
// arbitrary-precision digits is not tracked.
class Tracked {
public:
    Tracked() = default;
    explicit Tracked(std::uint64_t bytes) : bytes_(bytes) { note_alloc(bytes_); }
    Tracked(const Tracked&) = delete;
    Tracked& operator=(const Tracked&) = delete;
    Tracked(Tracked&& other) noexcept : bytes_(other.bytes_) { other.bytes_ = 0; }
    Tracked& operator=(Tracked&& other) noexcept {
        if (this != &other) {
            note_free(bytes_);
            bytes_ = other.bytes_;
            other.bytes_ = 0;
        }
        return *this;
    }
    ~Tracked() { note_free(bytes_); }

    void resize(std::uint64_t bytes) {
        note_free(bytes_);
        bytes_ = bytes;
        note_alloc(bytes_);
    }

private:
    std::uint64_t bytes_ = 0;
};

}  // namespace csdepth::metrics
