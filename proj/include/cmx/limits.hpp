#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cmx {

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wall-clock and size caps checked at loop boundaries of long computations.
class Budget {
public:
    Budget() = default;
    static Budget unlimited() { return Budget(); }
    Budget& with_seconds(double s) {
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
        return *this;
    }
    Budget& with_max_terms(size_t n) {
        max_terms_ = n;
        return *this;
    }
    void check(const char* where) const {
        if (deadline_ && std::chrono::steady_clock::now() > *deadline_)
            throw ResourceLimit(std::string("time limit exceeded in ") + where);
    }
    void check_terms(size_t n, const char* where) const {
        if (max_terms_ && n > max_terms_) throw ResourceLimit(std::string("term limit exceeded in ") + where);
        check(where);
    }

private:
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    size_t max_terms_ = 0;
};

}  // namespace cmx
