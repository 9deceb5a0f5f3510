#ifndef RDB_CORE_LOG_REAL_HPP
#define RDB_CORE_LOG_REAL_HPP

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace rdb {

// A nonnegative real carried as its natural logarithm. -inf encodes zero.
// Sums never materialize exp() of large magnitudes; everything goes through
// log-sum-exp style updates.
struct LogReal {
    double ln = -std::numeric_limits<double>::infinity();

    static LogReal zero() { return LogReal{}; }
    static LogReal one() { return LogReal{0.0}; }
    static LogReal from_ln(double v) { return LogReal{v}; }
    static LogReal from_value(double v) {
        if (v < 0.0) throw_domain("LogReal::from_value: negative value");
        return LogReal{std::log(v)};
    }

    bool is_zero() const { return std::isinf(ln) && ln < 0; }

    // exp(ln); may overflow/underflow by design - callers should only use it
    // when the magnitude is known to be moderate.
    double value() const { return std::exp(ln); }
};

inline double log_add(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// ln(e^a - e^b), requires a >= b.
inline double log_sub(double a, double b) {
    if (std::isinf(b) && b < 0) return a;
    if (b > a) throw_domain("log_sub: negative difference");
    if (a == b) return -std::numeric_limits<double>::infinity();
    return a + std::log1p(-std::exp(b - a));
}

inline LogReal log_add(LogReal a, LogReal b) { return LogReal{log_add(a.ln, b.ln)}; }
inline LogReal log_sub(LogReal a, LogReal b) { return LogReal{log_sub(a.ln, b.ln)}; }
inline LogReal operator*(LogReal a, LogReal b) { return LogReal{a.ln + b.ln}; }

// Streaming log-sum-exp accumulator (forward accumulation, constant memory).
class LogSum {
  public:
    void add(double ln_term) { total_ = log_add(total_, ln_term); }
    double ln() const { return total_; }
    LogReal log_real() const { return LogReal{total_}; }

  private:
    double total_ = -std::numeric_limits<double>::infinity();
};

}  // namespace rdb

#endif  // RDB_CORE_LOG_REAL_HPP
