#ifndef RDB_CORE_ORACLE_HPP
#define RDB_CORE_ORACLE_HPP

#include <cstdint>

#include "source_model.hpp"

namespace rdb {
namespace oracle {

// Exhaustive minimum code size for tiny binary blocks: smallest M such that
// some codebook of M binary n-strings keeps the excess-distortion
// probability at or below eps. Capped at n <= 4.
int64_t brute_force_mstar(const SourceModel& src, int64_t n, double d, double eps);

enum class CodebookLaw { Equiprobable, RdMarginal };

struct McResult {
    double eps_hat;
    double std_err;
    int64_t trials;
};

// Random-coding simulation: per trial draw a source block and M iid
// codewords, apply the nearest-codeword encoder, record excess distortion.
// Trials are sharded; each shard reseeds deterministically from (seed, shard),
// so the result is reproducible for a fixed (seed, trials).
McResult mc_random_coding(const SourceModel& src, CodebookLaw law, int64_t n, int64_t m_codewords,
                          double d, int64_t trials, uint64_t seed);

struct LosslessMstar {
    double m_star;    // exact count (kept within integer-exact double range)
    double log_beta;  // ln of the optimal-test measure under counting
};

// Exact minimum code size for lossless coverage of all but eps source mass,
// computed group-wise over equal-probability outcome classes (Hamming weight
// for the binary source, type classes for the DMS).
LosslessMstar lossless_mstar(const SourceModel& src, int64_t n, double eps);

}  // namespace oracle
}  // namespace rdb

#endif  // RDB_CORE_ORACLE_HPP
