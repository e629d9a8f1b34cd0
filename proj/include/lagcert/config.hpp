#ifndef LAGCERT_CONFIG_HPP
#define LAGCERT_CONFIG_HPP

#include <cstdint>
#include <string>

namespace lagcert {

inline constexpr const char* tool_name = "laguerre-cert";
inline constexpr const char* tool_version = "1.0.0";
inline constexpr int report_format_version = 1;

enum class output_format { structured, tabular };

// Run-wide knobs. Defaults are chosen so that the full validated range
// (23 <= r <= 60) runs without hitting any limit; every limit failure is an
// explicit error, never a silent wrong answer.
struct run_config {
    std::uint64_t sieve_limit = 100000000;         // primes_up_to / prime_count cap
    std::uint64_t materialization_bound = 100000;  // max n for coefficient/polygon materialization
    std::uint64_t oracle_modulus_bound = 100000;   // search cap for factor-degree oracle moduli
    std::uint64_t candidate_cap = 65536;           // max root candidates per instance
    unsigned worker_count = 0;                     // 0 = hardware concurrency
    unsigned mpfr_precision = 128;                 // bits for outward-rounded bounds
    output_format format = output_format::structured;
    bool trust_published_fixtures = false;             // resolve small-n Galois cases from the published table
    std::string witness_schedule = "mr-fixed-v1";  // Miller-Rabin base schedule identifier

    // Reads LAGCERT_* environment overrides (SIEVE_LIMIT, MATERIALIZATION_BOUND,
    // ORACLE_MODULUS_BOUND, CANDIDATE_CAP, WORKERS, PRECISION, FORMAT, TRUST_PUBLISHED).
    static run_config from_env();

    // Stable 64-bit FNV-1a hash of the canonical serialization, hex-encoded.
    std::string hash() const;
};

const run_config& global_config();
void set_global_config(const run_config& cfg);

}  // namespace lagcert

#endif
