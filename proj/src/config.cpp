#include "lagcert/config.hpp"

#include <cstdlib>
#include <stdexcept>

namespace lagcert {

namespace {

const char* getenv_pref(const char* name) {
    std::string full = std::string("LAGCERT_") + name;
    return std::getenv(full.c_str());
}

std::uint64_t env_u64(const char* name, std::uint64_t dflt) {
    const char* v = getenv_pref(name);
    if (!v) return dflt;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (!end || *end != '\0')
        throw std::invalid_argument(std::string("bad LAGCERT_") + name + ": " + v);
    return x;
}

}  // namespace

run_config run_config::from_env() {
    run_config c;
    c.sieve_limit = env_u64("SIEVE_LIMIT", c.sieve_limit);
    c.materialization_bound = env_u64("MATERIALIZATION_BOUND", c.materialization_bound);
    c.oracle_modulus_bound = env_u64("ORACLE_MODULUS_BOUND", c.oracle_modulus_bound);
    c.candidate_cap = env_u64("CANDIDATE_CAP", c.candidate_cap);
    c.worker_count = static_cast<unsigned>(env_u64("WORKERS", c.worker_count));
    c.mpfr_precision = static_cast<unsigned>(env_u64("PRECISION", c.mpfr_precision));
    if (const char* f = getenv_pref("FORMAT")) {
        std::string s = f;
        if (s == "structured") c.format = output_format::structured;
        else if (s == "tabular") c.format = output_format::tabular;
        else throw std::invalid_argument("bad LAGCERT_FORMAT: " + s);
    }
    if (const char* t = getenv_pref("TRUST_PUBLISHED"))
        c.trust_published_fixtures = (std::string(t) == "1" || std::string(t) == "true");
    return c;
}

std::string run_config::hash() const {
    std::string canon =
        "sieve=" + std::to_string(sieve_limit) +
        ";mat=" + std::to_string(materialization_bound) +
        ";orc=" + std::to_string(oracle_modulus_bound) +
        ";cap=" + std::to_string(candidate_cap) +
        // worker_count is deliberately excluded: results are independent of it
        ";prec=" + std::to_string(mpfr_precision) +
        ";fmt=" + (format == output_format::structured ? std::string("s") : std::string("t")) +
        ";trust=" + (trust_published_fixtures ? "1" : "0") +
        ";mr=" + witness_schedule;
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace {
run_config g_config = run_config::from_env();
}

const run_config& global_config() { return g_config; }
void set_global_config(const run_config& cfg) { g_config = cfg; }

}  // namespace lagcert
