#ifndef LAGCERT_VERIFY_HPP
#define LAGCERT_VERIFY_HPP

// The reproduction harness: ten self-contained acceptance criteria, each
// re-deriving a published computational claim from scratch and comparing
// against expected values pinned in this module. Also regenerates the
// fixture files under fixtures/.

#include <string>
#include <vector>

namespace lagcert {

struct criterion_result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// id/name pairs in execution order.
const std::vector<std::pair<int, std::string>>& acceptance_criteria();

criterion_result run_criterion(int id);

// Runs the listed criteria (all ten when empty), in order.
std::vector<criterion_result> run_acceptance(const std::vector<int>& only = {});

struct fixture_status {
    std::string path;
    bool existed = false;
    bool matched = false;  // existing file equals the regenerated content
    bool written = false;
};

// Regenerates the fixture documents (residual pairs, published ranges,
// exception pairs, kernels) into dir, diffing against whatever is there.
// Files are written when absent, or when overwrite is set and they differ.
std::vector<fixture_status> emit_fixture_files(const std::string& dir, bool overwrite);

}  // namespace lagcert

#endif
