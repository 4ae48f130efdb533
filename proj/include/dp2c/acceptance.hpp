#pragma once
// The acceptance suite behind `dp2c verify`: ten end-to-end checks with
// pinned tolerances, each reporting one pass/fail line.

#include <filesystem>
#include <string>
#include <vector>

namespace dp2c {

struct AcceptanceCheck {
    std::string id;
    bool pass = false;
    std::string detail;
};

// runs all checks, writing run artifacts under workdir
std::vector<AcceptanceCheck> run_acceptance(const std::filesystem::path& workdir);

} // namespace dp2c
