// Acceptance driver: one PASS/FAIL line per criterion check. Tolerances are the
// defaults pinned in the verify suites; no configuration file is read.
//
//   acceptance              every criterion
//   acceptance 7            all checks of criterion 7
//   acceptance 1.a 1.b      selected checks
//
// Exit 0 iff every selected check passes.

#include <cstdio>
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "extrap/error.hpp"
#include "extrap/verify.hpp"

int main(int argc, char** argv) {
    using namespace extrap;
    std::map<int, std::vector<std::string>> wanted;  // criterion → check ids (empty = all)
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            const auto dot = arg.find('.');
            const int criterion = std::stoi(arg.substr(0, dot));
            verify::suite_for_criterion(criterion);
            auto& ids = wanted[criterion];
            if (dot != std::string::npos) ids.push_back(arg);
        }
        if (wanted.empty())
            for (const auto& s : verify::suites()) wanted[s.criterion];
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: bad selector (%s)\n", e.what());
        return 1;
    }

    bool all = true;
    for (const auto& [criterion, ids] : wanted) {
        const auto suite = verify::run_suite(verify::suite_for_criterion(criterion));
        for (const auto& c : suite.checks) {
            if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
            std::printf("%s criterion %-5s %-48s measured %.6g %s %.6g\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                        c.description.c_str(), c.measured, c.relation.c_str(), c.bound);
            all = all && c.pass;
        }
    }
    return all ? 0 : 1;
}
