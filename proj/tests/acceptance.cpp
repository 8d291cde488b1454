// Runs the acceptance criteria on the reference curves and prints one line per criterion.
// Usage: acceptance [report-directory]
#include <fstream>
#include <iostream>
#include <map>

#include "canon/curve.hpp"
#include "canon/verify.hpp"

using namespace canon;

int main(int argc, char** argv) {
    const std::uint32_t prime = 1000003;
    const std::pair<int, std::uint64_t> curves[] = {{4, 1}, {5, 7}};
    const VerifyConfig cfg;
    std::map<int, std::vector<std::pair<int, CriterionResult>>> by_id;
    for (auto [genus, seed] : curves) {
        CurveContext ctx(generate_curve(genus, prime, seed));
        auto results = run_criteria(ctx, cfg);
        const std::string report = dump_report(verify_report(ctx, cfg, results));
        results.push_back(determinism_check(ctx, cfg, report));
        if (argc > 1) std::ofstream(std::string(argv[1]) + "/acceptance_g" + std::to_string(genus) + ".json") << report;
        for (auto& r : results) by_id[r.id].emplace_back(genus, r);
    }
    bool all = true;
    for (const auto& [id, rs] : by_id) {
        bool ok = true;
        for (const auto& [genus, r] : rs) ok = ok && r.passed;
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << rs.front().second.name;
        for (const auto& [genus, r] : rs) std::cout << " | g=" << genus << ": " << r.summary;
        std::cout << '\n';
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
    return all ? 0 : 1;
}
