#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shaq {

struct VerifyResult {
    bool pass = false;
    long checked = 0;
    long skipped = 0;
    std::string log; // failure details / counterexample dump
};

// Suites: red-lemmas, ap-invariance, fp-hom, divides-n, torsion-cors, all.
std::vector<std::string> verify_suites();
VerifyResult run_verify_suite(const std::string& suite, long n, uint64_t seed);

} // namespace shaq
