#pragma once

// Property checks shared by the unit tests (small scale) and the
// acceptance runner (full scale). Each returns a report instead of
// asserting so callers can print or assert as they like.

#include <cstddef>
#include <string>
#include <vector>

#include "aplog/program.hpp"
#include "aplog/term.hpp"

namespace reftest {

struct Report {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> samples;  // first few counterexamples

    void fail(const std::string& what);
    // records one check; false records the counterexample
    bool expect(bool ok, const std::string& what);
    // same, building the message only on failure
    template <class F>
    bool check(bool ok, F&& what) {
        ++checked;
        if (!ok) fail(what());
        return ok;
    }
    bool ok() const { return failures == 0; }
    std::string summary() const;
    void merge(const Report& o);
};

std::string corpusPath(const std::string& file);
std::string readFile(const std::string& path);

// ---- ground algebra against the reference rules
Report groundAlgebraExamples();
// every ground term of depth <= depth over `names` pool names: freshness,
// swapping and involution per term; alphaEq against every pool-permutation
// image; and alphaEq on all pairs of depth <= depth-1
Report groundAlgebraExhaustive(int depth, int names);

// ---- unifier vs brute force
struct UnifierScale {
    int twoVarDepth = 1;      // both sides, variables X and Y
    int oneVarDepth = 3;      // one side, against depth `oneVarOther`
    int oneVarOther = 1;
    int witnessDepth = 2;     // ground witnesses for one-variable problems
    int twoVarWitness = 1;
    int freshDepth = 2;
};
Report unifierBruteForce(const UnifierScale& scale);

// ---- random ground terms
Report randomTermProperties(std::size_t n, unsigned seed);

// ---- lambda corpus adequacy; substCount of the terms also go through the engine
Report lambdaAdequacy(std::size_t n, std::size_t substCount, unsigned seed);

// ---- engine vs bottom-up oracle
struct DeskProgram {
    std::string name;
    std::string text;
    std::size_t depth;
    std::size_t pool;
};
std::vector<DeskProgram> deskPrograms();
struct AgreementResult {
    Report report;
    std::size_t baseSize = 0;
    std::size_t fixpointSize = 0;
};
AgreementResult oracleAgreement(const DeskProgram& p);

// ---- ground answers up to variable renaming and name permutation
// Replaces variables by distinct constants in order of first occurrence.
aplog::Term groundCanonically(const aplog::Term& t);

}  // namespace reftest
