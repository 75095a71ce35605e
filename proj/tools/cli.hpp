#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aplog::cli {

struct SessionConfig {
    std::vector<std::string> programFiles;
    std::size_t depthLimit = 10000;
    bool traceEnabled = false;
    bool checkNuGoal = false;
    bool showElaborated = false;
    bool raw = false;
    std::optional<std::pair<std::size_t, std::size_t>> oracleMode;
    std::optional<std::size_t> maxSolutions;
    std::optional<std::string> batchFile;
};

enum ExitCode { Ok = 0, Mismatch = 1, LoadFailed = 2 };

// What a batch line asks for.
struct Expectation {
    enum Kind { None, Yes, No, Count } kind = None;
    std::size_t count = 0;
};

struct BatchQuery {
    std::string goal;  // without the ?- and the final dot
    Expectation expect;
    int line = 0;
};

struct BatchFile {
    std::vector<std::string> loads;  // %load paths, resolved against the batch file's directory
    std::vector<BatchQuery> queries;
};

// Throws std::runtime_error on malformed input.
BatchFile parseBatch(const std::string& text, const std::string& dir);
Expectation parseExpectation(const std::string& comment);

int runRepl(const SessionConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int runBatch(const SessionConfig& cfg, const std::string& queryFile, std::ostream& out, std::ostream& err);
int runOracle(const SessionConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line; returns the process exit status.
int main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace aplog::cli
