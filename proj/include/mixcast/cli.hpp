#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixcast::cli {

inline constexpr const char* kToolVersion = "mixcast 1.0.0";

enum class Command { kDecompose, kBroadcast, kShrink, kSuperbroadcast, kCompare, kVerify };
enum class Format { kJson, kCsv };

struct RunConfig {
    Command command = Command::kVerify;
    int n = 0;
    int m_out = 0;
    std::string c0_text = "";   // parsed exactly in exact mode
    double r = 1.0;
    std::string variant = "tag-preserving";  // or "symmetrized"
    std::vector<double> c0_grid;
    std::vector<double> r_grid;
    Format format = Format::kJson;
    double tolerance = 1e-10;
    bool exact = false;
    int max_qubits = 12;
};

// Inclusive "start:end:step" range or comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// Executes one command; the serialized report goes to out, diagnostics to
// err. Returns the process exit status: 0 success, 1 internal assertion
// failure, 2 validation error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full argv front end (flag parsing + env ceiling + run).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixcast::cli
