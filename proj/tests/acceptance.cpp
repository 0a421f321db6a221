// Runs the seven acceptance criteria at full size and prints one line each.
#include <chrono>
#include <cstdio>
#include <string>

#include "tc8/tc8.h"

namespace {

struct Run {
    bool ok = false;
    std::string report;
    double seconds = 0;
};

Run corpus(const char* criteria, std::uint64_t seed) {
    Run r;
    auto t0 = std::chrono::steady_clock::now();
    int pass = 0;
    char* rep = nullptr;
    tc8_status s = tc8_corpus_run(seed, 0, criteria, &pass, &rep);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s != TC8_OK) {
        r.report = std::string(tc8_status_name(s)) + ": " + tc8_last_error() + "\n";
        return r;
    }
    r.ok = pass != 0;
    r.report = rep;
    tc8_string_free(rep);
    return r;
}

// Detail lines of the report, indented.
void details(const std::string& report) {
    std::size_t at = 0;
    while (at < report.size()) {
        auto nl = report.find('\n', at);
        if (nl == std::string::npos) nl = report.size();
        std::string line = report.substr(at, nl - at);
        if (line.rfind("  ", 0) == 0) std::printf("    %s\n", line.c_str());
        at = nl + 1;
    }
}

} // namespace

int main() {
    const std::uint64_t seed = 1;
    int failed = 0;
    for (int id = 1; id <= 6; ++id) {
        std::string c(1, static_cast<char>('0' + id));
        Run r = corpus(c.c_str(), seed);
        bool ok = r.ok;
        std::string note;
        if (id == 1) {
            ok = ok && r.seconds < 10.0;
            note = r.seconds < 10.0 ? " (under 10 s)" : " (over 10 s)";
        }
        failed += !ok;
        std::printf("%s criterion %d%s\n", ok ? "PASS" : "FAIL", id, note.c_str());
        details(r.report);
        std::fflush(stdout);
    }

    // Two whole runs with the same seed must produce the same bytes.
    Run a = corpus(nullptr, seed);
    Run b = corpus(nullptr, seed);
    bool same = a.report == b.report && !a.report.empty();
    failed += !same;
    std::printf("%s criterion 7 (%zu-byte reports %s)\n", same ? "PASS" : "FAIL", a.report.size(),
                same ? "identical" : "differ");
    return failed ? 1 : 0;
}
