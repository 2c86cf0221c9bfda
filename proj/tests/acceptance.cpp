// One line per acceptance criterion. Usage: acceptance <path to cutt> <path to prelude.cutt>
#include "cutt/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int number, const std::string& what, bool ok, double seconds, double limit, const std::string& note) {
    bool inTime = limit <= 0 || seconds < limit;
    bool pass = ok && inTime;
    failures += !pass;
    std::printf("%s %d %s: %.2fs", pass ? "PASS" : "FAIL", number, what.c_str(), seconds);
    if (limit > 0) std::printf(" (limit %.0fs)", limit);
    if (!note.empty()) std::printf(" %s", note.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

void suites(int number, const std::string& what, double limit, const std::vector<std::function<cutt::SuiteResult()>>& run) {
    auto start = Clock::now();
    bool ok = true;
    std::string note;
    for (const auto& f : run) {
        cutt::SuiteResult r = f();
        ok = ok && r.passed;
        note += "[" + r.name + " " + std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases) + "]";
        if (!r.passed) note += " first failure: " + r.firstFailure;
    }
    report(number, what, ok, std::chrono::duration<double>(Clock::now() - start).count(), limit, note);
}

int run(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cutt binary> <prelude.cutt>\n";
        return 2;
    }
    std::string cutt = argv[1], prelude = argv[2];
    const uint64_t seed = 0;

    suites(1, "interval equality agrees with the 4-element de Morgan algebra on 1000 pairs", 5,
           {[&] { return cutt::dm4Suite(seed, 1000); }});
    suites(2, "face lattice against exhaustive assignments, forall adjunction", 10, {[] { return cutt::faceSuite(); }});
    suites(3, "500 random compositions: extension, fill at e is the cap, fill at the far end is comp", 30,
           {[&] { return cutt::compositionSuite(seed, 500); }});
    suites(4, "composition is uniform under 200 random substitutions", 0,
           {[&] { return cutt::uniformitySuite(seed, 200); }});
    suites(5, "idJ on refl reduces to the base on 50 instances", 0, {[&] { return cutt::idJSuite(seed, 50); }});
    suites(6, "Glue restricts strictly, unglue of glue, composition adapts", 0,
           {[&] { return cutt::glueSuite(seed, 100); }, [&] { return cutt::adaptationSuite(seed, 50); }});

    {
        auto start = Clock::now();
        int rc = run(quote(cutt) + " check " + quote(prelude) + " > /dev/null");
        cutt::SuiteResult r = cutt::univalenceSuite();
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::string note = "[check exit " + std::to_string(rc) + "][" + r.name + " " +
                           std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases) + "]";
        if (!r.passed) note += " first failure: " + r.firstFailure;
        report(7, "prelude checks, coherence path present, coerce zero along the identity glue is zero", rc == 0 && r.passed,
               secs, 10, note);
    }
    {
        auto start = Clock::now();
        int rc = run(quote(cutt) + " selftest --seed 0 > /dev/null");
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        report(8, "selftest --seed 0", rc == 0, secs, 60, "[exit " + std::to_string(rc) + "]");
    }
    return failures == 0 ? 0 : 1;
}
