// Acceptance gate: one PASS/FAIL line per criterion, with wall-clock times.
#include <array>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <twistdef/suites.hpp>

using namespace twistdef;
using clock_type = std::chrono::steady_clock;

namespace {

double since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Line {
    int id;
    bool passed;
    double seconds;
    double budget;
    std::string summary;
    std::vector<std::string> failures;
};

bool all_ok = true;

void emit(const Line &l)
{
    const bool ok = l.passed && l.seconds < l.budget;
    all_ok = all_ok && ok;
    std::cout << "C" << l.id << " " << (ok ? "PASS" : "FAIL") << " " << l.summary << " (" << std::fixed << std::setprecision(1)
              << l.seconds << " s, budget " << l.budget << " s)\n";
    if (l.passed && !ok) std::cout << "  over the time budget\n";
    for (const auto &f : l.failures) std::cout << "  " << f << "\n";
    std::cout.flush();
}

Line from_suites(int id, const std::string &summary, double budget, const std::vector<SuiteResult> &suites, double seconds)
{
    Line l{id, true, seconds, budget, summary, {}};
    std::size_t checks = 0;
    for (const auto &s : suites)
        for (const auto &c : s.cases) {
            checks += c.checks;
            if (!c.passed) {
                l.passed = false;
                l.failures.push_back(s.suite + ": " + c.name + ": " + c.detail);
            }
        }
    l.summary += ", " + std::to_string(checks) + " checks";
    return l;
}

struct Proc {
    int code;
    std::string out;
};

Proc run(const std::string &cmd)
{
    Proc p{-1, {}};
    FILE *f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), got);
    const int status = pclose(f);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

} // namespace

int main()
{
    const auto gate = clock_type::now();

    {
        const auto t0 = clock_type::now();
        const auto r = schouten_suite();
        emit(from_suites(1, "Schouten antisymmetry, Jacobi, Leibniz; n <= 4, degree <= 2, |a| <= 3", 60, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        LemmaSuiteBounds b;
        b.pair_degree_cap = 2;
        const auto r = lemma_suite(b);
        emit(from_suites(2, "d phi = phi d, [phi a, phi b] = 0, one-form identity; n = 2, 3, 4", 300, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        const auto r = linfty_suite();
        emit(from_suites(3, "L-infinity relations: closed H passes, x4 dx1^dx2^dx3 fails [l2,l3] with witness", 120, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        SuiteResult r = hochschild_suite();
        // The Jacobi identity at the stated bounds gets whatever remains of
        // the criterion's budget after the other identities.
        const double left = 300.0 - since(t0) - 5.0;
        r.add(gerstenhaber_jacobi_budgeted(3, 3, 2, 2, left > 0 ? left : 0));
        emit(from_suites(4, "Hochschild identities; n <= 3, arity <= 3, order <= 2, degree <= 2", 300, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        const auto r = formality_suite();
        emit(from_suites(5, "[hkr p, hkr q] - hkr[p,q] exact for all pairs; hkr(D1^D2) not exact", 300, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        const auto r = deform_suite();
        emit(from_suites(6, "deformation: flat plane, R^4 solve/obstruction, 20 random gauge flows mod t^4", 300, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        const auto r = twisted_suite();
        emit(from_suites(7, "twisted Poisson examples", 10, {r}, since(t0)));
    }
    {
        const auto t0 = clock_type::now();
        Line l{8, true, 0, 600, "CLI determinism and exit codes", {}};
        const std::string bin = TWISTDEF_BIN;
        const std::string fixtures = TWISTDEF_FIXTURES;
        const Proc a = run(bin + " verify --suite all");
        const Proc b = run(bin + " verify --suite all");
        if (a.code != 0) l.failures.push_back("verify --suite all exited with " + std::to_string(a.code));
        if (a.out != b.out || a.out.empty()) l.failures.push_back("verify outputs differ between runs");
        const Proc m = run(bin + " twisted-check " + fixtures + "/malformed.json 2>/dev/null");
        if (m.code != 2) l.failures.push_back("malformed document exited with " + std::to_string(m.code) + ", expected 2");
        const Proc t = run(bin + " twisted-check " + fixtures + "/twisted_check_r4.json");
        if (t.code != 1) l.failures.push_back("twisted-check fixture exited with " + std::to_string(t.code) + ", expected 1");
        if (t.out.find("\"twisted_poisson\":false") == std::string::npos) l.failures.push_back("twisted-check fixture did not report false");
        l.passed = l.failures.empty();
        l.seconds = since(t0);
        l.summary += ", " + std::to_string(a.out.size()) + " identical bytes per run";
        emit(l);
    }
    std::cout << "total " << std::fixed << std::setprecision(1) << since(gate) << " s\n";
    return all_ok ? 0 : 1;
}
