// Exercises the command-line driver end to end through a subprocess,
// including the exit-code contract: 0 pass, 1 identity failure, 2 usage.

#include "paracyc/io.hpp"
#include "paracyc/zoo.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
int g_failures = 0;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (!pipe) return r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    {
        RunResult r = run("verify --example trivial-Q --max-degree 8 --suite all");
        expect(r.code == 0, "full suite at the default window exits 0; got " +
                                std::to_string(r.code));
    }
    {
        RunResult r = run("verify --example trivial-Q --max-degree 5 --suite axioms");
        expect(r.code == 0, "axioms suite exits 0; got " + std::to_string(r.code));
        expect(r.out.find("pass") != std::string::npos, "axioms report lists passes");
    }
    {
        RunResult r = run("verify --example trivial-Q --max-degree 1");
        expect(r.code == 2, "max-degree below 2 is a usage error");
    }
    {
        RunResult r = run("verify --example nonesuch --max-degree 4");
        expect(r.code == 2, "unknown example is a usage error");
    }
    {
        // corrupted structure file: flip a sign inside t
        paracyc::CyclicStructure cs = paracyc::zoo("group-Z2-phi-g", 3);
        cs.t[1].set(2, 0, -cs.t[1].get(2, 0));
        std::ofstream out("/tmp/paracyc_bad.json");
        out << paracyc::structure_to_json(cs);
        out.close();
        RunResult r = run("verify --structure /tmp/paracyc_bad.json --suite axioms");
        expect(r.code == 1, "violated face relation exits 1; got " +
                                std::to_string(r.code));
        expect(r.out.find("t d_i = d_{i+1} t") != std::string::npos ||
                   r.out.find("d_m = d_0 t") != std::string::npos,
               "report names the violated relation");
        std::remove("/tmp/paracyc_bad.json");
    }
    {
        RunResult r = run("homology --example trivial-Q --theory cyclic --max-degree 6");
        expect(r.code == 0, "homology command runs");
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);  // header
        std::string ranks;
        for (int m = 0; m <= 6 && std::getline(lines, line); ++m) {
            auto tab = line.find('\t');
            auto tab2 = line.find('\t', tab + 1);
            ranks += line.substr(tab + 1, tab2 - tab - 1);
            ranks += ",";
        }
        expect(ranks == "1,0,1,0,1,0,1,", "cyclic ranks 1,0,1,0,1,0,1; got " + ranks);
    }
    {
        RunResult r = run("homology --example trivial-Q --theory hochschild "
                          "--max-degree 4");
        expect(r.out.find("1") != std::string::npos, "hochschild table prints");
        expect(r.code == 0, "hochschild homology runs");
    }
    {
        RunResult r = run("compare --example group-Z2-phi-g --max-degree 4");
        expect(r.code == 0, "compare exits 0 on agreement");
        expect(r.out.find("NO") == std::string::npos, "all ranks agree");
    }
    {
        std::ofstream out("/tmp/paracyc_phi.json");
        out << R"({"degree": 2, "components": [["1"], ["1"]]})";
        out.close();
        RunResult r = run("convert-cocycle --example trivial-Q --max-degree 5 "
                          "--input /tmp/paracyc_phi.json");
        expect(r.code == 0, "cocycle conversion exits 0");
        expect(r.out.find("1/2") != std::string::npos,
               "output cocycle value 1/2; got:\n" + r.out);
        std::remove("/tmp/paracyc_phi.json");
    }
    {
        RunResult r = run("perturb-demo --example trivial-Q --max-degree 5");
        expect(r.code == 0, "perturb demo exits 0");
        expect(r.out.find("equals B u^{-1}") != std::string::npos,
               "demo shows the closed-form match");
    }
    {
        RunResult r = run("verify --example sign-twisted --max-degree 4 --suite "
                          "periodicity --format json");
        expect(r.code == 0, "periodicity suite on a twisted structure exits 0");
        expect(r.out.find("\"all_ok\": true") != std::string::npos, "json all_ok");
    }
    {
        // the environment variable sets the default window
        std::string cmd_env = "PARACYC_MAX_DEGREE=1 " + g_cli +
                              " verify --example trivial-Q --suite axioms 2>&1";
        FILE* pipe = popen(cmd_env.c_str(), "r");
        std::string out;
        char buf[4096];
        while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
        int code = WEXITSTATUS(pclose(pipe));
        expect(code == 2, "PARACYC_MAX_DEGREE=1 is rejected as a usage error");
    }
    {
        // deterministic output bytes for a fixed configuration
        RunResult a = run("verify --example dual-numbers --max-degree 4 --suite axioms "
                          "--format csv");
        RunResult b = run("verify --example dual-numbers --max-degree 4 --suite axioms "
                          "--format csv");
        expect(a.out == b.out, "byte-identical reports for identical configs");
    }

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << g_failures << " checks failed\n";
    return 1;
}
