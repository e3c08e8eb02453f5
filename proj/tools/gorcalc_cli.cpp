#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "gorcalc.h"

namespace {

struct SessionDeleter {
    void operator()(gc_session* s) const { gc_session_free(s); }
};
using SessionPtr = std::unique_ptr<gc_session, SessionDeleter>;

// 2 for caller mistakes, 1 for everything the engine refused at runtime.
int exit_for(gc_status st) {
    return (st == GC_USAGE_ERROR || st == GC_PARSE_ERROR) ? 2 : 1;
}

// Runs one line; prints the result on success, the error on failure.
gc_status run_line(gc_session* s, const std::string& line, const std::string& where) {
    char* out = nullptr;
    gc_status st = gc_execute_line(s, line.c_str(), &out);
    if (st == GC_OK) {
        if (out && *out) std::cout << out << "\n";
        gc_string_free(out);
    } else {
        std::cerr << where << "error: " << gc_last_error(s) << "\n";
    }
    return st;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gorcalc — exact tensor/Tor/filtration calculus for tame modules"};
    std::string ring, script, json_path, primes;
    bool sweep = false;
    int max_exp = 2, max_atoms = 2, tor_max = 2;
    app.add_option("--ring", ring, "ambient ring descriptor, e.g. Z or Z/12 or F2[x]");
    app.add_option("--script", script, "batch file, one command per line, # comments");
    app.add_option("--json", json_path, "write the JSON report here before exiting");
    app.add_flag("--sweep", sweep, "run the verification sweep, then exit");
    app.add_option("--primes", primes, "sweep prime generators, comma separated");
    app.add_option("--max-exp", max_exp, "sweep bound on cyclic exponents");
    app.add_option("--max-atoms", max_atoms, "sweep bound on atoms per module");
    app.add_option("--tor-max", tor_max, "sweep bound on oracle Tor degree");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    SessionPtr session(gc_session_new());
    if (!session) {
        std::cerr << "error: cannot create session\n";
        return 1;
    }
    gc_session* s = session.get();

    if (!ring.empty()) {
        gc_status st = run_line(s, "ring " + ring, "");
        if (st != GC_OK) return exit_for(st);
    }

    if (sweep) {
        std::string line = "sweep";
        if (!primes.empty()) line += " --primes " + primes;
        line += " --max-exp " + std::to_string(max_exp);
        line += " --max-atoms " + std::to_string(max_atoms);
        line += " --tor-max " + std::to_string(tor_max);
        gc_status st = run_line(s, line, "");
        if (st != GC_OK) return exit_for(st);
    } else if (!script.empty()) {
        std::ifstream in(script);
        if (!in) {
            std::cerr << "error: cannot read script '" << script << "'\n";
            return 2;
        }
        std::string line;
        long n = 0;
        while (std::getline(in, line)) {
            ++n;
            gc_status st = run_line(s, line, script + ":" + std::to_string(n) + ": ");
            if (st != GC_OK) return exit_for(st);
        }
    } else {
        // line-oriented REPL; errors are reported and the session continues
        std::string line;
        while (std::getline(std::cin, line)) run_line(s, line, "");
    }

    if (!json_path.empty()) {
        gc_status st = gc_write_report(s, json_path.c_str(), 1);
        if (st != GC_OK) {
            std::cerr << "error: " << gc_last_error(s) << "\n";
            return exit_for(st);
        }
    }

    return gc_failure_count(s) > 0 ? 1 : 0;
}
