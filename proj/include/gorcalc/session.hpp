#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gorcalc/gorenstein.hpp"
#include "gorcalc/oracle.hpp"
#include "gorcalc/tor.hpp"

namespace gorcalc {

const char* tool_version();

// Parsed command line. The grammar is line-oriented:
//   ring <descriptor>
//   let <ID> = <mexpr>
//   tensor <mexpr> <mexpr>
//   tor <k> <mexpr> <mexpr>
//   hull <mexpr> | cosyz <mexpr> | filtration <mexpr> | is_gi <mexpr>
//   resolve
//   gamma (<gen>|0) <mexpr>
//   check lemma2.1 <gen> <mexpr>
//   check prop2.2 (<gen>|0) <mexpr> <k>
//   check cor2.3 <mexpr> <mexpr> <k>
//   check prop2.4 <mexpr> <mexpr> <k>
//   check thm3.1 <mexpr>
//   check thm4.1 <mexpr> <mexpr>
//   check rmk4.2 <k> <mexpr> <mexpr>
//   sweep --primes p,... --max-exp e --max-atoms a [--tor-max k]
//   report <path> [--json]
// with <mexpr> ::= term ((+) term)* and term ::= atom[^k] | <ID>[^k].
// Multi-term expressions bind greedily: a term belongs to the expression on
// its left unless separated from it by anything other than (+).
struct Command {
    enum class Kind {
        set_ring,
        let,
        tensor,
        tor_k,
        hull,
        cosyz,
        resolve,
        gamma,
        filtration,
        is_gi,
        check,
        sweep,
        report,
        blank,  // empty line or comment
    };
    Kind kind = Kind::blank;
    std::string name;               // descriptor / let target / gamma generator /
                                    // check id / report path
    std::vector<std::string> args;  // expressions and positional arguments, re-tokenized
    int k = 0;                      // tor degree
    // sweep bounds
    std::vector<std::string> primes;
    int max_exp = 2;
    int max_atoms = 2;
    int tor_max = 2;
    bool as_json = false;  // report

    bool operator==(const Command& o) const = default;
};

Command parse_command(const std::string& line);
std::string render_command(const Command& c);

// One executed computation; a report is the ordered log of these.
struct CaseRecord {
    std::string operation;
    std::vector<std::string> inputs;  // normal-form strings
    std::string output;
    bool verdict = true;
    std::string provenance;  // closed-form | oracle | both
    double elapsed = 0.0;
};

struct ReportDocument {
    std::string version = tool_version();
    std::string ring;  // active ring descriptor, empty until one is set
    std::vector<CaseRecord> cases;
    long mismatches = 0;  // oracle disagreements, counted separately

    long failures() const;
    std::string json() const;
    std::string text() const;
};

// Single ambient ring, named modules, accumulating report. One instance per
// interactive context; nothing here is shared between sessions.
class Session {
public:
    std::string execute_line(const std::string& line);
    std::string execute(const Command& cmd);

    bool has_ring() const { return ring_.has_value(); }
    const Ring& ring() const;
    const ReportDocument& report() const { return doc_; }

    void write_report(const std::string& path, bool as_json) const;

private:
    TameModule eval(const std::string& mexpr) const;
    PrimeIdeal eval_prime(const std::string& text) const;
    std::string run_check(const Command& cmd);
    std::string run_sweep(const Command& cmd);
    void record(CaseRecord rec);

    std::optional<Ring> ring_;
    std::map<std::string, TameModule> names_;
    ReportDocument doc_;
};

}  // namespace gorcalc
