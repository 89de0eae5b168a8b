#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qswap/experiments.hpp"

namespace qswap {

// Protocol script language, one statement per ";":
//
//   program   := { statement }
//   statement := (prepare | measure | report) ";"
//   prepare   := "prepare" ( "singlet" "(" label "," label ")"
//                          | "bell" bellkind "(" label "," label ")"
//                          | "ket" bitpattern )
//   measure   := "measure" basis "on" targets
//   basis     := "spin" "(" axis ")" | "bell"
//   axis      := "x" | "y" | "z" | "(" number "," number "," number ")"
//   targets   := label | "(" label "," label ")"
//   report    := "report" metric
//   metric    := "probs" | "rdm" "(" labels ")"
//              | "schmidt" "(" labels "|" labels ")"
//              | "entropy" "(" labels "|" labels ")"
//              | "concurrence" "(" label "," label ")"
//              | "correlator" "(" label "," axis "," label "," axis ")"
//   bellkind  := "psi+" | "psi-" | "phi+" | "phi-"
//   bitpattern:= ("+" | "-")+          (particles numbered after the largest
//                                       label prepared so far)
//   label     := positive integer
//
// "#" starts a comment running to the end of the line; whitespace is
// insignificant.

struct SourcePos {
    int line = 1;
    int column = 1;
};

struct ParseError {
    int line = 1;
    int column = 1;
    std::string message;
    std::string token;  // offending token text, empty at end of input
};

struct AxisSpec {
    enum class Kind { X, Y, Z, Custom };
    Kind kind = Kind::Z;
    double x = 0.0, y = 0.0, z = 0.0;  // raw components, Custom only

    SpinDirection direction() const;
    bool operator==(const AxisSpec& o) const;
};

struct PrepareStmt {
    enum class Source { Singlet, Bell, Ket };
    Source source = Source::Singlet;
    BellKind bell = BellKind::PsiPlus;
    std::vector<int> labels;        // two labels for singlet/bell
    std::vector<Spin> ket_pattern;  // for ket
    SourcePos pos;
    bool operator==(const PrepareStmt& o) const;
};

struct MeasureStmt {
    bool is_bell = false;
    AxisSpec axis;  // spin only
    std::vector<int> targets;
    SourcePos pos;
    bool operator==(const MeasureStmt& o) const;
};

struct MetricSpec {
    enum class Kind { Probs, Rdm, Schmidt, Entropy, Concurrence, Correlator };
    Kind kind = Kind::Probs;
    std::vector<int> labels_a;  // rdm / schmidt A / concurrence pair / correlator p
    std::vector<int> labels_b;  // schmidt B / correlator q
    AxisSpec axis_a, axis_b;    // correlator only
    bool operator==(const MetricSpec& o) const;
};

struct ReportStmt {
    MetricSpec metric;
    SourcePos pos;
    bool operator==(const ReportStmt& o) const;
};

using Statement = std::variant<PrepareStmt, MeasureStmt, ReportStmt>;

struct ProtocolProgram {
    std::vector<Statement> statements;
    bool operator==(const ProtocolProgram& o) const;
};

struct ParseResult {
    std::optional<ProtocolProgram> program;
    std::optional<ParseError> error;
    bool ok() const { return program.has_value(); }
};

// Never throws on any input bytes; the first error in reading order comes
// back as the ParseError.
ParseResult parse(std::string_view source);

// Canonical text form; parse(pretty_print(p)) reproduces p exactly.
std::string pretty_print(const ProtocolProgram& program);
std::string pretty_print(const MetricSpec& metric);

struct SemanticError {
    SourcePos pos;
    std::string message;
};

// All semantic problems, in reading order (not fail-fast).
std::vector<SemanticError> validate(const ProtocolProgram& program);

// Enumerates every outcome branch with analytic probabilities. The program
// must validate. Diagnostics cover the never-measured qubits, exactly as in
// the canned experiment reports.
ExperimentReport interpret(const ProtocolProgram& program);

// Follows a single branch per measurement using the (seed, trial) stream.
ExperimentReport interpret_sampled(const ProtocolProgram& program, std::uint64_t seed,
                                   std::uint64_t trial = 0);

MonteCarloReport monte_carlo_program(const ProtocolProgram& program, std::uint64_t trials,
                                     std::uint64_t seed = kDefaultSeed);

}  // namespace qswap
