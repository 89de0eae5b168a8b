#pragma once

#include <optional>
#include <string>

#include "qswap/experiments.hpp"

namespace qswap {

enum class OutputFormat { Table, Json, Csv };

struct SweepInfo {
    std::uint64_t seed = 0;
    std::vector<double> distances;
};

// JSON and CSV print every float with 17 significant digits and emit keys
// in a fixed order, so identical inputs give byte-identical output. Tables
// use the shortest round-trip float form.

std::string to_json(const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);
std::string to_table(const ExperimentReport& report);

std::string to_json(const std::vector<BellTerm>& terms);
std::string to_csv(const std::vector<BellTerm>& terms);
std::string to_table(const std::vector<BellTerm>& terms);

std::string to_json(const NoSignalingReport& report, const std::optional<SweepInfo>& sweep = {});
std::string to_csv(const NoSignalingReport& report, const std::optional<SweepInfo>& sweep = {});
std::string to_table(const NoSignalingReport& report, const std::optional<SweepInfo>& sweep = {});

std::string to_json(const MonteCarloReport& report);
std::string to_csv(const MonteCarloReport& report);
std::string to_table(const MonteCarloReport& report);

template <typename R>
std::string render(const R& report, OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::Json: return to_json(report);
        case OutputFormat::Csv: return to_csv(report);
        case OutputFormat::Table: return to_table(report);
    }
    return {};
}

}  // namespace qswap
