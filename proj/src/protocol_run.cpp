#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "qswap/protocol.hpp"

namespace qswap {

namespace {

[[noreturn]] void fail_at(const SourcePos& pos, const std::string& message) {
    throw std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                             std::to_string(pos.column) + ": " + message);
}

struct ResolvedProgram {
    const ProtocolProgram* program = nullptr;
    std::vector<std::vector<int>> prepare_labels;       // per statement (empty unless prepare)
    std::vector<std::vector<std::size_t>> groups;       // runs of mergeable measures
    std::vector<int> keep;                              // never-measured labels, ascending
};

// Consecutive measure statements with pairwise disjoint targets act as one
// joint measurement; this keeps a script with per-qubit measures identical,
// double for double, to the equivalent single product measurement.
ResolvedProgram resolve(const ProtocolProgram& program) {
    ResolvedProgram rp;
    rp.program = &program;
    rp.prepare_labels.resize(program.statements.size());

    std::set<int> declared, measured;
    int highest = 0;
    for (std::size_t i = 0; i < program.statements.size(); ++i) {
        if (const auto* p = std::get_if<PrepareStmt>(&program.statements[i])) {
            std::vector<int> labels = p->labels;
            if (p->source == PrepareStmt::Source::Ket)
                for (std::size_t b = 0; b < p->ket_pattern.size(); ++b)
                    labels.push_back(highest + 1 + static_cast<int>(b));
            for (int lbl : labels) {
                declared.insert(lbl);
                highest = std::max(highest, lbl);
            }
            rp.prepare_labels[i] = std::move(labels);
        } else if (const auto* m = std::get_if<MeasureStmt>(&program.statements[i])) {
            for (int lbl : m->targets) measured.insert(lbl);
        }
    }

    std::size_t i = 0;
    while (i < program.statements.size()) {
        if (!std::holds_alternative<MeasureStmt>(program.statements[i])) {
            ++i;
            continue;
        }
        std::vector<std::size_t> group = {i};
        std::set<int> used(std::get<MeasureStmt>(program.statements[i]).targets.begin(),
                           std::get<MeasureStmt>(program.statements[i]).targets.end());
        std::size_t j = i + 1;
        while (j < program.statements.size()) {
            const auto* next = std::get_if<MeasureStmt>(&program.statements[j]);
            if (!next) break;
            const bool disjoint = std::none_of(next->targets.begin(), next->targets.end(),
                                               [&](int t) { return used.count(t); });
            if (!disjoint) break;
            used.insert(next->targets.begin(), next->targets.end());
            group.push_back(j);
            ++j;
        }
        rp.groups.push_back(std::move(group));
        i = j;
    }

    for (int lbl : declared)
        if (!measured.count(lbl)) rp.keep.push_back(lbl);
    return rp;
}

StateVector prepared_state(const PrepareStmt& stmt, const std::vector<int>& labels) {
    switch (stmt.source) {
        case PrepareStmt::Source::Singlet: return singlet(labels[0], labels[1]);
        case PrepareStmt::Source::Bell: return bell_state(stmt.bell, labels[0], labels[1]);
        case PrepareStmt::Source::Ket: return basis_ket(stmt.ket_pattern, labels);
    }
    throw std::invalid_argument("prepare: bad source");
}

MeasurementBasis statement_bases(const ResolvedProgram& rp, const std::vector<std::size_t>& group) {
    std::vector<MeasurementBasis> parts;
    for (std::size_t idx : group) {
        const auto& m = std::get<MeasureStmt>(rp.program->statements[idx]);
        if (m.is_bell) {
            parts.push_back(bell_basis(m.targets[0], m.targets[1]));
        } else {
            const SpinDirection dir = m.axis.direction();
            for (int t : m.targets) parts.push_back(spin_basis(t, dir));
        }
    }
    if (parts.size() == 1) return parts[0];
    return product_basis(parts);
}

// Pure state of a label subset, defined when the state factorizes across
// the cut (it always does for never-measured vs measured qubits).
StateVector restrict_pure(const StateVector& state, const std::vector<int>& subset) {
    if (subset == state.labels()) return state;
    std::vector<int> rest;
    for (int lbl : state.labels())
        if (std::find(subset.begin(), subset.end(), lbl) == subset.end()) rest.push_back(lbl);
    const SchmidtDecomposition cut = schmidt(state, subset, rest);
    if (cut.coefficients[0] < 1.0 - 1e-9)
        throw std::runtime_error("subsystem {" + std::to_string(subset[0]) +
                                 ", ...} is not in a pure state on this branch");
    return StateVector(cut.part_a, cut.left_vectors[0]);
}

MetricValue eval_metric(const MetricSpec& spec, const StateVector& state, double branch_prob) {
    switch (spec.kind) {
        case MetricSpec::Kind::Probs: return branch_prob;
        case MetricSpec::Kind::Rdm: return reduced_density(state, spec.labels_a);
        case MetricSpec::Kind::Schmidt:
        case MetricSpec::Kind::Entropy: {
            std::vector<int> both = spec.labels_a;
            both.insert(both.end(), spec.labels_b.begin(), spec.labels_b.end());
            std::sort(both.begin(), both.end());
            const StateVector sub = restrict_pure(state, both);
            const SchmidtDecomposition sd = schmidt(sub, spec.labels_a, spec.labels_b);
            if (spec.kind == MetricSpec::Kind::Schmidt) return sd.coefficients;
            return entanglement_entropy(sd);
        }
        case MetricSpec::Kind::Concurrence:
            return mixed_concurrence(reduced_density(state, spec.labels_a));
        case MetricSpec::Kind::Correlator:
            return correlator(state, spec.labels_a[0], spec.axis_a.direction(), spec.labels_b[0],
                              spec.axis_b.direction());
    }
    throw std::invalid_argument("report: bad metric");
}

struct Branch {
    std::optional<StateVector> state;
    double prob = 1.0;
    std::string label;
    std::vector<std::pair<std::string, MetricValue>> metrics;
    bool dead = false;  // branch probability fell below the post-state floor
};

void require_valid(const ProtocolProgram& program) {
    const std::vector<SemanticError> errors = validate(program);
    if (!errors.empty())
        fail_at(errors.front().pos, "program failed validation: " + errors.front().message);
}

std::optional<StateVector> full_initial_state(const ResolvedProgram& rp) {
    std::optional<StateVector> init;
    for (std::size_t i = 0; i < rp.program->statements.size(); ++i) {
        if (const auto* p = std::get_if<PrepareStmt>(&rp.program->statements[i])) {
            StateVector part = prepared_state(*p, rp.prepare_labels[i]);
            init = init ? tensor(*init, part) : std::move(part);
        }
    }
    return init;
}

ExperimentReport finish_report(const ResolvedProgram& rp, std::vector<Branch> branches,
                               bool with_summary) {
    ExperimentReport report;
    report.experiment_id = 0;
    report.kept_labels = rp.keep;
    std::vector<OutcomeRecord> pseudo;
    for (Branch& b : branches) {
        OutcomeRow row = build_outcome_row(b.label, b.prob, b.state, rp.keep);
        row.metrics = std::move(b.metrics);
        report.rows.push_back(std::move(row));
        pseudo.push_back({b.label, b.prob, b.state});
    }
    const std::optional<StateVector> init = full_initial_state(rp);
    const bool any_state =
        std::any_of(pseudo.begin(), pseudo.end(), [](const auto& r) { return r.post_state.has_value(); });
    if (with_summary && init && any_state && !rp.keep.empty()) {
        ReportSummary summary{mixed_from_records(pseudo, rp.keep), 0.0, std::nullopt};
        summary.frobenius_to_premeasurement = frobenius_distance(
            summary.rho_avg.matrix(), reduced_density(*init, rp.keep).matrix());
        if (rp.keep.size() == 2) summary.mixed_conc = mixed_concurrence(summary.rho_avg);
        report.summary = std::move(summary);
    }
    return report;
}

std::vector<Branch> run_branches(const ResolvedProgram& rp, RngStream* sampler) {
    std::vector<Branch> branches(1);
    std::size_t group_at = 0;
    const auto& statements = rp.program->statements;

    std::size_t i = 0;
    while (i < statements.size()) {
        if (const auto* p = std::get_if<PrepareStmt>(&statements[i])) {
            for (Branch& b : branches) {
                if (b.dead) continue;
                StateVector part = prepared_state(*p, rp.prepare_labels[i]);
                b.state = b.state ? tensor(*b.state, part) : std::move(part);
            }
            ++i;
        } else if (std::holds_alternative<MeasureStmt>(statements[i])) {
            const std::vector<std::size_t>& group = rp.groups[group_at++];
            const MeasurementBasis basis = statement_bases(rp, group);
            const SourcePos pos = std::get<MeasureStmt>(statements[group.front()]).pos;
            std::vector<Branch> next;
            for (Branch& b : branches) {
                if (!b.state || b.dead) {
                    next.push_back(std::move(b));
                    continue;
                }
                std::vector<OutcomeRecord> records;
                try {
                    records = measure(*b.state, basis);
                } catch (const std::exception& e) {
                    fail_at(pos, e.what());
                }
                if (sampler) {
                    const std::size_t k = sample(records, *sampler);
                    Branch child = std::move(b);
                    child.prob *= records[k].probability;
                    child.label += records[k].label;
                    child.state = std::move(records[k].post_state);
                    child.dead = !child.state.has_value();
                    next.push_back(std::move(child));
                } else {
                    for (OutcomeRecord& rec : records) {
                        Branch child;
                        child.state = std::move(rec.post_state);
                        child.prob = b.prob * rec.probability;
                        child.label = b.label + rec.label;
                        child.metrics = b.metrics;
                        child.dead = !child.state.has_value();
                        next.push_back(std::move(child));
                    }
                }
            }
            branches = std::move(next);
            i = group.back() + 1;
        } else {
            const auto& r = std::get<ReportStmt>(statements[i]);
            for (Branch& b : branches) {
                if (!b.state || b.dead) continue;
                try {
                    b.metrics.emplace_back(pretty_print(r.metric),
                                           eval_metric(r.metric, *b.state, b.prob));
                } catch (const std::exception& e) {
                    fail_at(r.pos, e.what());
                }
            }
            ++i;
        }
    }
    return branches;
}

}  // namespace

ExperimentReport interpret(const ProtocolProgram& program) {
    require_valid(program);
    if (program.statements.empty()) return {};
    const ResolvedProgram rp = resolve(program);
    return finish_report(rp, run_branches(rp, nullptr), /*with_summary=*/true);
}

ExperimentReport interpret_sampled(const ProtocolProgram& program, std::uint64_t seed,
                                   std::uint64_t trial) {
    require_valid(program);
    if (program.statements.empty()) return {};
    const ResolvedProgram rp = resolve(program);
    RngStream rng(seed, trial);
    // Ensemble summary values are meaningless for a single trajectory.
    return finish_report(rp, run_branches(rp, &rng), /*with_summary=*/false);
}

MonteCarloReport monte_carlo_program(const ProtocolProgram& program, std::uint64_t trials,
                                     std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("monte_carlo_program: trials must be >= 1");
    require_valid(program);
    const ResolvedProgram rp = resolve(program);

    std::vector<std::string> labels;
    std::vector<double> probs;
    std::map<std::string, std::size_t> slot;
    if (!program.statements.empty()) {
        for (const Branch& b : run_branches(rp, nullptr)) {
            slot[b.label] = labels.size();
            labels.push_back(b.label);
            probs.push_back(b.prob);
        }
    }

    std::vector<std::uint64_t> counts(labels.size(), 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (labels.empty()) break;
        RngStream rng(seed, t);
        const std::vector<Branch> walked = run_branches(rp, &rng);
        counts[slot.at(walked.front().label)]++;
    }

    MonteCarloReport report;
    report.seed = seed;
    report.trials = trials;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        MonteCarloOutcome o;
        o.outcome = labels[k];
        o.count = counts[k];
        o.frequency = static_cast<double>(counts[k]) / static_cast<double>(trials);
        o.probability = probs[k];
        const double dev = std::abs(o.frequency - o.probability);
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        const double sigma =
            std::sqrt(o.probability * (1.0 - o.probability) / static_cast<double>(trials));
        if (dev > 0.0 && sigma > 0.0)
            report.max_sigma_multiple = std::max(report.max_sigma_multiple, dev / sigma);
        report.outcomes.push_back(std::move(o));
    }
    return report;
}

}  // namespace qswap
