// Grammar-directed random protocol programs for round-trip and fuzz tests.
#pragma once

#include <cmath>

#include "qswap/protocol.hpp"
#include "qswap/rng.hpp"

namespace testgen {

inline qswap::ProtocolProgram random_program(qswap::RngStream& rng) {
    using namespace qswap;
    ProtocolProgram prog;
    const std::size_t count = 1 + rng.next_u64() % 7;
    auto rnd_label = [&]() { return 1 + static_cast<int>(rng.next_u64() % 99); };
    auto rnd_labels = [&](std::size_t max_len) {
        std::vector<int> out(1 + rng.next_u64() % max_len);
        for (int& l : out) l = rnd_label();
        return out;
    };
    auto rnd_axis = [&]() {
        AxisSpec a;
        switch (rng.next_u64() % 4) {
            case 0: a.kind = AxisSpec::Kind::X; break;
            case 1: a.kind = AxisSpec::Kind::Y; break;
            case 2: a.kind = AxisSpec::Kind::Z; break;
            default:
                a.kind = AxisSpec::Kind::Custom;
                a.x = rng.normal() * std::pow(10.0, static_cast<double>(rng.next_u64() % 7) - 3.0);
                a.y = rng.normal();
                a.z = rng.normal() * 1e3;
        }
        return a;
    };
    const BellKind kinds[] = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                              BellKind::PhiMinus};
    for (std::size_t i = 0; i < count; ++i) {
        switch (rng.next_u64() % 3) {
            case 0: {
                PrepareStmt p;
                switch (rng.next_u64() % 3) {
                    case 0:
                        p.source = PrepareStmt::Source::Singlet;
                        p.labels = {rnd_label(), rnd_label()};
                        break;
                    case 1:
                        p.source = PrepareStmt::Source::Bell;
                        p.bell = kinds[rng.next_u64() % 4];
                        p.labels = {rnd_label(), rnd_label()};
                        break;
                    default: {
                        p.source = PrepareStmt::Source::Ket;
                        const std::size_t bits = 1 + rng.next_u64() % 5;
                        for (std::size_t b = 0; b < bits; ++b)
                            p.ket_pattern.push_back(rng.uniform() < 0.5 ? Spin::Plus
                                                                        : Spin::Minus);
                    }
                }
                prog.statements.emplace_back(std::move(p));
                break;
            }
            case 1: {
                MeasureStmt m;
                m.is_bell = rng.uniform() < 0.4;
                if (!m.is_bell) m.axis = rnd_axis();
                m.targets = rnd_labels(2);
                if (m.is_bell && m.targets.size() == 1) m.targets.push_back(rnd_label());
                prog.statements.emplace_back(std::move(m));
                break;
            }
            default: {
                ReportStmt r;
                switch (rng.next_u64() % 6) {
                    case 0: r.metric.kind = MetricSpec::Kind::Probs; break;
                    case 1:
                        r.metric.kind = MetricSpec::Kind::Rdm;
                        r.metric.labels_a = rnd_labels(3);
                        break;
                    case 2:
                        r.metric.kind = MetricSpec::Kind::Schmidt;
                        r.metric.labels_a = rnd_labels(2);
                        r.metric.labels_b = rnd_labels(2);
                        break;
                    case 3:
                        r.metric.kind = MetricSpec::Kind::Entropy;
                        r.metric.labels_a = rnd_labels(2);
                        r.metric.labels_b = rnd_labels(2);
                        break;
                    case 4:
                        r.metric.kind = MetricSpec::Kind::Concurrence;
                        r.metric.labels_a = {rnd_label(), rnd_label()};
                        break;
                    default:
                        r.metric.kind = MetricSpec::Kind::Correlator;
                        r.metric.labels_a = {rnd_label()};
                        r.metric.labels_b = {rnd_label()};
                        r.metric.axis_a = rnd_axis();
                        r.metric.axis_b = rnd_axis();
                }
                prog.statements.emplace_back(std::move(r));
            }
        }
    }
    return prog;
}

}  // namespace testgen
