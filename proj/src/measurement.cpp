#include "qswap/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qswap {

SpinDirection SpinDirection::make(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (std::abs(n2 - 1.0) > 1e-10) throw std::invalid_argument("SpinDirection: not a unit vector");
    return {x, y, z};
}

SpinDirection SpinDirection::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n >= 1e-6 && n <= 1e6)) throw std::invalid_argument("SpinDirection: norm out of range");
    return {x / n, y / n, z / n};
}

CMat spin_operator(const SpinDirection& d) {
    CMat m(2, 2);
    m(0, 0) = d.z;
    m(0, 1) = cplx{d.x, -d.y};
    m(1, 0) = cplx{d.x, d.y};
    m(1, 1) = -d.z;
    return m;
}

MeasurementBasis MeasurementBasis::make(std::vector<int> targets, std::vector<CVec> vectors,
                                        std::vector<std::string> labels) {
    if (targets.empty()) throw std::invalid_argument("MeasurementBasis: no targets");
    std::set<int> uniq(targets.begin(), targets.end());
    if (uniq.size() != targets.size())
        throw std::invalid_argument("MeasurementBasis: duplicate target");
    const std::size_t dim = std::size_t{1} << targets.size();
    if (vectors.size() != dim)
        throw std::invalid_argument("MeasurementBasis: basis is not complete");
    if (labels.size() != vectors.size())
        throw std::invalid_argument("MeasurementBasis: label count mismatch");
    std::set<std::string> lbls(labels.begin(), labels.end());
    if (lbls.size() != labels.size())
        throw std::invalid_argument("MeasurementBasis: duplicate outcome label");
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim)
            throw std::invalid_argument("MeasurementBasis: vector dimension mismatch");
        if (!all_finite(vectors[i]))
            throw std::invalid_argument("MeasurementBasis: non-finite entry");
        for (std::size_t j = 0; j <= i; ++j) {
            const cplx g = inner(vectors[i], vectors[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw std::invalid_argument("MeasurementBasis: vectors not orthonormal");
        }
    }
    MeasurementBasis b;
    b.targets = std::move(targets);
    b.vectors = std::move(vectors);
    b.labels = std::move(labels);
    return b;
}

MeasurementBasis spin_basis(int target, const SpinDirection& d) {
    const double theta = std::acos(std::clamp(d.z, -1.0, 1.0));
    const double phi = std::atan2(d.y, d.x);
    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    const cplx eip = std::polar(1.0, phi);
    CVec up = {cplx{ch}, eip * sh};
    CVec down = {-std::conj(eip) * sh, cplx{ch}};
    return MeasurementBasis::make({target}, {std::move(up), std::move(down)}, {"+", "-"});
}

MeasurementBasis bell_basis(int label_a, int label_b) {
    if (label_a == label_b) throw std::invalid_argument("bell_basis: duplicate labels");
    std::vector<CVec> vecs;
    std::vector<std::string> labels;
    for (BellKind k : {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus}) {
        vecs.push_back(bell_amplitudes(k));
        labels.emplace_back(bell_name(k));
    }
    return MeasurementBasis::make({label_a, label_b}, std::move(vecs), std::move(labels));
}

MeasurementBasis product_basis(const std::vector<MeasurementBasis>& parts) {
    if (parts.empty()) throw std::invalid_argument("product_basis: no parts");
    std::vector<int> targets;
    std::vector<CVec> vectors = {{cplx{1.0}}};
    std::vector<std::string> labels = {""};
    for (const MeasurementBasis& part : parts) {
        targets.insert(targets.end(), part.targets.begin(), part.targets.end());
        std::vector<CVec> nv;
        std::vector<std::string> nl;
        nv.reserve(vectors.size() * part.vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i)
            for (std::size_t j = 0; j < part.vectors.size(); ++j) {
                nv.push_back(tensor(vectors[i], part.vectors[j]));
                nl.push_back(labels[i] + part.labels[j]);
            }
        vectors = std::move(nv);
        labels = std::move(nl);
    }
    return MeasurementBasis::make(std::move(targets), std::move(vectors), std::move(labels));
}

std::vector<OutcomeRecord> measure(const StateVector& state, const MeasurementBasis& basis) {
    const std::size_t n = state.num_qubits();
    const std::size_t k = basis.targets.size();
    if (k > n) throw std::invalid_argument("measure: more targets than qubits");

    // Bit position (from the MSB) of each target in the state.
    std::vector<std::size_t> tpos(k);
    for (std::size_t i = 0; i < k; ++i) tpos[i] = state.bit_position(basis.targets[i]);

    std::vector<bool> is_target(n, false);
    for (std::size_t p : tpos) is_target[p] = true;

    const std::size_t sub_dim = std::size_t{1} << k;
    const std::size_t rest_dim = std::size_t{1} << (n - k);

    // scatter[s] spreads a sub-index over the target bit positions,
    // rest_scatter[r] spreads the remainder over the others.
    std::vector<std::size_t> scatter(sub_dim, 0), rest_scatter(rest_dim, 0);
    for (std::size_t s = 0; s < sub_dim; ++s)
        for (std::size_t i = 0; i < k; ++i)
            if ((s >> (k - 1 - i)) & 1u) scatter[s] |= std::size_t{1} << (n - 1 - tpos[i]);
    {
        std::vector<std::size_t> rest_pos;
        for (std::size_t p = 0; p < n; ++p)
            if (!is_target[p]) rest_pos.push_back(p);
        for (std::size_t r = 0; r < rest_dim; ++r)
            for (std::size_t i = 0; i < rest_pos.size(); ++i)
                if ((r >> (rest_pos.size() - 1 - i)) & 1u)
                    rest_scatter[r] |= std::size_t{1} << (n - 1 - rest_pos[i]);
    }

    const CVec& psi = state.amplitudes();
    std::vector<OutcomeRecord> records;
    records.reserve(basis.vectors.size());
    double total = 0.0;
    for (std::size_t m = 0; m < basis.vectors.size(); ++m) {
        const CVec& bvec = basis.vectors[m];
        CVec coeff(rest_dim, cplx{0.0});
        double p = 0.0;
        for (std::size_t r = 0; r < rest_dim; ++r) {
            cplx c{0.0};
            for (std::size_t s = 0; s < sub_dim; ++s)
                c += std::conj(bvec[s]) * psi[scatter[s] | rest_scatter[r]];
            coeff[r] = c;
            p += std::norm(c);
        }
        total += p;
        OutcomeRecord rec;
        rec.label = basis.labels[m];
        rec.probability = p;
        if (p >= kProbFloor) {
            CVec post(psi.size(), cplx{0.0});
            const double inv = 1.0 / std::sqrt(p);
            for (std::size_t r = 0; r < rest_dim; ++r)
                for (std::size_t s = 0; s < sub_dim; ++s)
                    post[scatter[s] | rest_scatter[r]] = bvec[s] * coeff[r] * inv;
            rec.post_state = StateVector(state.labels(), std::move(post));
        }
        records.push_back(std::move(rec));
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::runtime_error("measure: branch probabilities do not close to 1");
    return records;
}

std::size_t sample(const std::vector<OutcomeRecord>& records, RngStream& rng) {
    if (records.empty()) throw std::invalid_argument("sample: no records");
    double total = 0.0;
    for (const OutcomeRecord& r : records) {
        if (!(r.probability >= 0.0)) throw std::invalid_argument("sample: negative probability");
        total += r.probability;
    }
    if (std::abs(total - 1.0) > 1e-8) throw std::invalid_argument("sample: probabilities do not sum to 1");
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        cum += records[i].probability;
        if (u < cum) return i;
    }
    // u landed in rounding slack past the last positive bin
    for (std::size_t i = records.size(); i-- > 0;)
        if (records[i].probability > 0.0) return i;
    return records.size() - 1;
}

}  // namespace qswap
