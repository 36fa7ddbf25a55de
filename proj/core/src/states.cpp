#include "qbethe/states.hpp"

#include <cmath>
#include <sstream>

#include "qbethe/qseries.hpp"

namespace qbethe::states {

void ModelParams::validate(bool strict) const {
    const double vals[] = {q, a_minus, a_hat_minus, a_plus, a_hat_plus};
    const char* names[] = {"q", "a_minus", "a_hat_minus", "a_plus", "a_hat_plus"};
    for (int i = 0; i < 5; ++i) {
        if (!(vals[i] > -1.0 && vals[i] < 1.0))
            throw DomainError(std::string(names[i]) + " must lie in (-1,1)");
        if (strict && vals[i] == 0.0)
            throw DomainError(std::string(names[i]) + " must be nonzero in the strict domain");
    }
}

BoundedPartition::BoundedPartition(std::vector<int> parts, int m) : parts_(std::move(parts)), m_(m) {
    if (m_ < 1) throw DomainError("lattice extent m must be >= 1");
    int prev = m_;
    for (int x : parts_) {
        if (x > prev || x < 0) throw DomainError("parts must satisfy m >= l1 >= ... >= ln >= 0");
        prev = x;
    }
}

int BoundedPartition::multiplicity(int l) const {
    if (l < 0 || l > m_) throw DomainError("site index out of range [0,m]");
    int c = 0;
    for (int x : parts_)
        if (x == l) ++c;
    return c;
}

std::uint64_t state_count(int n, int m) {
    if (n < 0 || m < 1) throw DomainError("state_count requires n >= 0, m >= 1");
    std::uint64_t r = 1;
    for (int i = 1; i <= n; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(m + i);
        if (r > UINT64_MAX / num) throw CapacityError("state count overflows 64 bits");
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

namespace {
void emit(std::vector<int>& acc, int remaining, int max_part, int m,
          std::vector<BoundedPartition>& out) {
    if (remaining == 0) {
        out.emplace_back(acc, m);
        return;
    }
    for (int l = max_part; l >= 0; --l) {
        acc.push_back(l);
        emit(acc, remaining - 1, l, m, out);
        acc.pop_back();
    }
}
}  // namespace

std::vector<BoundedPartition> enumerate_states(int n, int m) {
    std::uint64_t count = state_count(n, m);
    if (count > (1ull << 24)) throw CapacityError("state space too large to enumerate");
    std::vector<BoundedPartition> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> acc;
    emit(acc, n, m, m, out);
    return out;
}

StateIndex::StateIndex(int n, int m) : n_(n), m_(m), list_(enumerate_states(n, m)) {
    lookup_.reserve(list_.size());
    for (int i = 0; i < static_cast<int>(list_.size()); ++i) lookup_.emplace(list_[i].parts(), i);
}

int StateIndex::index_of(const std::vector<int>& parts) const {
    auto it = lookup_.find(parts);
    return it == lookup_.end() ? -1 : it->second;
}

double weight(const BoundedPartition& lambda, const ModelParams& p) {
    p.validate();
    double denom = q_pochhammer(p.c_minus(), p.q, lambda.multiplicity(0)) *
                   q_pochhammer(p.c_plus(), p.q, lambda.multiplicity(lambda.m()));
    for (int l = 0; l <= lambda.m(); ++l) denom *= q_factorial(lambda.multiplicity(l), p.q);
    return 1.0 / denom;
}

Complex inner_product(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, int n, int m,
                      const ModelParams& p) {
    auto list = enumerate_states(n, m);
    if (f.size() != static_cast<Eigen::Index>(list.size()) || f.size() != g.size())
        throw DomainError("inner_product: vector length does not match dim Lambda_{n,m}");
    Complex s = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i)
        s += f[static_cast<Eigen::Index>(i)] * std::conj(g[static_cast<Eigen::Index>(i)]) *
             weight(list[i], p);
    return s;
}

nlohmann::ordered_json state_table_json(int n, int m, const ModelParams& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& lam : enumerate_states(n, m)) {
        nlohmann::ordered_json entry;
        entry["parts"] = lam.parts();
        entry["weight"] = weight(lam, p);
        arr.push_back(std::move(entry));
    }
    return arr;
}

std::string state_table_csv(int n, int m, const ModelParams& p) {
    std::ostringstream os;
    os << "index,parts,weight\n";
    auto list = enumerate_states(n, m);
    os.precision(17);
    for (std::size_t i = 0; i < list.size(); ++i) {
        os << i << ",";
        const auto& parts = list[i].parts();
        for (std::size_t j = 0; j < parts.size(); ++j) os << (j ? " " : "") << parts[j];
        os << "," << weight(list[i], p) << "\n";
    }
    return os.str();
}

}  // namespace qbethe::states
