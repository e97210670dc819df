#include <algorithm>
#include <ostream>

#include "trustcf/evaluation.hpp"
#include "trustcf/io.hpp"

namespace trustcf {

namespace {

std::string alpha_field(const std::optional<double>& alpha) {
    return alpha ? format_double(*alpha) : "NA";
}

bool same_cell(const RoundResult& r, MethodId method, std::size_t k, const std::optional<double>& alpha) {
    return r.method == method && r.k == k && r.alpha == alpha;
}

}  // namespace

std::vector<SummaryRow> EvalReport::summary() const {
    std::vector<SummaryRow> out;
    std::vector<std::vector<double>> maes;
    for (const auto& r : rows_) {
        auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
            return s.method == r.method && s.k == r.k && s.alpha == r.alpha;
        });
        if (it == out.end()) {
            out.push_back({r.method, r.k, r.alpha, 0, 0.0, 0, 0});
            maes.emplace_back();
            it = out.end() - 1;
        }
        auto idx = static_cast<std::size_t>(it - out.begin());
        ++it->rounds;
        it->n_predicted += r.n_predicted;
        it->n_fallback += r.n_fallback;
        maes[idx].push_back(r.mae);
    }
    for (std::size_t s = 0; s < out.size(); ++s) {
        out[s].mae = compensated_sum(maes[s]) / static_cast<double>(maes[s].size());
    }
    return out;
}

std::optional<double> EvalReport::mae(MethodId method, std::size_t k, std::optional<double> alpha) const {
    std::vector<double> maes;
    for (const auto& r : rows_) {
        if (same_cell(r, method, k, alpha)) maes.push_back(r.mae);
    }
    if (maes.empty() && !alpha) {
        // LW methods carry their alpha; accept the single matching cell.
        std::optional<double> only;
        for (const auto& r : rows_) {
            if (r.method == method && r.k == k) {
                if (only && r.alpha != only) return std::nullopt;
                only = r.alpha;
            }
        }
        if (only) return mae(method, k, only);
    }
    if (maes.empty()) return std::nullopt;
    return compensated_sum(maes) / static_cast<double>(maes.size());
}

void EvalReport::write_rounds_csv(std::ostream& out) const {
    out << "method,K,alpha,round,mae,n_predicted,n_fallback\n";
    for (const auto& r : rows_) {
        out << to_string(r.method) << ',' << r.k << ',' << alpha_field(r.alpha) << ',' << r.round << ','
            << format_double(r.mae) << ',' << r.n_predicted << ',' << r.n_fallback << '\n';
    }
}

void EvalReport::write_summary_csv(std::ostream& out) const {
    out << "method,K,alpha,rounds,mae,coverage,n_predicted,n_fallback,note\n";
    for (const auto& s : summary()) {
        out << to_string(s.method) << ',' << s.k << ',' << alpha_field(s.alpha) << ',' << s.rounds << ','
            << format_double(s.mae) << ',' << format_double(s.coverage()) << ',' << s.n_predicted << ','
            << s.n_fallback << ',' << (is_reconstruction(s.method) ? "reconstruction" : "") << '\n';
    }
}

}  // namespace trustcf
