#include "declab/spinfid/spinfid.hpp"

#include <cmath>

namespace declab::spinfid {

lab::ResultTable convergence_study(Family family, std::span<const int> n_list,
                                   std::span<const double> tau_grid, double delta,
                                   double coupling, double field) {
    lab::ResultTable table({{"n_sites", "1"}, {"sigma_sq", "1"}, {"sup_deviation", "1"}});
    for (int n : n_list) {
        const SpinModel model = family == Family::independent_field
                                    ? models::independent_field(n, delta)
                                    : models::transverse_ising(n, coupling, field);
        const double sigma_sq = variance(model.ensemble, model.state);
        const double sigma = std::sqrt(sigma_sq);
        const FidelityEvaluator eval(model.ensemble, model.state);
        double sup = 0.0;
        for (double tau : tau_grid) {
            const double f = eval.fidelity(tau / sigma);
            sup = std::max(sup, std::abs(f - std::exp(-tau * tau)));
        }
        table.add_row(std::array{static_cast<double>(n), sigma_sq, sup});
    }
    return table;
}

} // namespace declab::spinfid
