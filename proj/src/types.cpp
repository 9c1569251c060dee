#include "banditlab/types.hpp"

#include <stdexcept>
#include <string>

namespace banditlab {

void validate_dataset(const LogDataset& data) {
    if (data.num_items < 0)
        throw std::invalid_argument("num_items must be nonnegative");
    for (std::size_t n = 0; n < data.events.size(); ++n) {
        const BanditEvent& e = data.events[n];
        const std::string where = " at event " + std::to_string(n);
        if (e.context.size() != data.num_items)
            throw std::invalid_argument("context length mismatch" + where);
        for (int v : e.context.views)
            if (v < 0) throw std::invalid_argument("negative view count" + where);
        if (e.action < 0 || e.action >= data.num_items)
            throw std::invalid_argument("action out of range" + where);
        if (e.click != 0 && e.click != 1)
            throw std::invalid_argument("click not in {0,1}" + where);
        if (!(e.propensity > 0.0))
            throw std::invalid_argument("nonpositive propensity" + where);
        if (e.propensity > 1.0)
            throw std::invalid_argument("propensity above 1" + where);
    }
}

}  // namespace banditlab
