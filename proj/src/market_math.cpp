#include "homebias/market_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "homebias/errors.hpp"

namespace homebias {

namespace {

bool valid_price(double o) noexcept { return std::isfinite(o) && o > 1.0; }

// Summed in ascending order so the result does not depend on outcome order.
double inverse_sum(const OddsTriple& odds) noexcept
{
    std::array<double, 3> inv{1.0 / odds.home, 1.0 / odds.draw, 1.0 / odds.away};
    std::sort(inv.begin(), inv.end());
    return (inv[0] + inv[1]) + inv[2];
}

}  // namespace

bool is_valid(const OddsTriple& odds) noexcept
{
    return valid_price(odds.home) && valid_price(odds.draw) && valid_price(odds.away);
}

void require_valid(const OddsTriple& odds)
{
    if (is_valid(odds))
        return;
    std::ostringstream msg;
    msg << "decimal odds must be finite and > 1, got (" << odds.home << ", " << odds.draw
        << ", " << odds.away << ")";
    throw DomainError(msg.str());
}

ProbTriple demargin(const OddsTriple& odds)
{
    require_valid(odds);
    const double ih = 1.0 / odds.home;
    const double id = 1.0 / odds.draw;
    const double ia = 1.0 / odds.away;
    const double book = inverse_sum(odds);
    return {ih / book, id / book, ia / book};
}

double margin(const OddsTriple& odds)
{
    require_valid(odds);
    return inverse_sum(odds) - 1.0;
}

double imp_prob_diff(const ProbTriple& probs) noexcept { return probs.home - probs.away; }

}  // namespace homebias
