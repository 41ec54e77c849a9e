#pragma once

namespace homebias {

/// Decimal odds for the three match outcomes. Valid odds are finite and > 1.
struct OddsTriple {
    double home = 0.0;
    double draw = 0.0;
    double away = 0.0;

    bool operator==(const OddsTriple&) const = default;
};

/// Margin-free outcome probabilities; components sum to one.
struct ProbTriple {
    double home = 0.0;
    double draw = 0.0;
    double away = 0.0;

    bool operator==(const ProbTriple&) const = default;
};

bool is_valid(const OddsTriple& odds) noexcept;

/// Throws DomainError unless every component is finite and strictly above 1.
void require_valid(const OddsTriple& odds);

/// Proportional normalisation of the inverse odds.
ProbTriple demargin(const OddsTriple& odds);

/// Overround: sum of inverse odds minus one.
double margin(const OddsTriple& odds);

/// Home minus away implied probability. Positive when the home side is favoured.
double imp_prob_diff(const ProbTriple& probs) noexcept;

}  // namespace homebias
