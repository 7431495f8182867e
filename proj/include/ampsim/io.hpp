#ifndef AMPSIM_IO_HPP
#define AMPSIM_IO_HPP

// Result serialization. Floating-point values are written fixed-point with
// six decimals and a '.' separator regardless of locale.

#include <ostream>
#include <span>
#include <string>

#include "ampsim/metrics.hpp"
#include "ampsim/recommender.hpp"

namespace ampsim {

std::string format_fixed6(double value);

/// "All" for pooled rows.
std::string start_label(const std::optional<Topic>& start);

/// simulation,start_topic,step,topic,recommended_share,chosen_share,trials
void write_shares_csv(std::ostream& out, const ShareTable& table, bool header = true);
/// start_topic,topic,relative_utility,users
void write_baselines_csv(std::ostream& out, const BaselineTable& table);
/// Array of {start_topic, topic, mean_chosen_share, baseline, margin,
/// verdict, tie, standard_error}.
void write_verdicts_json(std::ostream& out, std::span<const Verdict> verdicts);
/// One line per user, comma-separated 0/1.
void write_consumption_csv(std::ostream& out, const ConsumptionMatrix& s);

}  // namespace ampsim

#endif  // AMPSIM_IO_HPP
