#include "ampsim/io.hpp"

#include <charconv>
#include <stdexcept>

namespace ampsim {

std::string format_fixed6(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  if (ec != std::errc()) throw std::runtime_error("format_fixed6: value does not fit");
  std::string s(buf, end);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

std::string start_label(const std::optional<Topic>& start) {
  return start ? std::string(to_string(*start)) : "All";
}

void write_shares_csv(std::ostream& out, const ShareTable& table, bool header) {
  if (header) out << "simulation,start_topic,step,topic,recommended_share,chosen_share,trials\n";
  for (const ShareRow& r : table)
    out << r.simulation << ',' << start_label(r.start_topic) << ',' << r.step << ',' << to_string(r.topic) << ','
        << format_fixed6(r.recommended_share) << ',' << format_fixed6(r.chosen_share) << ',' << r.trials << '\n';
}

void write_baselines_csv(std::ostream& out, const BaselineTable& table) {
  out << "start_topic,topic,relative_utility,users\n";
  for (const BaselineRow& r : table)
    out << start_label(r.start_topic) << ',' << to_string(r.topic) << ',' << format_fixed6(r.relative_utility)
        << ',' << r.users << '\n';
}

void write_verdicts_json(std::ostream& out, std::span<const Verdict> verdicts) {
  out << "[\n";
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    const Verdict& v = verdicts[k];
    out << "  {\"start_topic\": \"" << start_label(v.start_topic) << "\", \"topic\": \"" << to_string(v.topic)
        << "\", \"mean_chosen_share\": " << format_fixed6(v.mean_chosen_share)
        << ", \"baseline\": " << format_fixed6(v.baseline) << ", \"margin\": " << format_fixed6(v.margin)
        << ", \"verdict\": \"" << (v.kind == VerdictKind::Amplified ? "Amplified" : "Deamplified")
        << "\", \"tie\": " << (v.tie ? "true" : "false")
        << ", \"standard_error\": " << format_fixed6(v.standard_error) << '}'
        << (k + 1 < verdicts.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

void write_consumption_csv(std::ostream& out, const ConsumptionMatrix& s) {
  std::string line;
  for (Index i = 0; i < s.num_users(); ++i) {
    line.clear();
    for (Index j = 0; j < s.num_items(); ++j) {
      if (j > 0) line += ',';
      line += s.consumed(i, j) ? '1' : '0';
    }
    out << line << '\n';
  }
}

}  // namespace ampsim
