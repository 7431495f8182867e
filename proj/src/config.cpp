#include "ampsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace ampsim {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {"num_users", "num_items", "topics",     "lambda",
                                     "slate_size", "neighbors", "steps",     "trials",
                                     "master_seed", "which_simulations", "output_dir",
                                     "dump_consumption", "threads"};

const std::set<std::string> kTopicKeys = {"label", "alpha", "beta", "gamma", "item_count"};

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<std::int64_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [key, _] : obj.items())
    if (!known.contains(key)) throw ConfigError(prefix + key, "unknown field");
}

TopicSpec topic_from_json(const json& t, const std::string& at) {
  if (!t.is_object()) throw ConfigError(at, "expected an object");
  reject_unknown(t, kTopicKeys, at + ".");
  for (const char* key : {"label", "alpha", "beta", "gamma", "item_count"})
    if (!t.contains(key)) throw ConfigError(at + "." + key, "missing");
  if (!t["label"].is_string()) throw ConfigError(at + ".label", "expected a string");
  const auto label = parse_topic(t["label"].get<std::string>());
  if (!label) throw ConfigError(at + ".label", "unknown topic '" + t["label"].get<std::string>() + "'");
  return {*label, get_number(t["alpha"], at + ".alpha"), get_number(t["beta"], at + ".beta"),
          get_number(t["gamma"], at + ".gamma"), get_integer(t["item_count"], at + ".item_count")};
}

}  // namespace

bool SimulationConfig::runs(int simulation) const {
  return std::find(which_simulations.begin(), which_simulations.end(), simulation) != which_simulations.end();
}

void validate(const SimulationConfig& c) {
  if (c.num_users < 1) throw ConfigError("num_users", "must be positive");
  if (c.num_items < 1) throw ConfigError("num_items", "must be positive");
  if (c.topics.size() != kTopicCount) throw ConfigError("topics", "expected exactly 5 topics");
  Index total = 0;
  for (std::size_t q = 0; q < c.topics.size(); ++q) {
    const TopicSpec& t = c.topics[q];
    const std::string at = "topics[" + std::to_string(q) + "]";
    if (t.label != kAllTopics[q])
      throw ConfigError(at + ".label", "expected " + std::string(to_string(kAllTopics[q])) + " at this position");
    if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) throw ConfigError(at + ".alpha", "must be positive");
    if (!(t.beta > 0.0) || !std::isfinite(t.beta)) throw ConfigError(at + ".beta", "must be positive");
    if (!(t.gamma > 0.0) || !std::isfinite(t.gamma)) throw ConfigError(at + ".gamma", "must be positive");
    if (t.item_count < 1) throw ConfigError(at + ".item_count", "must be positive");
    total += t.item_count;
  }
  if (total != c.num_items)
    throw ConfigError("topics", "item counts sum to " + std::to_string(total) + " but num_items is " +
                                    std::to_string(c.num_items));
  if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) throw ConfigError("lambda", "must be positive");
  if (c.slate_size < 1) throw ConfigError("slate_size", "must be positive");
  if (c.neighbors < 1) throw ConfigError("neighbors", "must be positive");
  if (c.neighbors >= c.num_users) throw ConfigError("neighbors", "must be smaller than num_users");
  if (c.steps < 1) throw ConfigError("steps", "must be positive");
  if (c.trials < 1) throw ConfigError("trials", "must be positive");
  if (c.which_simulations.empty()) throw ConfigError("which_simulations", "must name at least one simulation");
  for (std::size_t k = 0; k < c.which_simulations.size(); ++k) {
    const int s = c.which_simulations[k];
    if (s != 1 && s != 2) throw ConfigError("which_simulations[" + std::to_string(k) + "]", "must be 1 or 2");
  }
}

SimulationConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "expected a JSON object");
  reject_unknown(doc, kKeys, "");
  SimulationConfig c;
  if (doc.contains("num_users")) c.num_users = get_integer(doc["num_users"], "num_users");
  if (doc.contains("num_items")) c.num_items = get_integer(doc["num_items"], "num_items");
  if (doc.contains("topics")) {
    const json& topics = doc["topics"];
    if (!topics.is_array()) throw ConfigError("topics", "expected an array");
    c.topics.clear();
    for (std::size_t q = 0; q < topics.size(); ++q)
      c.topics.push_back(topic_from_json(topics[q], "topics[" + std::to_string(q) + "]"));
  }
  if (doc.contains("lambda")) c.lambda = get_number(doc["lambda"], "lambda");
  if (doc.contains("slate_size")) c.slate_size = get_integer(doc["slate_size"], "slate_size");
  if (doc.contains("neighbors")) c.neighbors = get_integer(doc["neighbors"], "neighbors");
  if (doc.contains("steps")) c.steps = static_cast<int>(get_integer(doc["steps"], "steps"));
  if (doc.contains("trials")) c.trials = static_cast<int>(get_integer(doc["trials"], "trials"));
  if (doc.contains("master_seed")) {
    const json& s = doc["master_seed"];
    if (!s.is_number_unsigned()) throw ConfigError("master_seed", "expected a non-negative integer");
    c.master_seed = s.get<std::uint64_t>();
  }
  if (doc.contains("which_simulations")) {
    const json& w = doc["which_simulations"];
    if (!w.is_array()) throw ConfigError("which_simulations", "expected an array");
    c.which_simulations.clear();
    for (std::size_t k = 0; k < w.size(); ++k)
      c.which_simulations.push_back(
          static_cast<int>(get_integer(w[k], "which_simulations[" + std::to_string(k) + "]")));
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir", "expected a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("dump_consumption")) {
    if (!doc["dump_consumption"].is_boolean()) throw ConfigError("dump_consumption", "expected a boolean");
    c.dump_consumption = doc["dump_consumption"].get<bool>();
  }
  if (doc.contains("threads")) {
    const auto t = get_integer(doc["threads"], "threads");
    if (t < 0) throw ConfigError("threads", "must be >= 0");
    c.threads = static_cast<unsigned>(t);
  }
  validate(c);
  return c;
}

json config_to_json(const SimulationConfig& c) {
  json topics = json::array();
  for (const TopicSpec& t : c.topics)
    topics.push_back({{"label", std::string(to_string(t.label))},
                      {"alpha", t.alpha},
                      {"beta", t.beta},
                      {"gamma", t.gamma},
                      {"item_count", t.item_count}});
  return {{"num_users", c.num_users},
          {"num_items", c.num_items},
          {"topics", topics},
          {"lambda", c.lambda},
          {"slate_size", c.slate_size},
          {"neighbors", c.neighbors},
          {"steps", c.steps},
          {"trials", c.trials},
          {"master_seed", c.master_seed},
          {"which_simulations", c.which_simulations},
          {"output_dir", c.output_dir.string()},
          {"dump_consumption", c.dump_consumption},
          {"threads", c.threads}};
}

SimulationConfig load_config(const std::optional<std::filesystem::path>& path) {
  if (!path) {
    SimulationConfig c;
    validate(c);
    return c;
  }
  std::ifstream in(*path);
  if (!in) throw ConfigError("$", "cannot open config file " + path->string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

std::uint64_t parse_seed(const std::string& text, const std::string& field) {
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError(field, "expected a non-negative integer seed, got '" + text + "'");
  return seed;
}

}  // namespace ampsim
