#include "aoi/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aoi/errors.hpp"

namespace aoi {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ValidationError({what}); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) schema_error(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) schema_error(where + ": unknown key \"" + key + "\"");
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + ": missing field \"" + key + "\"");
  return *it;
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) schema_error(where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where + ": expected a number");
  return v.get<double>();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
}

AgeAssignment parse_assignment(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "id") return AgeAssignment::identity();
    if (s == "fresh") return AgeAssignment::fresh();
    schema_error(where + ": unknown reset entry \"" + s + "\"");
  }
  if (v.is_object()) {
    reject_unknown_keys(v, {"copy"}, where);
    const auto i = as_index(field(v, "copy", where), where + ".copy");
    if (i < 1) schema_error(where + ".copy: components are numbered from 1");
    return AgeAssignment::copy(i - 1);
  }
  schema_error(where + ": reset entry must be \"id\", \"fresh\" or {\"copy\": i}");
}

ShsModel model_from_json(const json& doc) {
  reject_unknown_keys(doc, {"num_states", "age_dim", "transitions"}, "model");
  const auto nq = as_index(field(doc, "num_states", "model"), "num_states");
  const auto n = as_index(field(doc, "age_dim", "model"), "age_dim");
  const auto& arr = field(doc, "transitions", "model");
  if (!arr.is_array()) schema_error("transitions: expected an array");

  std::vector<Transition> ts;
  for (std::size_t l = 0; l < arr.size(); ++l) {
    const auto where = "transition " + std::to_string(l);
    const auto& t = arr[l];
    reject_unknown_keys(t, {"from", "to", "rate", "reset"}, where);
    Transition tr;
    tr.from = as_index(field(t, "from", where), where + ".from");
    tr.to = as_index(field(t, "to", where), where + ".to");
    tr.rate = as_number(field(t, "rate", where), where + ".rate");
    const auto& reset = field(t, "reset", where);
    if (!reset.is_array()) schema_error(where + ".reset: expected an array");
    for (std::size_t j = 0; j < reset.size(); ++j) {
      tr.reset.push_back(parse_assignment(reset[j], where + ".reset[" + std::to_string(j) + "]"));
    }
    ts.push_back(std::move(tr));
  }
  ShsModel model(nq, n, std::move(ts));
  require_valid(model);
  return model;
}

SamplingNetwork network_from_json(const json& doc) {
  reject_unknown_keys(doc, {"hops"}, "network");
  const auto& arr = field(doc, "hops", "network");
  if (!arr.is_array()) schema_error("hops: expected an array");
  SamplingNetwork net;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto where = "hop " + std::to_string(i);
    const auto& h = arr[i];
    if (!h.is_object()) schema_error(where + ": expected an object");
    const auto& fam = field(h, "family", where);
    if (!fam.is_string()) schema_error(where + ".family: expected a string");
    const auto f = fam.get<std::string>();
    if (f == "exponential") {
      reject_unknown_keys(h, {"family", "rate"}, where);
      net.hops.push_back(RenewalSpec::exponential(as_number(field(h, "rate", where), where + ".rate")));
    } else if (f == "uniform") {
      reject_unknown_keys(h, {"family", "b"}, where);
      net.hops.push_back(RenewalSpec::uniform(as_number(field(h, "b", where), where + ".b")));
    } else if (f == "gamma") {
      reject_unknown_keys(h, {"family", "shape", "scale"}, where);
      net.hops.push_back(RenewalSpec::gamma(as_number(field(h, "shape", where), where + ".shape"),
                                            as_number(field(h, "scale", where), where + ".scale")));
    } else if (f == "deterministic") {
      schema_error(where + ": deterministic inter-update times are not supported; the sampling result "
                           "requires iid continuous random variables");
    } else {
      schema_error(where + ": unknown family \"" + f + "\"");
    }
  }
  require_valid(net);
  return net;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

LoadedDocument parse_document(const std::string& text) {
  const auto doc = parse_json(text);
  if (doc.is_object() && doc.contains("hops")) return network_from_json(doc);
  return model_from_json(doc);
}

ShsModel parse_model(const std::string& text) { return model_from_json(parse_json(text)); }

SamplingNetwork parse_network(const std::string& text) { return network_from_json(parse_json(text)); }

LoadedDocument load_document(const std::filesystem::path& path) { return parse_document(read_file(path)); }

ShsModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

SamplingNetwork load_network(const std::filesystem::path& path) { return parse_network(read_file(path)); }

std::string to_json(const ShsModel& model) {
  json doc;
  doc["num_states"] = model.num_states();
  doc["age_dim"] = model.age_dim();
  doc["transitions"] = json::array();
  for (const auto& t : model.transitions()) {
    json reset = json::array();
    for (const auto& e : t.reset) {
      switch (e.kind) {
        case AgeAssignment::Kind::Identity: reset.push_back("id"); break;
        case AgeAssignment::Kind::Fresh: reset.push_back("fresh"); break;
        case AgeAssignment::Kind::Copy: reset.push_back(json{{"copy", e.source + 1}}); break;
      }
    }
    doc["transitions"].push_back(json{{"from", t.from}, {"to", t.to}, {"rate", t.rate}, {"reset", reset}});
  }
  return doc.dump(2) + "\n";
}

std::string to_json(const SamplingNetwork& network) {
  json doc;
  doc["hops"] = json::array();
  for (const auto& h : network.hops) {
    switch (h.family()) {
      case RenewalSpec::Family::Exponential:
        doc["hops"].push_back(json{{"family", "exponential"}, {"rate", h.rate()}});
        break;
      case RenewalSpec::Family::Uniform:
        doc["hops"].push_back(json{{"family", "uniform"}, {"b", h.bound()}});
        break;
      case RenewalSpec::Family::Gamma:
        doc["hops"].push_back(json{{"family", "gamma"}, {"shape", h.shape()}, {"scale", h.scale()}});
        break;
    }
  }
  return doc.dump(2) + "\n";
}

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace aoi
